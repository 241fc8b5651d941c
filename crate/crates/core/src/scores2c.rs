//! The classical two-class classification scores, with their domains, their
//! known ranking-score equivalences, and the machinery to verify those
//! equivalences numerically on a performance grid.
//!
//! All formulas are written over the four outcome probabilities
//! `(p_tn, p_fp, p_fn, p_tp)`. Marginals used throughout:
//! negative prior `p_tn + p_fp`, positive prior `p_fn + p_tp`,
//! negative prediction rate `p_tn + p_fn`, positive prediction rate
//! `p_fp + p_tp`.

use std::sync::OnceLock;

use crate::audit::{ConstraintSet, PerformanceGrid};
use crate::error::{Error, Result};
use crate::performance::Performance;
use crate::probit::probit;
use crate::score::Score;
use crate::space::{RandomVariable, SampleSpace, SpaceRef};

/// Outcome indices in the canonical (tn, fp, fn, tp) order.
pub const TN: usize = 0;
pub const FP: usize = 1;
pub const FN: usize = 2;
pub const TP: usize = 3;

/// The canonical four-outcome space, shared so that performances built by
/// different callers compare cheaply.
pub fn two_class_space() -> SpaceRef {
    static SPACE: OnceLock<SpaceRef> = OnceLock::new();
    SpaceRef::clone(SPACE.get_or_init(|| SampleSpace::new(["tn", "fp", "fn", "tp"]).unwrap()))
}

/// The two-class classification setting: the (tn, fp, fn, tp) space with the
/// natural satisfaction that rewards correct results.
#[derive(Debug, Clone)]
pub struct TwoClass {
    space: SpaceRef,
    satisfaction: RandomVariable,
}

impl Default for TwoClass {
    fn default() -> Self {
        Self::new()
    }
}

impl TwoClass {
    pub fn new() -> Self {
        let space = two_class_space();
        let satisfaction =
            RandomVariable::named(&space, "S", vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        TwoClass {
            space,
            satisfaction,
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn satisfaction(&self) -> &RandomVariable {
        &self.satisfaction
    }

    /// Indicator of the positive ground-truth class (0 on tn/fp, 1 on fn/tp).
    pub fn ground_truth_positive(&self) -> RandomVariable {
        RandomVariable::named(&self.space, "Y", vec![0.0, 0.0, 1.0, 1.0]).unwrap()
    }

    /// Indicator of the positive predicted class (0 on tn/fn, 1 on fp/tp).
    pub fn predicted_positive(&self) -> RandomVariable {
        RandomVariable::named(&self.space, "Yhat", vec![0.0, 1.0, 0.0, 1.0]).unwrap()
    }

    pub fn positive_prior(&self, p: &Performance) -> f64 {
        p.prob_at(FN) + p.prob_at(TP)
    }

    pub fn negative_prior(&self, p: &Performance) -> f64 {
        p.prob_at(TN) + p.prob_at(FP)
    }

    pub fn positive_prediction_rate(&self, p: &Performance) -> f64 {
        p.prob_at(FP) + p.prob_at(TP)
    }
}

/// Whether a score's ranking-score equivalence holds on every performance
/// set, only on fixed-prior slices, or not at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintValidity {
    Always,
    FixedPriorsOnly,
    Never,
}

/// Direction of the monotone link between a score and its reference ranking
/// score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// One catalog score plus everything known about its ranking behavior.
#[derive(Clone)]
pub struct CatalogEntry {
    name: &'static str,
    label: &'static str,
    score: Score,
    validity: ConstraintValidity,
    monotonicity: Option<Monotonicity>,
    importance_fn: Option<fn(f64) -> [f64; 4]>,
    transform_fn: Option<fn(f64, f64) -> f64>,
}

impl CatalogEntry {
    /// Stable lowercase identifier used by the CLI and reports.
    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Human-readable name.
    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn score(&self) -> &Score {
        &self.score
    }

    pub fn constraint_validity(&self) -> ConstraintValidity {
        self.validity
    }

    pub fn monotonicity(&self) -> Option<Monotonicity> {
        self.monotonicity
    }

    /// Whether the declared equivalence holds on the given constraint set.
    pub fn equivalence_applies(&self, constraint: ConstraintSet) -> bool {
        match self.validity {
            ConstraintValidity::Always => self.importance_fn.is_some(),
            ConstraintValidity::FixedPriorsOnly => {
                self.importance_fn.is_some()
                    && matches!(constraint, ConstraintSet::FixedPositivePrior(_))
            }
            ConstraintValidity::Never => false,
        }
    }

    /// The importance whose ranking score this entry is equivalent to.
    ///
    /// Fixed-prior equivalences need the positive prior; always-valid ones
    /// ignore it.
    pub fn expected_importance(&self, positive_prior: Option<f64>) -> Option<RandomVariable> {
        let f = self.importance_fn?;
        let prior = match self.validity {
            ConstraintValidity::Always => positive_prior.unwrap_or(0.5),
            ConstraintValidity::FixedPriorsOnly => positive_prior?,
            ConstraintValidity::Never => return None,
        };
        let values = f(prior);
        let space = two_class_space();
        RandomVariable::new(&space, values.to_vec()).ok()
    }

    /// The reference ranking score `R_I` for this entry, when one exists.
    pub fn reference_ranking_score(&self, positive_prior: Option<f64>) -> Option<Score> {
        let importance = self.expected_importance(positive_prior)?;
        let two_class = TwoClass::new();
        Score::ranking(&importance, two_class.satisfaction()).ok()
    }

    /// The closed form mapping `R_I` to this score at the given prior.
    pub fn transform(&self, r: f64, positive_prior: f64) -> Option<f64> {
        self.transform_fn.map(|f| f(r, positive_prior))
    }
}

fn priors(p: &[f64]) -> (f64, f64, f64, f64) {
    let neg_prior = p[TN] + p[FP];
    let pos_prior = p[FN] + p[TP];
    let neg_rate = p[TN] + p[FN];
    let pos_rate = p[FP] + p[TP];
    (neg_prior, pos_prior, neg_rate, pos_rate)
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    if den == 0.0 {
        None
    } else {
        Some(num / den)
    }
}

fn f_beta(p: &[f64], beta: f64) -> Option<f64> {
    let b2 = beta * beta;
    ratio((1.0 + b2) * p[TP], (1.0 + b2) * p[TP] + p[FP] + b2 * p[FN])
}

fn chance_agreement(p: &[f64]) -> f64 {
    let (neg_prior, pos_prior, neg_rate, pos_rate) = priors(p);
    neg_prior * neg_rate + pos_prior * pos_rate
}

/// All scores of the review catalog, in report order.
pub fn catalog() -> Vec<CatalogEntry> {
    use ConstraintValidity::*;
    use Monotonicity::*;

    let space = two_class_space();
    let make = |name: &'static str, f: fn(&[f64]) -> Option<f64>| {
        Score::from_fn(name, &space, f)
    };

    let entry = |name: &'static str,
                 label: &'static str,
                 f: fn(&[f64]) -> Option<f64>,
                 validity: ConstraintValidity,
                 monotonicity: Option<Monotonicity>,
                 importance_fn: Option<fn(f64) -> [f64; 4]>,
                 transform_fn: Option<fn(f64, f64) -> f64>| {
        CatalogEntry {
            name,
            label,
            score: make(name, f),
            validity,
            monotonicity,
            importance_fn,
            transform_fn,
        }
    };

    vec![
        entry(
            "accuracy",
            "Accuracy",
            |p| Some(p[TN] + p[TP]),
            Always,
            Some(Increasing),
            Some(|_| [0.5, 0.5, 0.5, 0.5]),
            Some(|r, _| r),
        ),
        entry(
            "f0.5",
            "F-score (beta = 0.5)",
            |p| f_beta(p, 0.5),
            Always,
            Some(Increasing),
            Some(|_| [0.0, 0.8, 0.2, 1.0]),
            Some(|r, _| r),
        ),
        entry(
            "f1",
            "F-score (beta = 1)",
            |p| f_beta(p, 1.0),
            Always,
            Some(Increasing),
            Some(|_| [0.0, 0.5, 0.5, 1.0]),
            Some(|r, _| r),
        ),
        entry(
            "f2",
            "F-score (beta = 2)",
            |p| f_beta(p, 2.0),
            Always,
            Some(Increasing),
            Some(|_| [0.0, 0.2, 0.8, 1.0]),
            Some(|r, _| r),
        ),
        entry(
            "npv",
            "Negative Predictive Value",
            |p| ratio(p[TN], p[TN] + p[FN]),
            Always,
            Some(Increasing),
            Some(|_| [1.0, 0.0, 1.0, 0.0]),
            Some(|r, _| r),
        ),
        entry(
            "ppv",
            "Positive Predictive Value",
            |p| ratio(p[TP], p[FP] + p[TP]),
            Always,
            Some(Increasing),
            Some(|_| [0.0, 1.0, 0.0, 1.0]),
            Some(|r, _| r),
        ),
        entry(
            "tnr",
            "True Negative Rate",
            |p| ratio(p[TN], p[TN] + p[FP]),
            Always,
            Some(Increasing),
            Some(|_| [1.0, 1.0, 0.0, 0.0]),
            Some(|r, _| r),
        ),
        entry(
            "tpr",
            "True Positive Rate",
            |p| ratio(p[TP], p[FN] + p[TP]),
            Always,
            Some(Increasing),
            Some(|_| [0.0, 0.0, 1.0, 1.0]),
            Some(|r, _| r),
        ),
        entry(
            "balanced_accuracy",
            "Balanced Accuracy",
            |p| {
                let tnr = ratio(p[TN], p[TN] + p[FP])?;
                let tpr = ratio(p[TP], p[FN] + p[TP])?;
                Some(0.5 * (tnr + tpr))
            },
            FixedPriorsOnly,
            Some(Increasing),
            Some(|pos| [pos, pos, 1.0 - pos, 1.0 - pos]),
            Some(|r, _| r),
        ),
        entry(
            "cohen_kappa",
            "Cohen's kappa",
            |p| {
                let observed = p[TN] + p[TP];
                let chance = chance_agreement(p);
                ratio(observed - chance, 1.0 - chance)
            },
            FixedPriorsOnly,
            Some(Increasing),
            Some(|pos| {
                let neg = 1.0 - pos;
                let z = neg * neg + pos * pos;
                [pos * pos / z, 0.5, 0.5, neg * neg / z]
            }),
            Some(|r, pos| {
                let neg = 1.0 - pos;
                (r - 2.0 * neg * pos) / (neg * neg + pos * pos)
            }),
        ),
        entry(
            "informedness",
            "Informedness",
            |p| {
                let tnr = ratio(p[TN], p[TN] + p[FP])?;
                let tpr = ratio(p[TP], p[FN] + p[TP])?;
                Some(tpr + tnr - 1.0)
            },
            FixedPriorsOnly,
            Some(Increasing),
            Some(|pos| [pos, pos, 1.0 - pos, 1.0 - pos]),
            Some(|r, _| 2.0 * r - 1.0),
        ),
        entry(
            "plr",
            "Positive Likelihood Ratio",
            |p| {
                let tpr = ratio(p[TP], p[FN] + p[TP])?;
                let fpr = ratio(p[FP], p[TN] + p[FP])?;
                ratio(tpr, fpr)
            },
            FixedPriorsOnly,
            Some(Increasing),
            Some(|_| [0.0, 1.0, 0.0, 1.0]),
            // The prediction-rate ranking score gives p_tp/(p_fp + p_tp);
            // converting to the rate ratio brings in the prior odds.
            Some(|r, pos| (1.0 - pos) / pos * r / (1.0 - r)),
        ),
        entry(
            "ptn",
            "Probability of True Negative",
            |p| Some(p[TN]),
            FixedPriorsOnly,
            Some(Increasing),
            Some(|_| [1.0, 1.0, 0.0, 0.0]),
            Some(|r, pos| (1.0 - pos) * r),
        ),
        entry(
            "ptp",
            "Probability of True Positive",
            |p| Some(p[TP]),
            FixedPriorsOnly,
            Some(Increasing),
            Some(|_| [0.0, 0.0, 1.0, 1.0]),
            Some(|r, pos| pos * r),
        ),
        entry(
            "kappa_chance",
            "Chance agreement in Cohen's kappa",
            |p| Some(chance_agreement(p)),
            Never,
            None,
            None,
            None,
        ),
        entry(
            "error_rate",
            "Error Rate",
            |p| Some(p[FP] + p[FN]),
            Always,
            Some(Decreasing),
            Some(|_| [0.5, 0.5, 0.5, 0.5]),
            Some(|r, _| 1.0 - r),
        ),
        entry(
            "fdr",
            "False Discovery Rate",
            |p| ratio(p[FP], p[FP] + p[TP]),
            Always,
            Some(Decreasing),
            Some(|_| [0.0, 1.0, 0.0, 1.0]),
            Some(|r, _| 1.0 - r),
        ),
        entry(
            "fnr",
            "False Negative Rate",
            |p| ratio(p[FN], p[FN] + p[TP]),
            Always,
            Some(Decreasing),
            Some(|_| [0.0, 0.0, 1.0, 1.0]),
            Some(|r, _| 1.0 - r),
        ),
        entry(
            "for",
            "False Omission Rate",
            |p| ratio(p[FN], p[TN] + p[FN]),
            Always,
            Some(Decreasing),
            Some(|_| [1.0, 0.0, 1.0, 0.0]),
            Some(|r, _| 1.0 - r),
        ),
        entry(
            "fpr",
            "False Positive Rate",
            |p| ratio(p[FP], p[TN] + p[FP]),
            Always,
            Some(Decreasing),
            Some(|_| [1.0, 1.0, 0.0, 0.0]),
            Some(|r, _| 1.0 - r),
        ),
        entry(
            "gmean_tnr_tpr",
            "Geometric mean of TNR and TPR",
            |p| {
                let tnr = ratio(p[TN], p[TN] + p[FP])?;
                let tpr = ratio(p[TP], p[FN] + p[TP])?;
                Some((tnr * tpr).sqrt())
            },
            Never,
            None,
            None,
            None,
        ),
        entry(
            "markedness",
            "Markedness",
            |p| {
                let ppv = ratio(p[TP], p[FP] + p[TP])?;
                let npv = ratio(p[TN], p[TN] + p[FN])?;
                Some(ppv + npv - 1.0)
            },
            Never,
            None,
            None,
            None,
        ),
        entry(
            "mcc",
            "Matthews Correlation Coefficient",
            |p| {
                let (neg_prior, pos_prior, neg_rate, pos_rate) = priors(p);
                let denominator = (pos_prior * neg_prior * pos_rate * neg_rate).sqrt();
                ratio(p[TP] * p[TN] - p[FP] * p[FN], denominator)
            },
            Never,
            None,
            None,
            None,
        ),
        entry(
            "nlr",
            "Negative Likelihood Ratio",
            |p| {
                let fnr = ratio(p[FN], p[FN] + p[TP])?;
                let tnr = ratio(p[TN], p[TN] + p[FP])?;
                ratio(fnr, tnr)
            },
            FixedPriorsOnly,
            Some(Decreasing),
            Some(|_| [1.0, 0.0, 1.0, 0.0]),
            // Decreasing transform of the negative-prediction ranking score,
            // scaled by the prior odds.
            Some(|r, pos| (1.0 - pos) / pos * (1.0 - r) / r),
        ),
        entry(
            "odds_ratio",
            "Odds Ratio",
            |p| {
                if p[FP] == 0.0 || p[FN] == 0.0 {
                    None
                } else {
                    Some(p[TP] * p[TN] / (p[FP] * p[FN]))
                }
            },
            Never,
            None,
            None,
            None,
        ),
        entry(
            "rate_positive_predictions",
            "Rate of positive predictions",
            |p| Some(p[FP] + p[TP]),
            Never,
            None,
            None,
            None,
        ),
        entry(
            "d_prime",
            "Sensitivity Index Estimate (d')",
            |p| {
                let tpr = ratio(p[TP], p[FN] + p[TP])?;
                let fpr = ratio(p[FP], p[TN] + p[FP])?;
                Some(probit(tpr)? - probit(fpr)?)
            },
            Never,
            None,
            None,
            None,
        ),
    ]
}

/// Looks up a catalog entry by its stable name.
pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// The stable identifiers of every catalog score, in report order.
pub fn score_names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}

/// Evaluates a catalog score by name. `Ok(None)` marks out-of-domain.
pub fn eval_score(name: &str, p: &Performance) -> Result<Option<f64>> {
    let entry = find_entry(name).ok_or_else(|| Error::UnknownScore(name.to_string()))?;
    entry.score().eval(p)
}

/// Result of checking one score against its ranking-score closed form.
#[derive(Debug, Clone)]
pub struct EquivalenceCheck {
    pub name: &'static str,
    pub monotonicity: Monotonicity,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub points_checked: usize,
    pub passed: bool,
}

/// One check per catalog entry whose equivalence applies to the grid.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub checks: Vec<EquivalenceCheck>,
}

impl EquivalenceReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&EquivalenceCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Verifies, on every shared-domain grid point, that each applicable score
/// equals its declared closed form of the reference ranking score.
///
/// Identities that hold on all performances are checked to 1e-12; the
/// fixed-prior closed forms use 1e-9 to absorb the extra arithmetic.
pub fn verify_importance_equivalences(grid: &PerformanceGrid) -> Result<EquivalenceReport> {
    if grid.space().len() != 4 {
        return Err(Error::UnsupportedConstraint);
    }
    let positive_prior = match grid.constraint() {
        ConstraintSet::FixedPositivePrior(p) => Some(p),
        ConstraintSet::Unconstrained => None,
    };
    let mut checks = Vec::new();
    for entry in catalog() {
        let applicable = match entry.constraint_validity() {
            ConstraintValidity::Always => entry.importance_fn.is_some(),
            ConstraintValidity::FixedPriorsOnly => positive_prior.is_some(),
            ConstraintValidity::Never => false,
        };
        if !applicable {
            continue;
        }
        let tolerance = match entry.constraint_validity() {
            ConstraintValidity::Always => 1e-12,
            _ => 1e-9,
        };
        let reference = entry
            .reference_ranking_score(positive_prior)
            .expect("applicable entries declare an importance");
        let prior = positive_prior.unwrap_or(0.5);
        let mut max_abs_deviation = 0.0f64;
        let mut points_checked = 0usize;
        for point in grid.points() {
            let (Some(value), Some(r)) = (
                entry.score().eval_probs(point.probs()),
                reference.eval_probs(point.probs()),
            ) else {
                continue;
            };
            let expected = entry
                .transform(r, prior)
                .expect("applicable entries declare a transform");
            max_abs_deviation = max_abs_deviation.max((value - expected).abs());
            points_checked += 1;
        }
        checks.push(EquivalenceCheck {
            name: entry.name(),
            monotonicity: entry.monotonicity().expect("applicable entries are monotone"),
            max_abs_deviation,
            tolerance,
            points_checked,
            passed: points_checked > 0 && max_abs_deviation <= tolerance,
        });
    }
    Ok(EquivalenceReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::make_grid;
    use crate::performance::EQ_TOLERANCE;

    fn perf(probs: [f64; 4]) -> Performance {
        Performance::new(&two_class_space(), probs.to_vec()).unwrap()
    }

    #[test]
    fn catalog_has_the_full_review() {
        let names = score_names();
        assert_eq!(names.len(), 27);
        for expected in [
            "accuracy",
            "f0.5",
            "f1",
            "f2",
            "npv",
            "ppv",
            "tnr",
            "tpr",
            "balanced_accuracy",
            "cohen_kappa",
            "informedness",
            "plr",
            "ptn",
            "ptp",
            "kappa_chance",
            "error_rate",
            "fdr",
            "fnr",
            "for",
            "fpr",
            "gmean_tnr_tpr",
            "markedness",
            "mcc",
            "nlr",
            "odds_ratio",
            "rate_positive_predictions",
            "d_prime",
        ] {
            assert!(names.contains(&expected), "missing {expected}");
        }
    }

    #[test]
    fn eval_score_examples() {
        // No correlation at the uniform confusion distribution.
        assert_eq!(
            eval_score("mcc", &perf([0.25; 4])).unwrap(),
            Some(0.0)
        );

        // Hand formula 2 tp / (2 tp + fp + fn).
        let value = eval_score("f1", &perf([0.1, 0.2, 0.3, 0.4]))
            .unwrap()
            .unwrap();
        assert!((value - 0.615_384_615_384_615_4).abs() <= EQ_TOLERANCE);

        // Positive prior zero: TPR undefined.
        assert_eq!(eval_score("tpr", &perf([0.5, 0.5, 0.0, 0.0])).unwrap(), None);

        assert_eq!(
            eval_score("nope", &perf([0.25; 4])).unwrap_err(),
            Error::UnknownScore("nope".into())
        );
    }

    #[test]
    fn expected_importances_match_the_closed_forms() {
        let accuracy = find_entry("accuracy").unwrap();
        assert_eq!(accuracy.constraint_validity(), ConstraintValidity::Always);
        assert_eq!(accuracy.monotonicity(), Some(Monotonicity::Increasing));
        assert_eq!(
            accuracy.expected_importance(None).unwrap().values(),
            &[0.5, 0.5, 0.5, 0.5]
        );

        let f2 = find_entry("f2").unwrap();
        assert_eq!(
            f2.expected_importance(None).unwrap().values(),
            &[0.0, 0.2, 0.8, 1.0]
        );

        let nlr = find_entry("nlr").unwrap();
        assert_eq!(nlr.monotonicity(), Some(Monotonicity::Decreasing));
        assert_eq!(
            nlr.constraint_validity(),
            ConstraintValidity::FixedPriorsOnly
        );
        assert_eq!(
            nlr.expected_importance(Some(0.2)).unwrap().values(),
            &[1.0, 0.0, 1.0, 0.0]
        );
        // Without a prior there is no fixed-prior equivalence to speak of.
        assert!(nlr.expected_importance(None).is_none());
    }

    #[test]
    fn domain_edges() {
        // kappa is undefined only at the two perfect corners.
        assert_eq!(
            eval_score("cohen_kappa", &perf([1.0, 0.0, 0.0, 0.0])).unwrap(),
            None
        );
        assert_eq!(
            eval_score("cohen_kappa", &perf([0.0, 0.0, 0.0, 1.0])).unwrap(),
            None
        );
        assert!(eval_score("cohen_kappa", &perf([0.5, 0.0, 0.0, 0.5]))
            .unwrap()
            .is_some());

        // d' needs interior rates.
        assert_eq!(
            eval_score("d_prime", &perf([0.5, 0.0, 0.0, 0.5])).unwrap(),
            None
        );
        let inside = eval_score("d_prime", &perf([0.4, 0.1, 0.1, 0.4]))
            .unwrap()
            .unwrap();
        assert!(inside.is_finite());

        assert_eq!(
            eval_score("odds_ratio", &perf([0.5, 0.0, 0.2, 0.3])).unwrap(),
            None
        );
        assert_eq!(
            eval_score("plr", &perf([0.8, 0.0, 0.1, 0.1])).unwrap(),
            None
        );
    }

    #[test]
    fn spot_values() {
        let p = perf([0.6, 0.2, 0.1, 0.1]);
        let get = |name: &str| eval_score(name, &p).unwrap().unwrap();
        assert!((get("accuracy") - 0.7).abs() <= EQ_TOLERANCE);
        assert!((get("error_rate") - 0.3).abs() <= EQ_TOLERANCE);
        assert!((get("tnr") - 0.75).abs() <= EQ_TOLERANCE);
        assert!((get("tpr") - 0.5).abs() <= EQ_TOLERANCE);
        assert!((get("npv") - 6.0 / 7.0).abs() <= EQ_TOLERANCE);
        assert!((get("ppv") - 1.0 / 3.0).abs() <= EQ_TOLERANCE);
        assert!((get("balanced_accuracy") - 0.625).abs() <= EQ_TOLERANCE);
        assert!((get("informedness") - 0.25).abs() <= EQ_TOLERANCE);
        assert!((get("plr") - 2.0).abs() <= EQ_TOLERANCE);
        assert!((get("nlr") - (0.5 / 0.75)).abs() <= EQ_TOLERANCE);
        assert!((get("odds_ratio") - 3.0).abs() <= EQ_TOLERANCE);
        assert!((get("rate_positive_predictions") - 0.3).abs() <= EQ_TOLERANCE);
        assert!((get("kappa_chance") - (0.8 * 0.7 + 0.2 * 0.3)).abs() <= EQ_TOLERANCE);
        // kappa by hand: po = 0.7, pe = 0.62.
        assert!((get("cohen_kappa") - (0.7 - 0.62) / 0.38).abs() <= EQ_TOLERANCE);
        assert!((get("gmean_tnr_tpr") - (0.75f64 * 0.5).sqrt()).abs() <= EQ_TOLERANCE);
        assert!(
            (get("markedness") - (1.0 / 3.0 + 6.0 / 7.0 - 1.0)).abs() <= EQ_TOLERANCE
        );
        assert!((get("fdr") - 2.0 / 3.0).abs() <= EQ_TOLERANCE);
        assert!((get("fnr") - 0.5).abs() <= EQ_TOLERANCE);
        assert!((get("for") - 1.0 / 7.0).abs() <= EQ_TOLERANCE);
        assert!((get("fpr") - 0.25).abs() <= EQ_TOLERANCE);
    }

    /// Rewriting a score's formula can suggest a completely different
    /// importance profile. The alpha-parameterized rewrite of the accuracy
    /// appears to weight every outcome, yet it is the same function, which is
    /// why importance cannot be read off a formula visually.
    #[test]
    fn rewritten_accuracy_is_still_the_accuracy() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let raw: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let alpha: f64 = rng.random_range(-10.0..10.0);
            let plain = p[TN] + p[TP];
            let rewritten = (1.0 - alpha) * p[TN] - alpha * p[FP] - alpha * p[FN]
                + (1.0 - alpha) * p[TP]
                + alpha;
            assert!((plain - rewritten).abs() <= 1e-9);

            // Same trick for the true positive rate.
            let beta: f64 = rng.random_range(-10.0..10.0);
            let tpr = p[TP] / (p[FN] + p[TP]);
            let numerator =
                -alpha * p[TN] - alpha * p[FP] - alpha * p[FN] + (1.0 - alpha) * p[TP] + alpha;
            let denominator =
                -beta * p[TN] - beta * p[FP] + (1.0 - beta) * p[FN] + (1.0 - beta) * p[TP] + beta;
            assert!((tpr - numerator / denominator).abs() <= 1e-9);
        }
    }

    #[test]
    fn equivalences_hold_on_small_grids() {
        let space = two_class_space();

        let unconstrained = make_grid(&space, ConstraintSet::Unconstrained, 8).unwrap();
        let report = verify_importance_equivalences(&unconstrained).unwrap();
        assert!(
            report.all_passed(),
            "{:?}",
            report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
        );
        // Only the always-valid identities are checked without a prior.
        assert!(report.get("balanced_accuracy").is_none());
        assert!(report.get("tnr").is_some());

        for prior in [0.2, 0.5] {
            let grid = make_grid(
                &space,
                ConstraintSet::FixedPositivePrior(prior),
                16,
            )
            .unwrap();
            let report = verify_importance_equivalences(&grid).unwrap();
            assert!(
                report.all_passed(),
                "prior {prior}: {:?}",
                report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
            );
            assert!(report.get("balanced_accuracy").is_some());
            assert!(report.get("cohen_kappa").is_some());
            assert!(report.get("nlr").is_some());
        }
    }

    #[test]
    fn two_class_accessors() {
        let setting = TwoClass::new();
        let p = perf([0.6, 0.2, 0.1, 0.1]);
        assert!((setting.positive_prior(&p) - 0.2).abs() <= EQ_TOLERANCE);
        assert!((setting.negative_prior(&p) - 0.8).abs() <= EQ_TOLERANCE);
        assert!((setting.positive_prediction_rate(&p) - 0.3).abs() <= EQ_TOLERANCE);
        assert_eq!(setting.satisfaction().values(), &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(setting.ground_truth_positive().values(), &[0.0, 0.0, 1.0, 1.0]);
        assert_eq!(setting.predicted_positive().values(), &[0.0, 1.0, 0.0, 1.0]);
    }
}
