//! Ready-made `(space, satisfaction)` setups for common evaluation problems,
//! each reduced to a finite random experiment so the ranking machinery
//! applies unchanged.
//!
//! Every adapter documents its caveats in `notes`. The default satisfactions
//! are two-valued, so the full audit runs on each setup out of the box.

use crate::audit::{test_convex_lower, AuditConfig, Counterexample, PerformanceGrid};
use crate::error::{Error, Result};
use crate::score::Score;
use crate::scores2c::{two_class_space, TwoClass};
use crate::space::{RandomVariable, SampleSpace, SpaceRef};

/// A problem mapped onto a sample space and a satisfaction variable.
#[derive(Debug, Clone)]
pub struct TaskSetup {
    pub name: String,
    pub space: SpaceRef,
    pub satisfaction: RandomVariable,
    pub notes: Vec<String>,
}

impl TaskSetup {
    /// The expected satisfaction: the uniform-importance ranking score, and
    /// the default axiom-compliant score for the task.
    pub fn expected_satisfaction_score(&self) -> Score {
        Score::expected_value(&self.satisfaction)
    }

    /// A ranking score on this task's space for a caller-chosen importance.
    pub fn ranking_score(&self, importance: &RandomVariable) -> Result<Score> {
        Score::ranking(importance, &self.satisfaction)
    }
}

/// Two-class crisp classification on the canonical (tn, fp, fn, tp) space.
pub fn two_class() -> TaskSetup {
    let setting = TwoClass::new();
    TaskSetup {
        name: "two-class classification".into(),
        space: SpaceRef::clone(setting.space()),
        satisfaction: setting.satisfaction().clone(),
        notes: vec![
            "Outcomes are (ground truth, prediction) pairs; the satisfaction rewards \
             the diagonal."
                .into(),
        ],
    }
}

/// Multi-class classification: outcomes are (ground truth, prediction)
/// pairs. The default satisfaction is the diagonal indicator, whose expected
/// value is the multi-class accuracy; passing a class-pair similarity grades
/// near-misses instead.
pub fn multi_class(
    classes: &[&str],
    similarity: Option<&dyn Fn(usize, usize) -> f64>,
) -> Result<TaskSetup> {
    if classes.is_empty() {
        return Err(Error::NoClasses);
    }
    if classes.len() < 2 {
        return Err(Error::InsufficientData {
            need: 2,
            got: classes.len(),
        });
    }
    let mut labels = Vec::with_capacity(classes.len() * classes.len());
    let mut values = Vec::with_capacity(labels.capacity());
    for (i, truth) in classes.iter().enumerate() {
        for (j, predicted) in classes.iter().enumerate() {
            labels.push(format!("({truth},{predicted})"));
            let value = match similarity {
                Some(sim) => sim(i, j),
                None => {
                    if i == j {
                        1.0
                    } else {
                        0.0
                    }
                }
            };
            values.push(value);
        }
    }
    let space = SampleSpace::new(labels)?;
    let satisfaction = RandomVariable::named(&space, "S", values)?;
    Ok(TaskSetup {
        name: format!("{}-class classification", classes.len()),
        space,
        satisfaction,
        notes: vec![
            "Micro- or macro-averaging two-class scores over the classes generally \
             breaks the satisfaction or convexity requirements; see the macro-averaged \
             F1 example on `macro_f1_score`. Prefer ranking scores defined directly on \
             this space."
                .into(),
        ],
    })
}

/// Per-class one-vs-rest F1 averaged over classes, on a space built by
/// [`multi_class`] with `k` classes and no similarity.
///
/// Macro-averaging two-class scores is a common habit that does not survive
/// the convexity requirement, even though each per-class F1 alone does. A
/// small grid already exposes a mixture scoring above both endpoints:
///
/// ```
/// use perfrank::audit::{make_grid, test_convex_upper, AuditConfig, ConstraintSet};
/// use perfrank::tasks::{macro_f1_score, multi_class};
///
/// let task = multi_class(&["a", "b", "c"], None).unwrap();
/// let macro_f1 = macro_f1_score(3).unwrap();
/// let grid = make_grid(&task.space, ConstraintSet::Unconstrained, 3).unwrap();
/// let config = AuditConfig::default();
/// let outcome = test_convex_upper(&macro_f1, &grid, &config.lambdas, &config);
/// assert!(!outcome.passed, "a mixture beat both of its endpoints");
/// assert!(outcome.counterexample.unwrap().replay(&macro_f1));
/// ```
pub fn macro_f1_score(class_count: usize) -> Result<Score> {
    if class_count < 2 {
        return Err(Error::InsufficientData {
            need: 2,
            got: class_count,
        });
    }
    let names: Vec<String> = (0..class_count).map(|i| format!("c{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let task = multi_class(&name_refs, None)?;
    let k = class_count;
    Ok(Score::from_fn(
        format!("macro-F1 over {k} classes"),
        &task.space,
        move |probs| {
            let mut total = 0.0;
            for class in 0..k {
                let mut true_positive = 0.0;
                let mut ground_truth = 0.0;
                let mut predicted = 0.0;
                for truth in 0..k {
                    for pred in 0..k {
                        let p = probs[truth * k + pred];
                        if truth == class && pred == class {
                            true_positive += p;
                        }
                        if truth == class {
                            ground_truth += p;
                        }
                        if pred == class {
                            predicted += p;
                        }
                    }
                }
                let denominator = ground_truth + predicted;
                if denominator == 0.0 {
                    return None;
                }
                total += 2.0 * true_positive / denominator;
            }
            Some(total / k as f64)
        },
    ))
}

/// Information retrieval with a restart-on-empty experiment: three outcomes
/// `(fp, fn, tp)` and satisfaction rewarding true positives.
pub fn information_retrieval() -> TaskSetup {
    let space = SampleSpace::new(["fp", "fn", "tp"]).unwrap();
    let satisfaction = RandomVariable::named(&space, "S", vec![0.0, 0.0, 1.0]).unwrap();
    TaskSetup {
        name: "information retrieval".into(),
        space,
        satisfaction,
        notes: vec![
            "The restart step means the evaluated system runs a random number of times, \
             so convex combinations are achievable but not constructively: any mixture \
             weight is reachable by some hybrid, yet the hybrid's selection probability \
             cannot be derived from the weight in general."
                .into(),
            "Adding a fourth outcome for the both-empty case instead of restarting \
             removes that subtlety; this adapter keeps the three-outcome experiment and \
             leaves the choice to the caller."
                .into(),
        ],
    }
}

/// The F-measure-style ranking score on the retrieval space: importance 1 on
/// fp and fn, 2 on tp.
pub fn information_retrieval_f1_score() -> Score {
    let task = information_retrieval();
    let importance = RandomVariable::new(&task.space, vec![1.0, 1.0, 2.0]).unwrap();
    Score::ranking(&importance, &task.satisfaction)
        .unwrap()
        .renamed("retrieval F1")
}

/// Detection with an explicit outcome for "nothing to detect, nothing
/// predicted": four outcomes `(none, fp, fn, tp)`, full satisfaction on
/// `none` and `tp`.
pub fn detection() -> TaskSetup {
    let space = SampleSpace::new(["none", "fp", "fn", "tp"]).unwrap();
    let satisfaction = RandomVariable::named(&space, "S", vec![1.0, 0.0, 0.0, 1.0]).unwrap();
    TaskSetup {
        name: "detection".into(),
        space,
        satisfaction,
        notes: vec![
            "Intersection-over-union and the F-measure are the ranking scores with \
             importances (0,1,1,1) and (0,1,1,2) on this experiment, so both are safe \
             for ranking detectors here."
                .into(),
        ],
    }
}

/// Intersection-over-union as a ranking score on the detection space.
pub fn detection_iou_score() -> Score {
    let task = detection();
    let importance = RandomVariable::new(&task.space, vec![0.0, 1.0, 1.0, 1.0]).unwrap();
    Score::ranking(&importance, &task.satisfaction)
        .unwrap()
        .renamed("IoU")
}

/// The detection F-measure as a ranking score on the detection space.
pub fn detection_f1_score() -> Score {
    let task = detection();
    let importance = RandomVariable::new(&task.space, vec![0.0, 1.0, 1.0, 2.0]).unwrap();
    Score::ranking(&importance, &task.satisfaction)
        .unwrap()
        .renamed("detection F1")
}

/// Pairwise clustering agreement: outcomes classify a random pair of
/// elements against the ground-truth and predicted clusterings, landing on
/// the same four-outcome space as two-class classification.
pub fn clustering() -> TaskSetup {
    let setting = TwoClass::new();
    TaskSetup {
        name: "clustering".into(),
        space: SpaceRef::clone(setting.space()),
        satisfaction: setting.satisfaction().clone(),
        notes: vec![
            "The Fowlkes-Mallows index (geometric mean of precision and recall) can \
             drop below both of the performances being mixed, so it is unsuitable for \
             ranking clustering methods; `fmi_counterexample` produces a witness."
                .into(),
        ],
    }
}

/// The Fowlkes-Mallows index: geometric mean of positive predictive value
/// and true positive rate on the clustering space.
pub fn fmi_score() -> Score {
    let space = two_class_space();
    Score::from_fn("fmi", &space, |p| {
        let predicted_positive = p[1] + p[3];
        let actual_positive = p[2] + p[3];
        if predicted_positive == 0.0 || actual_positive == 0.0 {
            return None;
        }
        Some((p[3] / predicted_positive * (p[3] / actual_positive)).sqrt())
    })
}

/// Searches the grid for a mixture whose Fowlkes-Mallows index falls
/// strictly below both endpoints.
///
/// Such witnesses exist on any reasonable grid; not finding one is reported
/// as an error so a silently weakened search cannot pass for a verdict.
pub fn fmi_counterexample(
    grid: &PerformanceGrid,
    lambdas: &[f64],
    config: &AuditConfig,
) -> Result<Counterexample> {
    let score = fmi_score();
    let outcome = test_convex_lower(&score, grid, lambdas, config);
    outcome.counterexample.ok_or(Error::NoViolationFound)
}

/// Ranking evaluation: a random pair of items is ordered concordantly or
/// discordantly with the reference; satisfaction is +1 / -1 so that the
/// expected satisfaction is the rank correlation itself.
pub fn ranking_task() -> TaskSetup {
    let space = SampleSpace::new(["concordant", "discordant"]).unwrap();
    let satisfaction = RandomVariable::named(&space, "S", vec![1.0, -1.0]).unwrap();
    TaskSetup {
        name: "ranking".into(),
        space,
        satisfaction,
        notes: vec![
            "With two outcomes and a two-valued satisfaction, every ranking score \
             induces the same ordering, so tuning the importance changes nothing here."
                .into(),
        ],
    }
}

/// Regression reduced to a finite experiment: the caller discretizes the
/// (ground truth, prediction) plane into named cells and supplies a
/// satisfaction value per cell, typically a decreasing function of the
/// error.
///
/// With satisfaction `-(y - yhat)^2` per cell, the expected satisfaction is
/// the negated mean squared error, so ranking by it minimizes the MSE; the
/// absolute-error variant gives the MAE ranking the same way:
///
/// ```
/// use perfrank::performance::Performance;
/// use perfrank::tasks::regression_discretized;
///
/// // A 3x3 discretization of (y, yhat) over the values {0, 1, 2}.
/// let mut cells = Vec::new();
/// let mut squared_error = Vec::new();
/// for y in 0..3 {
///     for yhat in 0..3 {
///         cells.push(format!("y{y}_p{yhat}"));
///         squared_error.push(-((y as f64 - yhat as f64).powi(2)));
///     }
/// }
/// let task = regression_discretized(cells, squared_error).unwrap();
/// let score = task.expected_satisfaction_score();
///
/// // A regressor that is right half the time and off by one otherwise.
/// let p = Performance::new(
///     &task.space,
///     vec![0.5, 0.25, 0.0, 0.0, 0.0, 0.25, 0.0, 0.0, 0.0],
/// )
/// .unwrap();
/// let mse = 0.5 * 0.0 + 0.5 * 1.0;
/// assert!((score.eval(&p).unwrap().unwrap() - (-mse)).abs() < 1e-12);
/// ```
pub fn regression_discretized(
    cell_labels: Vec<String>,
    satisfaction_values: Vec<f64>,
) -> Result<TaskSetup> {
    let space = SampleSpace::new(cell_labels)?;
    let satisfaction = RandomVariable::named(&space, "S", satisfaction_values)?;
    Ok(TaskSetup {
        name: "regression (discretized)".into(),
        space,
        satisfaction,
        notes: vec![
            "A continuous outcome plane is out of reach for the grid audit; this \
             adapter covers regression through a caller-chosen finite discretization. \
             Exact-match satisfaction is useless for real regressors (every \
             performance would sit among the worst): grade by a decreasing function \
             of the error instead."
                .into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{audit_score_on_grid, make_grid, ConstraintSet};
    use crate::ordering::compare;
    use crate::performance::{Performance, EQ_TOLERANCE};

    #[test]
    fn two_class_matches_the_review_setting() {
        let task = two_class();
        assert_eq!(task.space.labels(), ["tn", "fp", "fn", "tp"]);
        assert_eq!(task.satisfaction.values(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn multi_class_default_satisfaction_is_the_accuracy() {
        let task = multi_class(&["a", "b", "c"], None).unwrap();
        assert_eq!(task.space.len(), 9);
        let score = task.expected_satisfaction_score();
        // Probability mass: 0.5 on (a,a), 0.3 on (b,b), 0.2 on (c,a).
        let mut probs = vec![0.0; 9];
        probs[0] = 0.5;
        probs[4] = 0.3;
        probs[6] = 0.2;
        let p = Performance::new(&task.space, probs).unwrap();
        let accuracy = 0.5 + 0.3;
        assert!((score.eval(&p).unwrap().unwrap() - accuracy).abs() <= EQ_TOLERANCE);

        // Two generic classes reproduce the two-class structure.
        let pair = multi_class(&["neg", "pos"], None).unwrap();
        assert_eq!(pair.space.len(), 4);
        assert_eq!(pair.satisfaction.values(), &[1.0, 0.0, 0.0, 1.0]);

        assert_eq!(multi_class(&[], None).unwrap_err(), Error::NoClasses);
        assert!(multi_class(&["only"], None).is_err());
    }

    #[test]
    fn multi_class_similarity_grades_near_misses() {
        let sim = |i: usize, j: usize| 1.0 - (i as f64 - j as f64).abs() / 2.0;
        let task = multi_class(&["low", "mid", "high"], Some(&sim)).unwrap();
        let values = task.satisfaction.values();
        // Diagonal 1, adjacent 0.5, opposite corners 0.
        assert_eq!(values[0], 1.0);
        assert_eq!(values[1], 0.5);
        assert_eq!(values[2], 0.0);
        assert_eq!(values[3], 0.5);
        assert_eq!(values[6], 0.0);
        let distinct: std::collections::BTreeSet<u64> =
            values.iter().map(|v| v.to_bits()).collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn retrieval_f_measure_example() {
        let task = information_retrieval();
        assert_eq!(task.space.labels(), ["fp", "fn", "tp"]);
        let score = information_retrieval_f1_score();
        let third = 1.0 / 3.0;
        let p = Performance::new(&task.space, vec![third, third, third]).unwrap();
        // 2 tp / (fp + fn + 2 tp).
        assert!((score.eval(&p).unwrap().unwrap() - 0.5).abs() <= EQ_TOLERANCE);
    }

    #[test]
    fn detection_scores_match_their_formulas() {
        let task = detection();
        let iou = detection_iou_score();
        let p = Performance::new(&task.space, vec![0.4, 0.2, 0.1, 0.3]).unwrap();
        // tp / (fp + fn + tp).
        assert!((iou.eval(&p).unwrap().unwrap() - 0.5).abs() <= EQ_TOLERANCE);

        // Perfect detector on a mixed stream: IoU is 1.
        let p = Performance::new(&task.space, vec![0.4, 0.0, 0.0, 0.6]).unwrap();
        assert_eq!(iou.eval(&p).unwrap(), Some(1.0));

        let f1 = detection_f1_score();
        let p = Performance::new(&task.space, vec![0.4, 0.2, 0.1, 0.3]).unwrap();
        let expected = 2.0 * 0.3 / (0.2 + 0.1 + 2.0 * 0.3);
        assert!((f1.eval(&p).unwrap().unwrap() - expected).abs() <= EQ_TOLERANCE);
    }

    #[test]
    fn ranking_task_score_is_the_rank_correlation() {
        let task = ranking_task();
        let score = task.expected_satisfaction_score();
        let eval = |discordant: f64| {
            let p = Performance::new(&task.space, vec![1.0 - discordant, discordant]).unwrap();
            score.eval(&p).unwrap().unwrap()
        };
        assert_eq!(eval(0.0), 1.0);
        assert_eq!(eval(0.5), 0.0);
        assert!((eval(0.25) - 0.5).abs() <= EQ_TOLERANCE);
    }

    #[test]
    fn two_outcome_importances_all_induce_the_same_order() {
        let task = ranking_task();
        let mut state = crate::audit::SplitMix64::new(9);
        let mut sample = Vec::new();
        for _ in 0..25 {
            let q = state.next_f64();
            sample.push(Performance::new(&task.space, vec![q, 1.0 - q]).unwrap());
        }
        let importance_a = RandomVariable::new(&task.space, vec![0.9, 0.1]).unwrap();
        let importance_b = RandomVariable::new(&task.space, vec![0.05, 2.5]).unwrap();
        let score_a = Score::ranking(&importance_a, &task.satisfaction).unwrap();
        let score_b = Score::ranking(&importance_b, &task.satisfaction).unwrap();
        for p1 in &sample {
            for p2 in &sample {
                assert_eq!(
                    compare(&score_a, p1, p2).unwrap(),
                    compare(&score_b, p1, p2).unwrap()
                );
            }
        }
    }

    #[test]
    fn fmi_value_and_counterexample() {
        let score = fmi_score();
        let space = two_class_space();
        let uniform = Performance::new(&space, vec![0.25; 4]).unwrap();
        assert!((score.eval(&uniform).unwrap().unwrap() - 0.5).abs() <= EQ_TOLERANCE);

        let grid = make_grid(&space, ConstraintSet::Unconstrained, 8).unwrap();
        let config = AuditConfig::default();
        let witness = fmi_counterexample(&grid, &config.lambdas, &config).unwrap();
        assert!(witness.replay(&score));
        // The violation is strict with real margin, not a tolerance artifact.
        if let Counterexample::MixtureViolation {
            score1,
            score2,
            mixture_score,
            ..
        } = &witness
        {
            assert!(score1.min(*score2) - mixture_score > 1e-9);
        } else {
            panic!("expected a mixture witness");
        }
    }

    #[test]
    fn fmi_still_satisfies_the_satisfaction_axiom() {
        // It is a geometric mean of two ranking scores, so the face ordering
        // survives even though convexity does not.
        let task = clustering();
        let grid = make_grid(&task.space, ConstraintSet::Unconstrained, 8).unwrap();
        let outcome =
            crate::audit::test_satisfaction_axiom(&fmi_score(), &task.satisfaction, &grid)
                .unwrap();
        assert!(outcome.passed);
    }

    #[test]
    fn default_scores_pass_the_full_audit_on_every_adapter() {
        let adapters = [
            two_class(),
            multi_class(&["a", "b", "c"], None).unwrap(),
            information_retrieval(),
            detection(),
            clustering(),
            ranking_task(),
        ];
        let config = AuditConfig::default();
        for task in adapters {
            let resolution = if task.space.len() > 4 { 3 } else { 8 };
            let grid =
                make_grid(&task.space, ConstraintSet::Unconstrained, resolution).unwrap();
            let verdict = audit_score_on_grid(
                &task.expected_satisfaction_score(),
                &task.satisfaction,
                &grid,
                &config,
            )
            .unwrap();
            assert_eq!(
                verdict.as_booleans(),
                (true, true, true),
                "adapter {} failed the audit",
                task.name
            );
        }
    }
}
