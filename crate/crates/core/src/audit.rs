//! Performance grids over constraint sets and the three empirical axiom
//! tests: satisfaction compatibility, and the upper/lower bounds a score must
//! respect on convex combinations of performances it already covers.

use crate::error::{Error, Result};
use crate::performance::Performance;
use crate::score::Score;
use crate::space::{RandomVariable, SpaceRef};

/// Favorable slack applied to every test inequality, so rounding noise on
/// exactly-linear scores cannot produce spurious failures.
pub const TEST_TOLERANCE: f64 = 1e-12;

/// Which slice of the performance simplex a grid covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstraintSet {
    /// Every performance on the space.
    Unconstrained,
    /// Four-outcome performances whose positive prior is pinned.
    FixedPositivePrior(f64),
}

impl ConstraintSet {
    /// Grid resolution used when the caller does not pick one. The defaults
    /// put roughly 6,550 points in either kind of constraint set.
    pub fn default_resolution(&self) -> u32 {
        match self {
            ConstraintSet::Unconstrained => 32,
            ConstraintSet::FixedPositivePrior(_) => 80,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ConstraintSet::Unconstrained => "unconstrained".to_string(),
            ConstraintSet::FixedPositivePrior(p) => format!("prior={p}"),
        }
    }
}

/// Regularly spaced performances within a constraint set.
#[derive(Debug, Clone)]
pub struct PerformanceGrid {
    constraint: ConstraintSet,
    resolution: u32,
    space: SpaceRef,
    points: Vec<Performance>,
}

impl PerformanceGrid {
    pub fn constraint(&self) -> ConstraintSet {
        self.constraint
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn points(&self) -> &[Performance] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// CSV rendering: one header with `p_<label>` columns, one row per grid
    /// point, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self
            .space
            .labels()
            .iter()
            .map(|l| format!("p_{l}"))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for point in &self.points {
            let row: Vec<String> = point.probs().iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Builds the grid for a constraint set.
///
/// Unconstrained grids enumerate all probability vectors with entries `i/n`;
/// fixed-prior grids sweep the two conditional rates on a `(m+1) x (m+1)`
/// lattice. Both enumerations are in a fixed order, so grids are repeatable.
pub fn make_grid(
    space: &SpaceRef,
    constraint: ConstraintSet,
    resolution: u32,
) -> Result<PerformanceGrid> {
    if resolution < 1 {
        return Err(Error::InvalidResolution);
    }
    let points = match constraint {
        ConstraintSet::Unconstrained => {
            let n = resolution as usize;
            let mut points = Vec::new();
            let mut counts = vec![0usize; space.len()];
            compositions(n, space.len(), &mut counts, 0, &mut |counts| {
                let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
                points.push(normalized(space, probs));
            });
            points
        }
        ConstraintSet::FixedPositivePrior(positive) => {
            if space.len() != 4 {
                return Err(Error::UnsupportedConstraint);
            }
            if !(positive > 0.0 && positive < 1.0) {
                return Err(Error::InvalidPrior(positive));
            }
            let negative = 1.0 - positive;
            let m = resolution as usize;
            let mut points = Vec::with_capacity((m + 1) * (m + 1));
            for i in 0..=m {
                let tpr = i as f64 / m as f64;
                for j in 0..=m {
                    let fpr = j as f64 / m as f64;
                    let probs = vec![
                        negative * (1.0 - fpr),
                        negative * fpr,
                        positive * (1.0 - tpr),
                        positive * tpr,
                    ];
                    points.push(normalized(space, probs));
                }
            }
            points
        }
    };
    Ok(PerformanceGrid {
        constraint,
        resolution,
        space: SpaceRef::clone(space),
        points,
    })
}

fn normalized(space: &SpaceRef, mut probs: Vec<f64>) -> Performance {
    let sum: f64 = probs.iter().sum();
    if sum != 1.0 {
        for p in &mut probs {
            *p /= sum;
        }
    }
    Performance::from_normalized(space, probs)
}

/// Visits every way of writing `n` as an ordered sum of `k` non-negative
/// integers, in lexicographic order.
fn compositions(
    n: usize,
    k: usize,
    counts: &mut Vec<usize>,
    position: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if position == k - 1 {
        counts[position] = n;
        visit(counts);
        return;
    }
    for c in 0..=n {
        counts[position] = c;
        compositions(n - c, k, counts, position + 1, visit);
    }
}

/// A concrete witness that falsified one of the tests. Re-evaluating the
/// stored inputs reproduces the violated inequality.
#[derive(Debug, Clone, PartialEq)]
pub enum Counterexample {
    /// Satisfaction test: `score(p1) <= score(p2)` was required but fails.
    OrderViolation {
        p1: Vec<f64>,
        p2: Vec<f64>,
        score1: f64,
        score2: f64,
    },
    /// Convexity test: the mixture escapes the bracket of its endpoints.
    MixtureViolation {
        p1: Vec<f64>,
        p2: Vec<f64>,
        lambda: f64,
        mixture: Vec<f64>,
        score1: f64,
        score2: f64,
        mixture_score: f64,
        side: MixtureSide,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixtureSide {
    /// The mixture scored above both endpoints.
    AboveMax,
    /// The mixture scored below both endpoints.
    BelowMin,
}

impl Counterexample {
    /// Recomputes the witness against a score and confirms the violation.
    pub fn replay(&self, score: &Score) -> bool {
        match self {
            Counterexample::OrderViolation { p1, p2, .. } => {
                match (score.eval_probs(p1), score.eval_probs(p2)) {
                    (Some(a), Some(b)) => a > b + TEST_TOLERANCE,
                    _ => false,
                }
            }
            Counterexample::MixtureViolation {
                p1,
                p2,
                lambda,
                mixture,
                side,
                ..
            } => {
                let (Some(a), Some(b), Some(m)) = (
                    score.eval_probs(p1),
                    score.eval_probs(p2),
                    score.eval_probs(mixture),
                ) else {
                    return false;
                };
                let consistent: Vec<f64> = p1
                    .iter()
                    .zip(p2)
                    .map(|(x, y)| lambda * x + (1.0 - lambda) * y)
                    .collect();
                let matches_mix = consistent
                    .iter()
                    .zip(mixture)
                    .all(|(x, y)| (x - y).abs() <= 1e-15);
                matches_mix
                    && match side {
                        MixtureSide::AboveMax => m > a.max(b) + TEST_TOLERANCE,
                        MixtureSide::BelowMin => m < a.min(b) - TEST_TOLERANCE,
                    }
            }
        }
    }
}

/// Pass/fail of one test, with the first witness found on failure.
#[derive(Debug, Clone)]
pub struct TestOutcome {
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl TestOutcome {
    fn pass() -> Self {
        TestOutcome {
            passed: true,
            counterexample: None,
        }
    }

    fn fail(counterexample: Counterexample) -> Self {
        TestOutcome {
            passed: false,
            counterexample: Some(counterexample),
        }
    }
}

/// Results of the three tests for one score on one constraint set.
#[derive(Debug, Clone)]
pub struct TestVerdict {
    pub test1: TestOutcome,
    pub test2: TestOutcome,
    pub test3: TestOutcome,
}

impl TestVerdict {
    pub fn as_booleans(&self) -> (bool, bool, bool) {
        (self.test1.passed, self.test2.passed, self.test3.passed)
    }
}

/// Tuning knobs for the audit loops. The defaults match the report setup:
/// eleven mixing weights spanning interior and near-endpoint mixtures, and a
/// seeded 2,000-point subsample for large unconstrained grids (fixed-prior
/// grids are always scanned in full).
#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub lambdas: Vec<f64>,
    pub subsample: usize,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            lambdas: default_lambdas(),
            subsample: 2000,
            seed: 0,
        }
    }
}

pub fn default_lambdas() -> Vec<f64> {
    let mut lambdas: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    lambdas.push(0.01);
    lambdas.push(0.99);
    lambdas
}

/// Satisfaction-compatibility test.
///
/// With a two-valued satisfaction, a performance fully supported on the low
/// face can never rank strictly above one fully supported on the high face,
/// nor above any other performance at all (and dually for the high face).
/// Out-of-domain performances drop out as incomparable.
pub fn test_satisfaction_axiom(
    score: &Score,
    satisfaction: &RandomVariable,
    grid: &PerformanceGrid,
) -> Result<TestOutcome> {
    let (lo, hi) = satisfaction
        .two_levels()
        .ok_or(Error::NonBinarySatisfaction)?;
    let low_face = satisfaction.level_event(lo);
    let high_face = satisfaction.level_event(hi);

    let values: Vec<Option<f64>> = grid
        .points()
        .iter()
        .map(|p| score.eval_probs(p.probs()))
        .collect();

    let on_face = |p: &Performance, face: crate::space::Event| {
        p.probs()
            .iter()
            .enumerate()
            .all(|(i, &q)| q == 0.0 || face.contains(i))
    };

    // Highest-scoring low-face point and lowest-scoring point overall (and
    // the dual pair): the extremes decide all pairwise requirements at once.
    let mut max_low: Option<(usize, f64)> = None;
    let mut min_high: Option<(usize, f64)> = None;
    let mut max_all: Option<(usize, f64)> = None;
    let mut min_all: Option<(usize, f64)> = None;
    for (i, value) in values.iter().enumerate() {
        let Some(v) = *value else { continue };
        let p = &grid.points()[i];
        if max_all.is_none_or(|(_, best)| v > best) {
            max_all = Some((i, v));
        }
        if min_all.is_none_or(|(_, best)| v < best) {
            min_all = Some((i, v));
        }
        if on_face(p, low_face) && max_low.is_none_or(|(_, best)| v > best) {
            max_low = Some((i, v));
        }
        if on_face(p, high_face) && min_high.is_none_or(|(_, best)| v < best) {
            min_high = Some((i, v));
        }
    }

    let witness = |i: usize, j: usize| {
        Counterexample::OrderViolation {
            p1: grid.points()[i].probs().to_vec(),
            p2: grid.points()[j].probs().to_vec(),
            score1: values[i].unwrap(),
            score2: values[j].unwrap(),
        }
    };

    // Low-face points must not beat anything in the domain.
    if let (Some((i, low)), Some((j, least))) = (max_low, min_all) {
        if low > least + TEST_TOLERANCE {
            return Ok(TestOutcome::fail(witness(i, j)));
        }
    }
    // Nothing in the domain may beat a high-face point.
    if let (Some((j, high)), Some((i, most))) = (min_high, max_all) {
        if most > high + TEST_TOLERANCE {
            return Ok(TestOutcome::fail(witness(i, j)));
        }
    }
    Ok(TestOutcome::pass())
}

/// Upper convexity test: on every in-domain pair and mixing weight, the
/// mixture must not score above both endpoints.
pub fn test_convex_upper(
    score: &Score,
    grid: &PerformanceGrid,
    lambdas: &[f64],
    config: &AuditConfig,
) -> TestOutcome {
    let (upper, _) = convexity_scan(score, grid, lambdas, config, true, false);
    upper
}

/// Lower convexity test: the mirror bound, mixtures must not score below
/// both endpoints.
pub fn test_convex_lower(
    score: &Score,
    grid: &PerformanceGrid,
    lambdas: &[f64],
    config: &AuditConfig,
) -> TestOutcome {
    let (_, lower) = convexity_scan(score, grid, lambdas, config, false, true);
    lower
}

/// Runs the three tests with shared defaults and aggregates the verdicts.
pub fn audit_score(
    score: &Score,
    satisfaction: &RandomVariable,
    constraint: ConstraintSet,
    resolution: Option<u32>,
    config: &AuditConfig,
) -> Result<TestVerdict> {
    let resolution = resolution.unwrap_or_else(|| constraint.default_resolution());
    let grid = make_grid(satisfaction.space(), constraint, resolution)?;
    audit_score_on_grid(score, satisfaction, &grid, config)
}

/// Same as [`audit_score`] on an existing grid.
pub fn audit_score_on_grid(
    score: &Score,
    satisfaction: &RandomVariable,
    grid: &PerformanceGrid,
    config: &AuditConfig,
) -> Result<TestVerdict> {
    let test1 = test_satisfaction_axiom(score, satisfaction, grid)?;
    let (test2, test3) = convexity_scan(score, grid, &config.lambdas, config, true, true);
    Ok(TestVerdict {
        test1,
        test2,
        test3,
    })
}

/// One pass over all candidate pairs and mixing weights, checking either or
/// both sides of the convexity bracket. Pair enumeration follows grid order,
/// so the first witness is deterministic.
fn convexity_scan(
    score: &Score,
    grid: &PerformanceGrid,
    lambdas: &[f64],
    config: &AuditConfig,
    check_upper: bool,
    check_lower: bool,
) -> (TestOutcome, TestOutcome) {
    let candidates = candidate_indices(grid, config);
    let points = grid.points();
    let values: Vec<Option<f64>> = candidates
        .iter()
        .map(|&i| score.eval_probs(points[i].probs()))
        .collect();
    let dim = grid.space().len();

    let mut upper = TestOutcome::pass();
    let mut lower = TestOutcome::pass();
    let mut need_upper = check_upper;
    let mut need_lower = check_lower;

    let mut mixture = vec![0.0f64; dim];
    'pairs: for a in 0..candidates.len() {
        let Some(score_a) = values[a] else { continue };
        let probs_a = points[candidates[a]].probs();
        for b in (a + 1)..candidates.len() {
            let Some(score_b) = values[b] else { continue };
            let probs_b = points[candidates[b]].probs();
            let upper_bound = score_a.max(score_b) + TEST_TOLERANCE;
            let lower_bound = score_a.min(score_b) - TEST_TOLERANCE;
            for &lambda in lambdas {
                for (m, (x, y)) in mixture.iter_mut().zip(probs_a.iter().zip(probs_b)) {
                    *m = lambda * x + (1.0 - lambda) * y;
                }
                let Some(score_mix) = score.eval_probs(&mixture) else {
                    continue;
                };
                if need_upper && score_mix > upper_bound {
                    upper = TestOutcome::fail(Counterexample::MixtureViolation {
                        p1: probs_a.to_vec(),
                        p2: probs_b.to_vec(),
                        lambda,
                        mixture: mixture.clone(),
                        score1: score_a,
                        score2: score_b,
                        mixture_score: score_mix,
                        side: MixtureSide::AboveMax,
                    });
                    need_upper = false;
                    if !need_lower {
                        break 'pairs;
                    }
                }
                if need_lower && score_mix < lower_bound {
                    lower = TestOutcome::fail(Counterexample::MixtureViolation {
                        p1: probs_a.to_vec(),
                        p2: probs_b.to_vec(),
                        lambda,
                        mixture: mixture.clone(),
                        score1: score_a,
                        score2: score_b,
                        mixture_score: score_mix,
                        side: MixtureSide::BelowMin,
                    });
                    need_lower = false;
                    if !need_upper {
                        break 'pairs;
                    }
                }
            }
        }
    }
    (upper, lower)
}

/// Which grid points take part in pair enumeration. Fixed-prior grids are
/// used in full; unconstrained grids larger than the subsample limit are
/// thinned with a seeded shuffle, keeping runs repeatable.
fn candidate_indices(grid: &PerformanceGrid, config: &AuditConfig) -> Vec<usize> {
    let n = grid.len();
    let subsample = config.subsample.max(2);
    match grid.constraint() {
        ConstraintSet::FixedPositivePrior(_) => (0..n).collect(),
        ConstraintSet::Unconstrained => {
            if n <= subsample {
                return (0..n).collect();
            }
            let mut indices: Vec<usize> = (0..n).collect();
            let mut rng = SplitMix64::new(config.seed);
            // Partial Fisher-Yates: only the first `subsample` slots matter.
            for i in 0..subsample {
                let j = i + (rng.next() % (n - i) as u64) as usize;
                indices.swap(i, j);
            }
            indices.truncate(subsample);
            indices.sort_unstable();
            indices
        }
    }
}

/// Small deterministic generator for subsampling; fixed here rather than
/// pulled from a crate so the selection never changes under dependency
/// upgrades.
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub(crate) fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}
