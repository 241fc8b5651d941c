//! Tie-adjusted Kendall rank correlation and the coarse-to-fine direct
//! search for the extreme correlations a score can reach against the ranking
//! scores, parameterized over the unit square.
//!
//! Scale invariance, globally and per satisfaction face, collapses the whole
//! importance family on the four-outcome space to two degrees of freedom:
//! `a` splits weight between tn and tp, `b` between fp and fn. The search
//! never needs more than that square.

use crate::audit::PerformanceGrid;
use crate::error::{Error, Result};
use crate::score::Score;
use crate::scores2c::{CatalogEntry, Monotonicity, FN, FP, TN, TP};

/// Direction of the correlation search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Min,
    Max,
}

/// How a reported extreme correlation was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauProvenance {
    /// Found by the direct search.
    Empirical,
    /// Implied by a declared monotone ranking-score equivalence.
    Analytic,
    /// The score is constant on the grid, so every correlation is undefined;
    /// zero is reported by convention.
    ConstantScore,
}

/// An extreme Kendall correlation with the parameters that reach it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauResult {
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    pub objective: Objective,
    pub provenance: TauProvenance,
}

impl TauResult {
    /// The importance reconstructed from `(a, b)`, in (tn, fp, fn, tp) order.
    pub fn importance(&self) -> [f64; 4] {
        importance_from_parameters(self.a, self.b)
    }
}

/// Importance encoded by a point of the unit square.
pub fn importance_from_parameters(a: f64, b: f64) -> [f64; 4] {
    [1.0 - a, 1.0 - b, b, a]
}

/// Parameters encoding an importance, when both faces carry weight.
pub fn parameters_from_importance(importance: &[f64; 4]) -> Option<(f64, f64)> {
    let satisfied = importance[TN] + importance[TP];
    let unsatisfied = importance[FP] + importance[FN];
    if satisfied == 0.0 || unsatisfied == 0.0 {
        return None;
    }
    Some((importance[TP] / satisfied, importance[FN] / unsatisfied))
}

/// Tie-adjusted Kendall correlation (the tau-b statistic).
///
/// Counts concordant and discordant pairs in `O(n log n)` by merge-sorting,
/// with the usual tie corrections in the denominator. Returns `Ok(None)`
/// when either side is completely tied, which leaves the statistic
/// undefined.
pub fn kendall_tau(xs: &[f64], ys: &[f64]) -> Result<Option<f64>> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            need: 2,
            got: xs.len(),
        });
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue);
    }
    let n = xs.len();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&i, &j| {
        xs[i]
            .partial_cmp(&xs[j])
            .unwrap()
            .then(ys[i].partial_cmp(&ys[j]).unwrap())
    });

    // Tie counts over x-runs, plus joint ties within them.
    let mut tied_x = 0u64;
    let mut tied_xy = 0u64;
    let mut run = 0;
    while run < n {
        let mut end = run + 1;
        while end < n && xs[order[end]] == xs[order[run]] {
            end += 1;
        }
        tied_x += pairs(end - run);
        let mut sub = run;
        while sub < end {
            let mut sub_end = sub + 1;
            while sub_end < end && ys[order[sub_end]] == ys[order[sub]] {
                sub_end += 1;
            }
            tied_xy += pairs(sub_end - sub);
            sub = sub_end;
        }
        run = end;
    }

    // Discordant pairs are exactly the inversions of y in x-order.
    let keys: Vec<f64> = order.iter().map(|&i| ys[i]).collect();
    let discordant = count_inversions(keys);

    // Tie count over y alone.
    let mut y_sorted: Vec<f64> = ys.to_vec();
    y_sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let mut tied_y = 0u64;
    let mut run = 0;
    while run < n {
        let mut end = run + 1;
        while end < n && y_sorted[end] == y_sorted[run] {
            end += 1;
        }
        tied_y += pairs(end - run);
        run = end;
    }

    let total = pairs(n);
    let denominator =
        ((total - tied_x) as f64 * (total - tied_y) as f64).sqrt();
    if denominator == 0.0 {
        return Ok(None);
    }
    let concordant_minus_discordant =
        total as f64 - tied_x as f64 - tied_y as f64 + tied_xy as f64
            - 2.0 * discordant as f64;
    Ok(Some(
        (concordant_minus_discordant / denominator).clamp(-1.0, 1.0),
    ))
}

fn pairs(k: usize) -> u64 {
    let k = k as u64;
    k * (k - 1) / 2
}

/// Number of strict inversions, by bottom-up merge sort.
fn count_inversions(mut keys: Vec<f64>) -> u64 {
    let n = keys.len();
    let mut buffer = vec![0.0f64; n];
    let mut inversions = 0u64;
    let mut width = 1;
    while width < n {
        let mut start = 0;
        while start + width < n {
            let mid = start + width;
            let end = (start + 2 * width).min(n);
            let (mut i, mut j, mut k) = (start, mid, start);
            while i < mid && j < end {
                if keys[j] < keys[i] {
                    inversions += (mid - i) as u64;
                    buffer[k] = keys[j];
                    j += 1;
                } else {
                    buffer[k] = keys[i];
                    i += 1;
                }
                k += 1;
            }
            buffer[k..k + (mid - i)].copy_from_slice(&keys[i..mid]);
            let k = k + (mid - i);
            buffer[k..k + (end - j)].copy_from_slice(&keys[j..end]);
            keys[start..end].copy_from_slice(&buffer[start..end]);
            start = end;
        }
        width *= 2;
    }
    inversions
}

/// Score values over the grid, kept with their point indices.
struct GridValues {
    values: Vec<Option<f64>>,
}

impl GridValues {
    fn of(score: &Score, grid: &PerformanceGrid) -> GridValues {
        GridValues {
            values: grid
                .points()
                .iter()
                .map(|p| score.eval_probs(p.probs()))
                .collect(),
        }
    }
}

/// Correlation between a score and the ranking score encoded by `(a, b)`,
/// over all grid points that lie in both domains.
///
/// Returns `Ok(None)` when fewer than two points remain or the correlation
/// is undefined there.
pub fn tau_of_importance(
    score: &Score,
    grid: &PerformanceGrid,
    a: f64,
    b: f64,
) -> Result<Option<f64>> {
    for v in [a, b] {
        if !(0.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(Error::InvalidSearchParameter(v));
        }
    }
    if grid.space().len() != 4 {
        return Err(Error::UnsupportedConstraint);
    }
    let values = GridValues::of(score, grid);
    tau_against_parameters(&values, grid, a, b)
}

fn tau_against_parameters(
    score_values: &GridValues,
    grid: &PerformanceGrid,
    a: f64,
    b: f64,
) -> Result<Option<f64>> {
    let importance = importance_from_parameters(a, b);
    let mut xs = Vec::with_capacity(grid.len());
    let mut ys = Vec::with_capacity(grid.len());
    for (point, value) in grid.points().iter().zip(&score_values.values) {
        let Some(x) = *value else { continue };
        let probs = point.probs();
        let denominator = importance[TN] * probs[TN]
            + importance[FP] * probs[FP]
            + importance[FN] * probs[FN]
            + importance[TP] * probs[TP];
        if denominator == 0.0 {
            continue;
        }
        let numerator = importance[TN] * probs[TN] + importance[TP] * probs[TP];
        xs.push(x);
        ys.push(numerator / denominator);
    }
    if xs.len() < 2 {
        return Ok(None);
    }
    kendall_tau(&xs, &ys)
}

/// Hyperparameters of the coarse-to-fine search. Fixed defaults keep results
/// reproducible; widen or tighten them for sensitivity checks.
#[derive(Debug, Clone)]
pub struct DirectSearchConfig {
    /// Points per side of each square's evaluation lattice.
    pub points_per_side: usize,
    /// Factor applied to the square's side between iterations.
    pub shrink: f64,
    /// Iteration stops once the side drops below this.
    pub stop_side: f64,
}

impl Default for DirectSearchConfig {
    fn default() -> Self {
        DirectSearchConfig {
            points_per_side: 11,
            shrink: 0.25,
            stop_side: 1e-3,
        }
    }
}

/// Coarse-to-fine direct search for the extreme correlation over `(a, b)`.
///
/// Evaluates the correlation on a lattice over the current square, recenters
/// a shrunken square on the best cell (ties resolve to the lexicographically
/// smallest point), and stops once the square is small enough. The best
/// value seen anywhere is returned. The correlation is not continuous in the
/// importance on a finite grid, which is exactly why this stays a direct
/// search with no gradients or smoothing.
pub fn optimize_tau(
    score: &Score,
    grid: &PerformanceGrid,
    objective: Objective,
    config: &DirectSearchConfig,
) -> Result<TauResult> {
    if grid.space().len() != 4 {
        return Err(Error::UnsupportedConstraint);
    }
    let values = GridValues::of(score, grid);

    // A score constant on its grid domain ties every pair: the correlation
    // is undefined for every importance and reported as zero by convention.
    // Constancy is judged at the crate-wide tolerance; rounding in the grid
    // coordinates wiggles genuinely constant scores by a few ulps.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values.values.iter().flatten() {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    if hi - lo <= crate::performance::EQ_TOLERANCE {
        return Ok(TauResult {
            tau: 0.0,
            a: 0.5,
            b: 0.5,
            objective,
            provenance: TauProvenance::ConstantScore,
        });
    }

    let better = |candidate: f64, incumbent: f64| match objective {
        Objective::Min => candidate < incumbent,
        Objective::Max => candidate > incumbent,
    };

    let mut center = (0.5, 0.5);
    let mut side = 1.0f64;
    let mut best_overall: Option<(f64, f64, f64)> = None;

    while side >= config.stop_side {
        let low_a = (center.0 - side / 2.0).clamp(0.0, 1.0 - side);
        let low_b = (center.1 - side / 2.0).clamp(0.0, 1.0 - side);
        let step = side / (config.points_per_side - 1) as f64;

        let mut best_here: Option<(f64, f64, f64)> = None;
        for i in 0..config.points_per_side {
            let a = (low_a + i as f64 * step).clamp(0.0, 1.0);
            for j in 0..config.points_per_side {
                let b = (low_b + j as f64 * step).clamp(0.0, 1.0);
                let Some(tau) = tau_against_parameters(&values, grid, a, b)? else {
                    continue;
                };
                if best_here.is_none_or(|(t, _, _)| better(tau, t)) {
                    best_here = Some((tau, a, b));
                }
            }
        }

        if let Some((tau, a, b)) = best_here {
            if best_overall.is_none_or(|(t, _, _)| better(tau, t)) {
                best_overall = Some((tau, a, b));
            }
            center = (a, b);
        }
        side *= config.shrink;
    }

    let (tau, a, b) = best_overall.unwrap_or((0.0, 0.5, 0.5));
    Ok(TauResult {
        tau,
        a,
        b,
        objective,
        provenance: if best_overall.is_some() {
            TauProvenance::Empirical
        } else {
            TauProvenance::ConstantScore
        },
    })
}

/// Search wrapper that takes the analytic shortcut when a catalog entry
/// declares a monotone ranking-score equivalence valid on the grid's
/// constraint set: a strictly increasing link pins the maximum at +1, a
/// strictly decreasing one pins the minimum at -1, with the declared
/// importance. Every other case falls back to the direct search.
pub fn optimize_tau_for_entry(
    entry: &CatalogEntry,
    grid: &PerformanceGrid,
    objective: Objective,
    config: &DirectSearchConfig,
) -> Result<TauResult> {
    if entry.equivalence_applies(grid.constraint()) {
        let positive_prior = match grid.constraint() {
            crate::audit::ConstraintSet::FixedPositivePrior(p) => Some(p),
            crate::audit::ConstraintSet::Unconstrained => None,
        };
        let shortcut = match (entry.monotonicity(), objective) {
            (Some(Monotonicity::Increasing), Objective::Max) => Some(1.0),
            (Some(Monotonicity::Decreasing), Objective::Min) => Some(-1.0),
            _ => None,
        };
        if let Some(tau) = shortcut {
            let importance = entry
                .expected_importance(positive_prior)
                .expect("applicable equivalences declare an importance");
            let values: [f64; 4] = importance.values().try_into().unwrap();
            let (a, b) = parameters_from_importance(&values).unwrap_or((0.5, 0.5));
            return Ok(TauResult {
                tau,
                a,
                b,
                objective,
                provenance: TauProvenance::Analytic,
            });
        }
    }
    optimize_tau(entry.score(), grid, objective, config)
}
