//! Numerical self-checks of the ranking-score properties, runnable over any
//! number of seeded random instances.
//!
//! Each check quantifies one algebraic property of `R_I` — decomposition
//! through the filter operation, affine satisfaction transport, importance
//! scale invariances, the harmonic/conjugate mean structure, convex contour
//! sets, and the satisfaction range bound — and reports the worst deviation
//! observed. The sampler is a fixed splitmix generator, so a given seed
//! always replays the same instances.

use crate::audit::SplitMix64;
use crate::ordering::compare;
use crate::performance::Performance;
use crate::score::{filter, Score};
use crate::space::{RandomVariable, SpaceRef};

/// Outcome of one property check.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub instances: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PropertyCheck {
    fn from_deviation(
        name: &'static str,
        instances: usize,
        max_deviation: f64,
        tolerance: f64,
    ) -> Self {
        PropertyCheck {
            name,
            instances,
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
        }
    }
}

/// Runs every property check with the same seed and instance count.
pub fn run_all(seed: u64, instances: usize) -> Vec<PropertyCheck> {
    vec![
        check_decomposition(seed, instances),
        check_affine_satisfaction(seed.wrapping_add(1), instances),
        check_scale_invariance(seed.wrapping_add(2), instances),
        check_face_scaling_order(seed.wrapping_add(3), instances),
        check_harmonic_mean(seed.wrapping_add(4), instances),
        check_conjugate_mean(seed.wrapping_add(5), instances),
        check_convex_contours(seed.wrapping_add(6), instances),
        check_range_bounds(seed.wrapping_add(7), instances),
    ]
}

fn four_outcome_space() -> SpaceRef {
    crate::scores2c::two_class_space()
}

fn binary_satisfaction(space: &SpaceRef) -> RandomVariable {
    RandomVariable::named(space, "S", vec![1.0, 0.0, 0.0, 1.0]).unwrap()
}

/// Strictly positive point of the probability simplex.
fn sample_interior(rng: &mut SplitMix64, dim: usize) -> Vec<f64> {
    loop {
        let draws: Vec<f64> = (0..dim)
            .map(|_| -(1.0 - rng.next_f64()).ln())
            .collect();
        let total: f64 = draws.iter().sum();
        if total > 0.0 && draws.iter().all(|&d| d > 0.0) {
            return draws.iter().map(|d| d / total).collect();
        }
    }
}

/// Simplex point that may have empty coordinates.
fn sample_sparse(rng: &mut SplitMix64, dim: usize) -> Vec<f64> {
    loop {
        let draws: Vec<f64> = (0..dim)
            .map(|_| {
                if rng.next_f64() < 0.25 {
                    0.0
                } else {
                    -(1.0 - rng.next_f64()).ln()
                }
            })
            .collect();
        let total: f64 = draws.iter().sum();
        if total > 0.0 {
            return draws.iter().map(|d| d / total).collect();
        }
    }
}

fn sample_positive_values(rng: &mut SplitMix64, dim: usize, scale: f64) -> Vec<f64> {
    (0..dim)
        .map(|_| scale * (0.05 + rng.next_f64()))
        .collect()
}

/// Composing the importance filter with the expected satisfaction reproduces
/// the ranking score.
pub fn check_decomposition(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let satisfaction =
            RandomVariable::new(&space, sample_positive_values(&mut rng, 4, 2.0)).unwrap();
        let importance =
            RandomVariable::new(&space, sample_positive_values(&mut rng, 4, 1.0)).unwrap();
        let p = Performance::new(&space, sample_sparse(&mut rng, 4)).unwrap();
        let ranking = Score::ranking(&importance, &satisfaction).unwrap();
        let Some(direct) = ranking.eval(&p).unwrap() else {
            continue;
        };
        let filtered = filter(&importance, &p).unwrap();
        let via_filter = Score::expected_value(&satisfaction)
            .eval(&filtered)
            .unwrap()
            .unwrap();
        worst = worst.max((direct - via_filter).abs());
    }
    PropertyCheck::from_deviation("decomposition through filter", instances, worst, 1e-12)
}

/// An affine change of satisfaction moves the ranking score affinely and,
/// for positive slope, keeps the induced ordering of any finite set.
pub fn check_affine_satisfaction(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    let mut order_preserved = true;
    for round in 0..instances {
        let s_values = sample_positive_values(&mut rng, 4, 2.0);
        let satisfaction = RandomVariable::new(&space, s_values.clone()).unwrap();
        let importance =
            RandomVariable::new(&space, sample_positive_values(&mut rng, 4, 1.0)).unwrap();
        let alpha = 6.0 * rng.next_f64() - 3.0;
        let beta = 6.0 * rng.next_f64() - 3.0;
        let shifted_values: Vec<f64> = s_values.iter().map(|s| alpha * s + beta).collect();
        let shifted = RandomVariable::new(&space, shifted_values).unwrap();
        let base = Score::ranking(&importance, &satisfaction).unwrap();
        let moved = Score::ranking(&importance, &shifted).unwrap();

        let p = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let r = base.eval(&p).unwrap().unwrap();
        let r_moved = moved.eval(&p).unwrap().unwrap();
        worst = worst.max((r_moved - (alpha * r + beta)).abs());

        // Order preservation for positive slope, on a fresh small set.
        if round % 50 == 0 && alpha > 0.0 {
            let set: Vec<Performance> = (0..20)
                .map(|_| Performance::new(&space, sample_interior(&mut rng, 4)).unwrap())
                .collect();
            let argsort = |score: &Score| {
                let mut idx: Vec<usize> = (0..set.len()).collect();
                idx.sort_by(|&i, &j| {
                    let a = score.eval(&set[i]).unwrap().unwrap();
                    let b = score.eval(&set[j]).unwrap().unwrap();
                    a.partial_cmp(&b).unwrap().then(i.cmp(&j))
                });
                idx
            };
            if argsort(&base) != argsort(&moved) {
                order_preserved = false;
            }
        }
    }
    let mut check = PropertyCheck::from_deviation(
        "affine satisfaction transport",
        instances,
        worst,
        1e-12,
    );
    check.passed &= order_preserved;
    check
}

/// Rescaling the whole importance leaves the ranking score unchanged.
pub fn check_scale_invariance(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let satisfaction =
            RandomVariable::new(&space, sample_positive_values(&mut rng, 4, 2.0)).unwrap();
        let i_values = sample_positive_values(&mut rng, 4, 1.0);
        let k = 1e-3 + 1e3 * rng.next_f64();
        let scaled_values: Vec<f64> = i_values.iter().map(|v| k * v).collect();
        let importance = RandomVariable::new(&space, i_values).unwrap();
        let scaled = RandomVariable::new(&space, scaled_values).unwrap();
        let base = Score::ranking(&importance, &satisfaction).unwrap();
        let rescaled = Score::ranking(&scaled, &satisfaction).unwrap();
        let p = Performance::new(&space, sample_sparse(&mut rng, 4)).unwrap();
        match (base.eval(&p).unwrap(), rescaled.eval(&p).unwrap()) {
            (Some(a), Some(b)) => worst = worst.max((a - b).abs()),
            (None, None) => {}
            _ => worst = f64::INFINITY,
        }
    }
    PropertyCheck::from_deviation("importance scale invariance", instances, worst, 1e-12)
}

/// With a binary satisfaction, separately rescaling the importance on the
/// satisfied and unsatisfied faces preserves every pairwise comparison.
pub fn check_face_scaling_order(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let satisfaction = binary_satisfaction(&space);
    let mut rng = SplitMix64::new(seed);
    let mut mismatches = 0usize;
    for _ in 0..instances {
        let i_values = sample_positive_values(&mut rng, 4, 1.0);
        let alpha0 = 0.05 + 3.0 * rng.next_f64();
        let alpha1 = 0.05 + 3.0 * rng.next_f64();
        // Faces in (tn, fp, fn, tp) order: satisfied are tn and tp.
        let scaled_values = vec![
            alpha1 * i_values[0],
            alpha0 * i_values[1],
            alpha0 * i_values[2],
            alpha1 * i_values[3],
        ];
        let importance = RandomVariable::new(&space, i_values).unwrap();
        let scaled = RandomVariable::new(&space, scaled_values).unwrap();
        let base = Score::ranking(&importance, &satisfaction).unwrap();
        let moved = Score::ranking(&scaled, &satisfaction).unwrap();
        let p1 = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let p2 = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let before = compare(&base, &p1, &p2).unwrap();
        let after = compare(&moved, &p1, &p2).unwrap();
        if before != after {
            mismatches += 1;
        }
    }
    PropertyCheck {
        name: "per-face importance scaling preserves order",
        instances,
        max_deviation: mismatches as f64,
        tolerance: 0.0,
        passed: mismatches == 0,
    }
}

/// Averaging two importances that agree on the satisfied face makes the
/// ranking score the harmonic mean of the two original scores.
pub fn check_harmonic_mean(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let satisfaction = binary_satisfaction(&space);
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let shared = sample_positive_values(&mut rng, 4, 1.0);
        let other = sample_positive_values(&mut rng, 4, 1.0);
        // Satisfied face (tn, tp) shared; unsatisfied face differs.
        let first = vec![shared[0], shared[1], shared[2], shared[3]];
        let second = vec![shared[0], other[1], other[2], shared[3]];
        let mean: Vec<f64> = first
            .iter()
            .zip(&second)
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        let r = |values: Vec<f64>, p: &Performance| {
            let importance = RandomVariable::new(&space, values).unwrap();
            Score::ranking(&importance, &satisfaction)
                .unwrap()
                .eval(p)
                .unwrap()
                .unwrap()
        };
        let p = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let r1 = r(first, &p);
        let r2 = r(second, &p);
        let r_mean = r(mean, &p);
        worst = worst.max((1.0 / r_mean - 0.5 * (1.0 / r1 + 1.0 / r2)).abs());
    }
    PropertyCheck::from_deviation("harmonic mean across importances", instances, worst, 1e-9)
}

/// The dual statement: agreement on the unsatisfied face makes `1/(1-R)`
/// average arithmetically.
pub fn check_conjugate_mean(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let satisfaction = binary_satisfaction(&space);
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let shared = sample_positive_values(&mut rng, 4, 1.0);
        let other = sample_positive_values(&mut rng, 4, 1.0);
        // Unsatisfied face (fp, fn) shared; satisfied face differs.
        let first = vec![shared[0], shared[1], shared[2], shared[3]];
        let second = vec![other[0], shared[1], shared[2], other[3]];
        let mean: Vec<f64> = first
            .iter()
            .zip(&second)
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        let r = |values: Vec<f64>, p: &Performance| {
            let importance = RandomVariable::new(&space, values).unwrap();
            Score::ranking(&importance, &satisfaction)
                .unwrap()
                .eval(p)
                .unwrap()
                .unwrap()
        };
        let p = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let r1 = r(first, &p);
        let r2 = r(second, &p);
        let r_mean = r(mean, &p);
        worst = worst.max(
            (1.0 / (1.0 - r_mean) - 0.5 * (1.0 / (1.0 - r1) + 1.0 / (1.0 - r2))).abs(),
        );
    }
    PropertyCheck::from_deviation(
        "conjugate mean across importances",
        instances,
        worst,
        1e-9,
    )
}

/// Contour sets of a ranking score are convex: mixtures of performances on
/// one side of a level stay on that side.
pub fn check_convex_contours(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    while checked < instances {
        let satisfaction =
            RandomVariable::new(&space, sample_positive_values(&mut rng, 4, 2.0)).unwrap();
        let importance =
            RandomVariable::new(&space, sample_positive_values(&mut rng, 4, 1.0)).unwrap();
        let ranking = Score::ranking(&importance, &satisfaction).unwrap();
        let level_point = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let p1 = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let p2 = Performance::new(&space, sample_interior(&mut rng, 4)).unwrap();
        let level = ranking.eval(&level_point).unwrap().unwrap();
        let r1 = ranking.eval(&p1).unwrap().unwrap();
        let r2 = ranking.eval(&p2).unwrap().unwrap();
        let below = r1 <= level && r2 <= level;
        let above = r1 >= level && r2 >= level;
        if !below && !above {
            continue;
        }
        checked += 1;
        for step in 1..8 {
            let lambda = step as f64 / 8.0;
            let q = p1.mix(&p2, lambda).unwrap();
            let r_mix = ranking.eval(&q).unwrap().unwrap();
            if below {
                worst = worst.max(r_mix - level);
            }
            if above {
                worst = worst.max(level - r_mix);
            }
        }
    }
    PropertyCheck::from_deviation("convex contour sets", instances, worst, 1e-12)
}

/// Ranking scores never leave the closed range of the satisfaction.
pub fn check_range_bounds(seed: u64, instances: usize) -> PropertyCheck {
    let space = four_outcome_space();
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let s_values: Vec<f64> = (0..4).map(|_| 10.0 * rng.next_f64() - 5.0).collect();
        let satisfaction = RandomVariable::new(&space, s_values.clone()).unwrap();
        let importance =
            RandomVariable::new(&space, sample_positive_values(&mut rng, 4, 1.0)).unwrap();
        let ranking = Score::ranking(&importance, &satisfaction).unwrap();
        let p = Performance::new(&space, sample_sparse(&mut rng, 4)).unwrap();
        let Some(r) = ranking.eval(&p).unwrap() else {
            continue;
        };
        let lo = satisfaction.min_value();
        let hi = satisfaction.max_value();
        worst = worst.max(lo - r).max(r - hi);
    }
    PropertyCheck::from_deviation("satisfaction range bound", instances, worst, 0.0)
}
