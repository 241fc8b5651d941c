//! Property-based invariants over arbitrary inputs.

use proptest::prelude::*;

use perfrank::{filter, kendall_tau, Performance, RandomVariable, SampleSpace, Score};

fn space4() -> perfrank::SpaceRef {
    SampleSpace::new(["tn", "fp", "fn", "tp"]).unwrap()
}

fn simplex4() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 4).prop_filter_map("mass", |raw| {
        let total: f64 = raw.iter().sum();
        if total < 1e-6 {
            return None;
        }
        Some(raw.into_iter().map(|x| x / total).collect())
    })
}

fn positive4() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-3f64..10.0, 4)
}

proptest! {
    #[test]
    fn construction_normalizes_to_unit_mass(probs in simplex4()) {
        let space = space4();
        let p = Performance::new(&space, probs).unwrap();
        let total: f64 = p.probs().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(p.probs().iter().all(|&q| q >= 0.0));
    }

    #[test]
    fn filter_output_is_a_performance(probs in simplex4(), weights in positive4()) {
        let space = space4();
        let p = Performance::new(&space, probs).unwrap();
        let importance = RandomVariable::new(&space, weights).unwrap();
        let filtered = filter(&importance, &p).unwrap();
        let total: f64 = filtered.probs().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(filtered.probs().iter().all(|&q| q >= 0.0));
    }

    #[test]
    fn ranking_scores_stay_in_the_satisfaction_range(
        probs in simplex4(),
        weights in positive4(),
        s in prop::collection::vec(-5.0f64..5.0, 4),
    ) {
        let space = space4();
        let p = Performance::new(&space, probs).unwrap();
        let importance = RandomVariable::new(&space, weights).unwrap();
        let satisfaction = RandomVariable::new(&space, s).unwrap();
        let score = Score::ranking(&importance, &satisfaction).unwrap();
        if let Some(value) = score.eval(&p).unwrap() {
            prop_assert!(value >= satisfaction.min_value());
            prop_assert!(value <= satisfaction.max_value());
        }
    }

    #[test]
    fn kendall_tau_is_symmetric_and_bounded(
        pairs in prop::collection::vec((0u8..6, 0u8..6), 2..60),
    ) {
        let xs: Vec<f64> = pairs.iter().map(|(a, _)| *a as f64).collect();
        let ys: Vec<f64> = pairs.iter().map(|(_, b)| *b as f64).collect();
        let forward = kendall_tau(&xs, &ys).unwrap();
        let backward = kendall_tau(&ys, &xs).unwrap();
        match (forward, backward) {
            (Some(f), Some(b)) => {
                prop_assert!((f - b).abs() <= 1e-12);
                prop_assert!((-1.0..=1.0).contains(&f));
            }
            (None, None) => {}
            other => prop_assert!(false, "asymmetric definedness {other:?}"),
        }
    }
}
