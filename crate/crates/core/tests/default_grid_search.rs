//! Correlation-search values on the default unconstrained grid, pinned from
//! a reference run so regressions in the grid or the search surface here.

use perfrank::{
    find_entry, make_grid, optimize_tau, tau_of_importance, ConstraintSet, DirectSearchConfig,
    Objective, Score, TwoClass,
};

#[test]
fn pinned_extreme_correlations_on_the_default_grid() {
    let setting = TwoClass::new();
    let grid = make_grid(setting.space(), ConstraintSet::Unconstrained, 32).unwrap();
    let search = DirectSearchConfig::default();

    // The weakest correlation the accuracy can have with a ranking score.
    let accuracy = find_entry("accuracy").unwrap();
    let result = optimize_tau(accuracy.score(), &grid, Objective::Min, &search).unwrap();
    assert!(
        (result.tau - 0.4695).abs() <= 0.02,
        "accuracy tau_min drifted: {}",
        result.tau
    );
    // The reported parameters reproduce the reported value.
    let replay = tau_of_importance(accuracy.score(), &grid, result.a, result.b)
        .unwrap()
        .unwrap();
    assert_eq!(replay.to_bits(), result.tau.to_bits());

    // Rate scores reach only the uncorrelated floor from below.
    let tnr = find_entry("tnr").unwrap();
    let result = optimize_tau(tnr.score(), &grid, Objective::Min, &search).unwrap();
    assert!(result.tau.abs() <= 0.02, "tnr tau_min drifted: {}", result.tau);
}

#[test]
fn minimum_of_a_score_mirrors_the_maximum_of_its_negation() {
    let setting = TwoClass::new();
    let grid = make_grid(setting.space(), ConstraintSet::Unconstrained, 8).unwrap();
    let search = DirectSearchConfig::default();
    let mcc = find_entry("mcc").unwrap();
    let negated = {
        let inner = mcc.score().clone();
        Score::from_fn("negated mcc", setting.space(), move |probs| {
            inner.eval_probs(probs).map(|v| -v)
        })
    };
    let minimum = optimize_tau(mcc.score(), &grid, Objective::Min, &search).unwrap();
    let mirrored = optimize_tau(&negated, &grid, Objective::Max, &search).unwrap();
    assert_eq!(minimum.tau.to_bits(), (-mirrored.tau).to_bits());
}
