//! The quantified ranking-score properties over seeded random instances.

use perfrank::properties;

#[test]
fn all_properties_hold_over_a_thousand_instances() {
    let checks = properties::run_all(0xA5A5_0001, 1000);
    assert_eq!(checks.len(), 8);
    for check in &checks {
        assert!(
            check.passed,
            "{} failed: max deviation {} over {} instances (tolerance {})",
            check.name, check.max_deviation, check.instances, check.tolerance
        );
    }
}

#[test]
fn properties_are_seed_deterministic() {
    let first = properties::run_all(77, 200);
    let second = properties::run_all(77, 200);
    for (a, b) in first.iter().zip(&second) {
        assert_eq!(a.max_deviation.to_bits(), b.max_deviation.to_bits());
    }
}
