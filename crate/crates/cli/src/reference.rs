//! Reference verdicts for the built-in score review: the expected
//! (test1, test2, test3) triple of every catalog score on each of the three
//! standard constraint sets. `table1 --check` compares a run against these.

/// One (test1, test2, test3) triple.
pub type VerdictTriple = (bool, bool, bool);

/// Constraint sets of the review, in column order.
pub const CONSTRAINT_PRIORS: [Option<f64>; 3] = [None, Some(0.2), Some(0.5)];

/// Per-score expected triples in the column order of [`CONSTRAINT_PRIORS`].
pub const EXPECTED_VERDICTS: [(&str, [VerdictTriple; 3]); 27] = {
    const V: bool = true;
    const X: bool = false;
    [
        ("accuracy", [(V, V, V), (V, V, V), (V, V, V)]),
        ("f0.5", [(V, V, V), (V, V, V), (V, V, V)]),
        ("f1", [(V, V, V), (V, V, V), (V, V, V)]),
        ("f2", [(V, V, V), (V, V, V), (V, V, V)]),
        ("npv", [(V, V, V), (V, V, V), (V, V, V)]),
        ("ppv", [(V, V, V), (V, V, V), (V, V, V)]),
        ("tnr", [(V, V, V), (V, V, V), (V, V, V)]),
        ("tpr", [(V, V, V), (V, V, V), (V, V, V)]),
        ("balanced_accuracy", [(V, X, X), (V, V, V), (V, V, V)]),
        ("cohen_kappa", [(X, X, X), (V, V, V), (V, V, V)]),
        ("informedness", [(V, X, X), (V, V, V), (V, V, V)]),
        ("plr", [(V, X, X), (V, V, V), (V, V, V)]),
        ("ptn", [(X, V, V), (V, V, V), (V, V, V)]),
        ("ptp", [(X, V, V), (V, V, V), (V, V, V)]),
        ("kappa_chance", [(X, X, X), (X, V, V), (V, V, V)]),
        ("error_rate", [(X, V, V), (X, V, V), (X, V, V)]),
        ("fdr", [(X, V, V), (X, V, V), (X, V, V)]),
        ("fnr", [(X, V, V), (X, V, V), (X, V, V)]),
        ("for", [(X, V, V), (X, V, V), (X, V, V)]),
        ("fpr", [(X, V, V), (X, V, V), (X, V, V)]),
        ("gmean_tnr_tpr", [(V, X, X), (V, X, V), (V, X, V)]),
        ("markedness", [(V, X, X), (V, X, X), (V, X, X)]),
        ("mcc", [(V, X, X), (V, X, X), (V, X, X)]),
        ("nlr", [(X, X, X), (X, V, V), (X, V, V)]),
        ("odds_ratio", [(V, X, X), (V, X, X), (V, X, X)]),
        ("rate_positive_predictions", [(X, V, V), (X, V, V), (X, V, V)]),
        ("d_prime", [(V, X, X), (V, X, X), (V, X, X)]),
    ]
};

/// Expected triple for one score and constraint column, if the score is a
/// catalog score.
pub fn expected_verdict(score: &str, column: usize) -> Option<VerdictTriple> {
    EXPECTED_VERDICTS
        .iter()
        .find(|(name, _)| *name == score)
        .map(|(_, triples)| triples[column])
}
