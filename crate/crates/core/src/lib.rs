//! Performance-based ranking for finite evaluation experiments.
//!
//! A performance is a probability measure over the outcomes of an evaluation
//! experiment. Scores are partial functions on performances, and every score
//! induces a preorder: better, worse, equivalent, or incomparable. On top of
//! that ordering this crate provides
//!
//! - the family of ranking scores `R_I(P) = E_P[I*S] / E_P[I]`, weighted by a
//!   task satisfaction `S` and an application importance `I`, which respect
//!   the ordering axioms on every convex constraint set ([`score`]);
//! - rank bounds for entity sets under any score-induced preorder
//!   ([`ordering`]);
//! - the classical two-class classification scores with their domains and
//!   known ranking-score equivalences ([`scores2c`]);
//! - empirical audits of arbitrary scores on performance grids: face
//!   ordering and convex-mixture bounds ([`audit`]);
//! - tie-adjusted Kendall correlation and a coarse-to-fine search for the
//!   extreme correlations between a score and the ranking-score family
//!   ([`taucorr`]);
//! - adapters mapping other problems (multi-class, retrieval, detection,
//!   clustering, ranking, discretized regression) onto the same machinery
//!   ([`tasks`]).
//!
//! Everything is immutable after construction and free of interior
//! mutability; all operations are pure functions, safe to call from any
//! number of threads.

pub mod audit;
pub mod error;
pub mod ordering;
pub mod performance;
pub mod probit;
pub mod properties;
pub mod score;
pub mod scores2c;
pub mod space;
pub mod tasks;
pub mod taucorr;

pub use audit::{
    audit_score, audit_score_on_grid, default_lambdas, make_grid, test_convex_lower,
    test_convex_upper, test_satisfaction_axiom, AuditConfig, ConstraintSet, Counterexample,
    MixtureSide, PerformanceGrid, TestOutcome, TestVerdict, TEST_TOLERANCE,
};
pub use error::{Error, Result};
pub use ordering::{
    compare, rank_bounds, relation_properties_check, relation_properties_check_with,
    EntityRecord, LemmaReport, LemmaResult, RankBounds, Relation,
};
pub use performance::{Performance, EQ_TOLERANCE, SUM_TOLERANCE};
pub use probit::{normal_cdf, probit};
pub use properties::PropertyCheck;
pub use score::{filter, Score};
pub use scores2c::{
    catalog, eval_score, find_entry, score_names, two_class_space,
    verify_importance_equivalences, CatalogEntry, ConstraintValidity, EquivalenceCheck,
    EquivalenceReport, Monotonicity, TwoClass,
};
pub use space::{Event, RandomVariable, SampleSpace, SpaceRef, MAX_LABELS};
pub use tasks::TaskSetup;
pub use taucorr::{
    importance_from_parameters, kendall_tau, optimize_tau, optimize_tau_for_entry,
    parameters_from_importance, tau_of_importance, DirectSearchConfig, Objective,
    TauProvenance, TauResult,
};
