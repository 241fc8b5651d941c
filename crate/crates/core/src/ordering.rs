//! Score-induced preorders on performances and rank bounds for entity sets.
//!
//! A score induces a preorder: inside the domain, performances compare by
//! value; a performance outside the domain is incomparable to everything
//! except itself. The four derived relations partition every ordered pair.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::performance::Performance;
use crate::score::Score;

/// Outcome of comparing two performances under a score-induced preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Worse,
    Equivalent,
    Better,
    Incomparable,
}

impl Relation {
    /// The relation seen from the other side of the pair.
    pub fn converse(self) -> Relation {
        match self {
            Relation::Worse => Relation::Better,
            Relation::Better => Relation::Worse,
            other => other,
        }
    }

    /// Whether this relation asserts `left <= right` in the preorder.
    pub fn is_worse_or_equivalent(self) -> bool {
        matches!(self, Relation::Worse | Relation::Equivalent)
    }
}

/// Compares two performances under the preorder induced by `score`.
///
/// Both in domain: ordered by value. Exactly one in domain: incomparable.
/// Neither: equivalent only when the probability vectors are bit-identical.
pub fn compare(score: &Score, p1: &Performance, p2: &Performance) -> Result<Relation> {
    let x1 = score.eval(p1)?;
    let x2 = score.eval(p2)?;
    Ok(match (x1, x2) {
        (Some(a), Some(b)) => {
            if a < b {
                Relation::Worse
            } else if a > b {
                Relation::Better
            } else {
                Relation::Equivalent
            }
        }
        (Some(_), None) | (None, Some(_)) => Relation::Incomparable,
        (None, None) => {
            if p1.bitwise_eq(p2) {
                Relation::Equivalent
            } else {
                Relation::Incomparable
            }
        }
    })
}

/// An identified entity together with its evaluated performance.
#[derive(Debug, Clone)]
pub struct EntityRecord {
    pub id: String,
    pub performance: Performance,
}

impl EntityRecord {
    pub fn new(id: impl Into<String>, performance: Performance) -> Self {
        EntityRecord {
            id: id.into(),
            performance,
        }
    }
}

/// The admissible range of rank values for one entity.
///
/// `lower` counts the entities strictly better, plus one; `upper` counts the
/// entities this one is worse than or equivalent to (itself included). Any
/// ranking procedure consistent with the preorder must stay within these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBounds {
    pub lower: usize,
    pub upper: usize,
}

impl RankBounds {
    /// Competition-style single rank: the lower bound.
    pub fn conventional(&self) -> usize {
        self.lower
    }
}

/// Rank bounds for every entity in the set, under the score-induced preorder.
pub fn rank_bounds(
    entities: &[EntityRecord],
    score: &Score,
) -> Result<BTreeMap<String, RankBounds>> {
    if entities.is_empty() {
        return Err(Error::EmptyEntityList);
    }
    for (i, e) in entities.iter().enumerate() {
        if entities[..i].iter().any(|other| other.id == e.id) {
            return Err(Error::DuplicateEntityId(e.id.clone()));
        }
    }
    let mut bounds = BTreeMap::new();
    for e in entities {
        let mut strictly_better = 0;
        let mut worse_or_equivalent = 0;
        for other in entities {
            match compare(score, &e.performance, &other.performance)? {
                Relation::Worse => {
                    strictly_better += 1;
                    worse_or_equivalent += 1;
                }
                Relation::Equivalent => worse_or_equivalent += 1,
                Relation::Better | Relation::Incomparable => {}
            }
        }
        bounds.insert(
            e.id.clone(),
            RankBounds {
                lower: strictly_better + 1,
                upper: worse_or_equivalent,
            },
        );
    }
    Ok(bounds)
}

/// Outcome of one order-theory lemma over a sample of performances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaResult {
    pub lemma: &'static str,
    pub passed: bool,
    /// Indices into the sample witnessing the failure, when there is one.
    pub witness: Option<Vec<usize>>,
}

/// Results of the full lemma suite for one relation.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub results: Vec<LemmaResult>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &LemmaResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn get(&self, lemma: &str) -> Option<&LemmaResult> {
        self.results.iter().find(|r| r.lemma == lemma)
    }
}

/// Checks the derived-relation lemmas for the preorder induced by `score`
/// over all pairs and triples from `sample`.
pub fn relation_properties_check(score: &Score, sample: &[Performance]) -> Result<LemmaReport> {
    if sample.len() < 3 {
        return Err(Error::InsufficientData {
            need: 3,
            got: sample.len(),
        });
    }
    let n = sample.len();
    let mut matrix = vec![Relation::Equivalent; n * n];
    for i in 0..n {
        for j in 0..n {
            matrix[i * n + j] = compare(score, &sample[i], &sample[j])?;
        }
    }
    Ok(relation_properties_check_with(
        |i, j| matrix[i * n + j],
        n,
    ))
}

/// Same lemma suite over an arbitrary relation provider.
///
/// `rel(i, j)` must return the relation of sample `i` against sample `j` for
/// `i, j < n`. Intended both for score-induced preorders and for hand-built
/// relations used as negative controls in tests.
pub fn relation_properties_check_with<F>(rel: F, n: usize) -> LemmaReport
where
    F: Fn(usize, usize) -> Relation,
{
    use Relation::*;
    let woe = |i: usize, j: usize| rel(i, j).is_worse_or_equivalent();

    let mut results = Vec::new();
    let mut push = |lemma: &'static str, witness: Option<Vec<usize>>| {
        results.push(LemmaResult {
            lemma,
            passed: witness.is_none(),
            witness,
        });
    };

    // Reflexivity of the equivalence and of the preorder itself.
    push(
        "equivalent is reflexive",
        (0..n).find(|&i| rel(i, i) != Equivalent).map(|i| vec![i]),
    );
    push(
        "worse-or-equivalent is reflexive",
        (0..n).find(|&i| !woe(i, i)).map(|i| vec![i]),
    );

    // Symmetry.
    push("equivalent is symmetric", {
        find_pair(n, |i, j| rel(i, j) == Equivalent && rel(j, i) != Equivalent)
    });
    push("incomparable is symmetric", {
        find_pair(n, |i, j| {
            rel(i, j) == Incomparable && rel(j, i) != Incomparable
        })
    });

    // Irreflexivity and asymmetry of the strict relations.
    push(
        "worse is irreflexive",
        (0..n).find(|&i| rel(i, i) == Worse).map(|i| vec![i]),
    );
    push(
        "better is irreflexive",
        (0..n).find(|&i| rel(i, i) == Better).map(|i| vec![i]),
    );
    push("worse is asymmetric", {
        find_pair(n, |i, j| rel(i, j) == Worse && rel(j, i) == Worse)
    });
    push("better is asymmetric", {
        find_pair(n, |i, j| rel(i, j) == Better && rel(j, i) == Better)
    });

    // Converse-ness.
    push("worse and better are converse", {
        find_pair(n, |i, j| {
            (rel(i, j) == Worse) != (rel(j, i) == Better)
        })
    });
    push("worse-or-equivalent and better-or-equivalent are converse", {
        // <= seen from the left must match >= seen from the right; with the
        // four derived relations this is the same bit, so check both ways.
        find_pair(n, |i, j| {
            woe(i, j) != matches!(rel(j, i), Better | Equivalent)
        })
    });

    // Transitivity.
    push("equivalent is transitive", {
        find_triple(n, |a, b, c| {
            rel(a, b) == Equivalent && rel(b, c) == Equivalent && rel(a, c) != Equivalent
        })
    });
    push("worse is transitive", {
        find_triple(n, |a, b, c| {
            rel(a, b) == Worse && rel(b, c) == Worse && rel(a, c) != Worse
        })
    });
    push("better is transitive", {
        find_triple(n, |a, b, c| {
            rel(a, b) == Better && rel(b, c) == Better && rel(a, c) != Better
        })
    });
    push("worse-or-equivalent is transitive", {
        find_triple(n, |a, b, c| woe(a, b) && woe(b, c) && !woe(a, c))
    });

    LemmaReport { results }
}

fn find_pair(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for i in 0..n {
        for j in 0..n {
            if bad(i, j) {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

fn find_triple(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}
