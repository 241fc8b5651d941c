//! Scores: named partial functions from performances to the reals.
//!
//! A score owns an explicit domain; evaluation returns `None` outside of it
//! rather than a NaN, because the ordering layer must tell "undefined" apart
//! from any numeric value.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::performance::Performance;
use crate::space::{same_space, Event, RandomVariable, SpaceRef};

type EvalFn = dyn Fn(&[f64]) -> Option<f64> + Send + Sync;

/// A deterministic partial function from performances to reals.
#[derive(Clone)]
pub struct Score {
    name: String,
    space: SpaceRef,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Score")
            .field("name", &self.name)
            .field("space", &self.space.labels())
            .finish()
    }
}

impl Score {
    /// Wraps an arbitrary evaluation function. `f` gets the probability
    /// vector of a performance on `space` and returns `None` off-domain.
    pub fn from_fn(
        name: impl Into<String>,
        space: &SpaceRef,
        f: impl Fn(&[f64]) -> Option<f64> + Send + Sync + 'static,
    ) -> Score {
        Score {
            name: name.into(),
            space: Arc::clone(space),
            eval: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Score {
        self.name = name.into();
        self
    }

    /// Evaluates on a performance; `Ok(None)` means out of domain.
    pub fn eval(&self, p: &Performance) -> Result<Option<f64>> {
        if !same_space(&self.space, p.space()) {
            return Err(Error::SpaceMismatch);
        }
        Ok((self.eval)(p.probs()))
    }

    /// Evaluates directly on a probability vector that is already known to
    /// describe a performance on this score's space. This is the hot path of
    /// the audit loops, where millions of convex mixtures never materialize
    /// as `Performance` values.
    pub fn eval_probs(&self, probs: &[f64]) -> Option<f64> {
        (self.eval)(probs)
    }

    pub fn in_domain(&self, p: &Performance) -> Result<bool> {
        Ok(self.eval(p)?.is_some())
    }

    /// The expected value score `P -> E_P[V]`, defined on every performance.
    pub fn expected_value(v: &RandomVariable) -> Score {
        let values = v.values().to_vec();
        Score::from_fn(format!("E[{}]", v.name()), v.space(), move |probs| {
            Some(dot(&values, probs))
        })
    }

    /// The probabilistic score `P -> P(e1 | e2)`, defined where `P(e2) != 0`.
    ///
    /// Requires `(empty) < e1 < e2`, with both events on `space`.
    pub fn probabilistic(space: &SpaceRef, e1: Event, e2: Event) -> Result<Score> {
        let full = space.full_event();
        if e1.is_empty()
            || e1 == e2
            || !e1.is_subset_of(e2)
            || !e2.is_subset_of(full)
        {
            return Err(Error::InvalidEventNesting);
        }
        let name = format!(
            "P[{}|{}]",
            event_label(space, e1),
            event_label(space, e2)
        );
        let inner: Vec<usize> = e1.indices().filter(|i| *i < space.len()).collect();
        let outer: Vec<usize> = e2.indices().filter(|i| *i < space.len()).collect();
        Ok(Score::from_fn(name, space, move |probs| {
            let denominator: f64 = outer.iter().map(|&i| probs[i]).sum();
            if denominator == 0.0 {
                return None;
            }
            let numerator: f64 = inner.iter().map(|&i| probs[i]).sum();
            Some(numerator / denominator)
        }))
    }

    /// The ranking score `R_I(P) = E_P[I*S] / E_P[I]`, defined where
    /// `E_P[I] != 0`. Values are clamped to `[min S, max S]`, the score's
    /// mathematical range, so rounding can never leak outside it.
    pub fn ranking(importance: &RandomVariable, satisfaction: &RandomVariable) -> Result<Score> {
        if !same_space(importance.space(), satisfaction.space()) {
            return Err(Error::SpaceMismatch);
        }
        if !importance.is_valid_importance() {
            return Err(Error::InvalidImportance);
        }
        let weights = importance.values().to_vec();
        let weighted: Vec<f64> = importance
            .values()
            .iter()
            .zip(satisfaction.values())
            .map(|(i, s)| i * s)
            .collect();
        let lo = satisfaction.min_value();
        let hi = satisfaction.max_value();
        let name = format!("R[{}]", importance.name());
        Ok(Score::from_fn(name, importance.space(), move |probs| {
            let denominator = dot(&weights, probs);
            if denominator == 0.0 {
                return None;
            }
            Some((dot(&weighted, probs) / denominator).clamp(lo, hi))
        }))
    }
}

/// Reweights a performance by an importance and renormalizes.
///
/// The output gives each outcome the probability of being kept by a
/// filter-and-restart experiment that keeps outcome `w` with probability
/// proportional to `I(w)`; composing the expected satisfaction with this
/// operation reproduces the ranking score `R_I`.
pub fn filter(importance: &RandomVariable, p: &Performance) -> Result<Performance> {
    if !same_space(importance.space(), p.space()) {
        return Err(Error::SpaceMismatch);
    }
    if !importance.is_valid_importance() {
        return Err(Error::InvalidImportance);
    }
    let total: f64 = importance
        .values()
        .iter()
        .zip(p.probs())
        .map(|(i, q)| i * q)
        .sum();
    if total == 0.0 {
        return Err(Error::OutOfDomain);
    }
    let probs = importance
        .values()
        .iter()
        .zip(p.probs())
        .map(|(i, q)| i * q / total)
        .collect();
    Ok(Performance::from_normalized(p.space(), probs))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn event_label(space: &SpaceRef, event: Event) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for i in event.indices() {
        if i >= space.len() {
            break;
        }
        if !first {
            out.push(',');
        }
        out.push_str(space.label(i));
        first = false;
    }
    out.push('}');
    out
}
