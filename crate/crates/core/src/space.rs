//! Finite sample spaces, events over them, and real-valued random variables.
//!
//! A [`SampleSpace`] is an ordered list of distinct outcome labels. Events are
//! subsets of outcomes, kept as bitmasks so that event arithmetic stays exact;
//! this caps spaces at 64 labels, far above anything the audit needs.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on the number of outcomes, so events fit in a `u64` bitmask.
pub const MAX_LABELS: usize = 64;

/// A finite set of named outcomes. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpace {
    labels: Vec<String>,
}

/// Shared handle to a sample space. Everything defined on a space keeps one.
pub type SpaceRef = Arc<SampleSpace>;

impl SampleSpace {
    pub fn new<I, S>(labels: I) -> Result<SpaceRef>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_LABELS {
            return Err(Error::SpaceSize {
                got: labels.len(),
                max: MAX_LABELS,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(SampleSpace { labels }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one label by construction
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Event holding the named outcomes.
    pub fn event(&self, labels: &[&str]) -> Result<Event> {
        let mut bits = 0u64;
        for label in labels {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel((*label).to_string()))?;
            bits |= 1 << i;
        }
        Ok(Event { bits })
    }

    /// Event holding the outcomes at the given indices.
    pub fn event_of_indices(&self, indices: &[usize]) -> Result<Event> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= self.len() {
                return Err(Error::LengthMismatch {
                    expected: self.len(),
                    got: i + 1,
                });
            }
            bits |= 1 << i;
        }
        Ok(Event { bits })
    }

    /// The certain event, containing every outcome.
    pub fn full_event(&self) -> Event {
        Event {
            bits: full_mask(self.len()),
        }
    }
}

pub(crate) fn full_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

pub(crate) fn same_space(a: &SpaceRef, b: &SpaceRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A subset of a sample space's outcomes, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    bits: u64,
}

impl Event {
    pub const EMPTY: Event = Event { bits: 0 };

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < MAX_LABELS && self.bits & (1 << index) != 0
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn union(&self, other: Event) -> Event {
        Event {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: Event) -> Event {
        Event {
            bits: self.bits & other.bits,
        }
    }

    pub fn is_subset_of(&self, other: Event) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_LABELS).filter(move |i| self.contains(*i))
    }
}

/// A real-valued assignment on the outcomes of a sample space.
///
/// Random variables carry a short name so that scores built from them can
/// describe themselves (for example `E[S]` or `R[(0,0.5,0.5,1)]`).
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    space: SpaceRef,
    values: Vec<f64>,
    name: String,
}

impl RandomVariable {
    pub fn new(space: &SpaceRef, values: Vec<f64>) -> Result<Self> {
        let name = format_values(&values);
        Self::named(space, name, values)
    }

    pub fn named(space: &SpaceRef, name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(RandomVariable {
            space: Arc::clone(space),
            values,
            name: name.into(),
        })
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Smallest value taken over the sample space.
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest value taken over the sample space.
    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Non-negative and not identically zero: usable as an importance.
    pub fn is_valid_importance(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0) && self.values.iter().any(|&v| v > 0.0)
    }

    /// The two distinct values taken, as `(low, high)`, if there are exactly two.
    pub fn two_levels(&self) -> Option<(f64, f64)> {
        let mut lo = self.values[0];
        let mut hi = self.values[0];
        for &v in &self.values {
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        if lo == hi {
            return None;
        }
        if self.values.iter().all(|&v| v == lo || v == hi) {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Event on which the variable takes the given value exactly.
    pub fn level_event(&self, value: f64) -> Event {
        let mut bits = 0u64;
        for (i, &v) in self.values.iter().enumerate() {
            if v == value {
                bits |= 1 << i;
            }
        }
        Event { bits }
    }
}

fn format_values(values: &[f64]) -> String {
    let mut out = String::from("(");
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format_short(*v));
    }
    out.push(')');
    out
}

pub(crate) fn format_short(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

impl fmt::Display for RandomVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
