//! Performances: probability measures on a finite sample space.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{same_space, Event, SpaceRef};

/// How far an input vector's sum may stray from 1 before construction fails.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Shared absolute tolerance for equality checks throughout the crate.
pub const EQ_TOLERANCE: f64 = 1e-12;

/// A probability measure over a finite sample space.
///
/// Entries are non-negative and sum to one. Inputs whose sum deviates from 1
/// by at most `1e-9` are renormalized, so that accumulated rounding from grid
/// generation is absorbed without masking genuinely wrong vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Performance {
    space: SpaceRef,
    probs: Vec<f64>,
}

impl Performance {
    pub fn new(space: &SpaceRef, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                got: probs.len(),
            });
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteValue);
            }
            if value < 0.0 {
                return Err(Error::NegativeProbability { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized(sum));
        }
        let mut probs = probs;
        if sum != 1.0 {
            for p in &mut probs {
                *p /= sum;
            }
        }
        Ok(Performance {
            space: Arc::clone(space),
            probs,
        })
    }

    /// Builds from entries already known to be a valid distribution.
    pub(crate) fn from_normalized(space: &SpaceRef, probs: Vec<f64>) -> Self {
        debug_assert!(probs.iter().all(|&p| p >= 0.0));
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        Performance {
            space: Arc::clone(space),
            probs,
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob_at(&self, index: usize) -> f64 {
        self.probs[index]
    }

    /// Probability of an event: the sum of its members' entries.
    pub fn prob(&self, event: Event) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(i, _)| event.contains(*i))
            .map(|(_, p)| p)
            .sum()
    }

    /// Bit-for-bit equality of the probability vectors.
    ///
    /// Score-induced orderings need this stricter notion: a float-tolerant
    /// equality would break the derived relations on out-of-domain pairs.
    pub fn bitwise_eq(&self, other: &Performance) -> bool {
        same_space(&self.space, &other.space)
            && self
                .probs
                .iter()
                .zip(&other.probs)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    /// Convex combination `weight * self + (1 - weight) * other`.
    ///
    /// Mixtures are not a formal device: an entity that flips a biased coin
    /// and then behaves like one of two underlying entities achieves exactly
    /// this performance, and the same interpolation arises with a fixed
    /// entity evaluated on a randomized blend of two sample sources. That is
    /// what makes convex combinations the natural notion of "achievable for
    /// sure" that the convexity audits quantify over.
    pub fn mix(&self, other: &Performance, weight: f64) -> Result<Performance> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if !(0.0..=1.0).contains(&weight) || !weight.is_finite() {
            return Err(Error::InvalidWeight(weight));
        }
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| weight * a + (1.0 - weight) * b)
            .collect();
        Ok(Performance::from_normalized(&self.space, probs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SampleSpace;

    fn four() -> SpaceRef {
        SampleSpace::new(["tn", "fp", "fn", "tp"]).unwrap()
    }

    #[test]
    fn construction_validates_and_normalizes() {
        let space = four();
        let p = Performance::new(&space, vec![0.25; 4]).unwrap();
        assert_eq!(p.probs(), &[0.25; 4]);

        // A sub-tolerance deviation is silently renormalized.
        let q = Performance::new(&space, vec![0.25, 0.25, 0.25, 0.25 + 3e-10]).unwrap();
        assert!((q.probs().iter().sum::<f64>() - 1.0).abs() <= EQ_TOLERANCE);

        assert!(matches!(
            Performance::new(&space, vec![0.5, 0.5, 0.1, 0.0]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            Performance::new(&space, vec![-0.1, 0.5, 0.3, 0.3]),
            Err(Error::NegativeProbability { .. })
        ));
        assert!(Performance::new(&space, vec![0.5, 0.5]).is_err());
        assert!(Performance::new(&space, vec![f64::NAN, 0.5, 0.25, 0.25]).is_err());
    }

    #[test]
    fn event_probability_sums_members() {
        let space = four();
        let p = Performance::new(&space, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let e = space.event(&["fp", "tp"]).unwrap();
        assert!((p.prob(e) - 0.6).abs() <= EQ_TOLERANCE);
        assert_eq!(p.prob(Event::EMPTY), 0.0);
        assert!((p.prob(space.full_event()) - 1.0).abs() <= EQ_TOLERANCE);
    }

    #[test]
    fn bitwise_equality_is_exact() {
        let space = four();
        let p = Performance::new(&space, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let q = Performance::new(&space, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(p.bitwise_eq(&q));
        let r = Performance::new(&space, vec![0.1 + 1e-16, 0.2, 0.3, 0.4 - 1e-16]).unwrap();
        assert!(!p.bitwise_eq(&r));
    }

    #[test]
    fn mixing_stays_on_the_simplex() {
        let space = four();
        let p = Performance::new(&space, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let q = Performance::new(&space, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let m = p.mix(&q, 0.25).unwrap();
        assert_eq!(m.probs(), &[0.25, 0.0, 0.0, 0.75]);
        assert!(p.mix(&q, 1.5).is_err());
    }
}
