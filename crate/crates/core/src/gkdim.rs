use std::fmt;
use std::ops::Add;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "variant", content = "value")]
pub enum GKValue {
    Finite(u64),
    /// Only a lower bound is known.
    AtLeast(u64),
    Infinite,
}

/// A Gelfand–Kirillov dimension, flagged when it rests on the conjectural
/// classification of finite-GKdim diagonal types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GKDim {
    pub value: GKValue,
    pub conjecture_dependent: bool,
}

impl GKDim {
    pub fn finite(n: u64) -> Self {
        GKDim {
            value: GKValue::Finite(n),
            conjecture_dependent: false,
        }
    }

    pub fn at_least(n: u64) -> Self {
        GKDim {
            value: GKValue::AtLeast(n),
            conjecture_dependent: false,
        }
    }

    /// Infinite verdicts always depend on the conjecture.
    pub fn infinite() -> Self {
        GKDim {
            value: GKValue::Infinite,
            conjecture_dependent: true,
        }
    }

    pub fn flagged(mut self, conjecture_dependent: bool) -> Self {
        self.conjecture_dependent |= conjecture_dependent;
        self
    }

    pub fn is_infinite(&self) -> bool {
        self.value == GKValue::Infinite
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.value, GKValue::Finite(_))
    }

    /// Exact value, if known.
    pub fn exact(&self) -> Option<u64> {
        match self.value {
            GKValue::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// The best known lower bound; `None` for infinite.
    pub fn lower_bound(&self) -> Option<u64> {
        match self.value {
            GKValue::Finite(n) | GKValue::AtLeast(n) => Some(n),
            GKValue::Infinite => None,
        }
    }

    /// Whether `self` is known to be positive.
    pub fn is_positive(&self) -> bool {
        self.lower_bound().is_none_or(|n| n > 0)
    }

    /// `self ≤ other`, comparing lower bounds when a value is not exact.
    pub fn bounded_by(&self, other: &GKDim) -> bool {
        match (self.lower_bound(), other.lower_bound()) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        }
    }
}

impl Add for GKDim {
    type Output = GKDim;

    fn add(self, rhs: GKDim) -> GKDim {
        let value = match (self.value, rhs.value) {
            (GKValue::Infinite, _) | (_, GKValue::Infinite) => GKValue::Infinite,
            (GKValue::Finite(a), GKValue::Finite(b)) => GKValue::Finite(a + b),
            (GKValue::Finite(a) | GKValue::AtLeast(a), GKValue::Finite(b) | GKValue::AtLeast(b)) => {
                GKValue::AtLeast(a + b)
            }
        };
        GKDim {
            value,
            conjecture_dependent: self.conjecture_dependent || rhs.conjecture_dependent,
        }
    }
}

impl std::iter::Sum for GKDim {
    fn sum<I: Iterator<Item = GKDim>>(iter: I) -> GKDim {
        iter.fold(GKDim::finite(0), |a, b| a + b)
    }
}

impl fmt::Display for GKDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            GKValue::Finite(n) => write!(f, "Finite({n})")?,
            GKValue::AtLeast(n) => write!(f, "AtLeast({n})")?,
            GKValue::Infinite => write!(f, "Infinite")?,
        }
        if self.conjecture_dependent {
            write!(f, " [conjecture-dependent]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        assert_eq!(GKDim::finite(2) + GKDim::finite(3), GKDim::finite(5));
        assert_eq!(GKDim::finite(2) + GKDim::at_least(1), GKDim::at_least(3));
        assert!((GKDim::finite(2) + GKDim::infinite()).is_infinite());
        assert!((GKDim::finite(0) + GKDim::infinite()).conjecture_dependent);
        let total: GKDim = (1..=4).map(|_| GKDim::finite(2)).sum();
        assert_eq!(total, GKDim::finite(8));
    }

    #[test]
    fn bounds() {
        assert!(GKDim::finite(2).bounded_by(&GKDim::finite(2)));
        assert!(GKDim::finite(2).bounded_by(&GKDim::infinite()));
        assert!(!GKDim::infinite().bounded_by(&GKDim::finite(9)));
        assert!(GKDim::at_least(1).bounded_by(&GKDim::finite(3)));
        assert!(!GKDim::finite(0).is_positive());
        assert!(GKDim::at_least(1).is_positive());
    }
}
