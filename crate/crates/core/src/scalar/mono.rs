use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// A root of unity times a Laurent monomial in named indeterminates.
///
/// The torsion part `a/b` stands for `exp(2πi·a/b)` and is kept reduced in
/// `[0, 1)`. Indeterminates are, by construction of the model, never roots of
/// unity, so any scalar with a non-empty free part lies outside the group of
/// all roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoScalar {
    torsion: Ratio<i64>,
    free: BTreeMap<String, i64>,
}

fn reduce_torsion(t: Ratio<i64>) -> Ratio<i64> {
    let r = t - t.floor();
    debug_assert!(r >= Ratio::zero() && r < Ratio::one());
    r
}

impl MonoScalar {
    pub fn one() -> Self {
        MonoScalar {
            torsion: Ratio::zero(),
            free: BTreeMap::new(),
        }
    }

    pub fn minus_one() -> Self {
        Self::root_of_unity(2, 1)
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        MonoScalar {
            torsion: reduce_torsion(Ratio::new(k, n as i64)),
            free: BTreeMap::new(),
        }
    }

    pub fn indeterminate(name: &str) -> Self {
        Self::indeterminate_pow(name, 1)
    }

    pub fn indeterminate_pow(name: &str, k: i64) -> Self {
        let mut free = BTreeMap::new();
        if k != 0 {
            free.insert(name.to_string(), k);
        }
        MonoScalar {
            torsion: Ratio::zero(),
            free,
        }
    }

    pub fn from_parts(torsion: Ratio<i64>, free: BTreeMap<String, i64>) -> Self {
        MonoScalar {
            torsion: reduce_torsion(torsion),
            free: free.into_iter().filter(|(_, e)| *e != 0).collect(),
        }
    }

    pub fn torsion(&self) -> Ratio<i64> {
        self.torsion
    }

    pub fn free(&self) -> &BTreeMap<String, i64> {
        &self.free
    }

    pub fn is_one(&self) -> bool {
        self.torsion.is_zero() && self.free.is_empty()
    }

    pub fn is_minus_one(&self) -> bool {
        self.free.is_empty() && self.torsion == Ratio::new(1, 2)
    }

    /// Membership in the group of all roots of unity.
    pub fn is_root_of_unity(&self) -> bool {
        self.free.is_empty()
    }

    /// The multiplicative order `N` when the scalar is a primitive `N`-th root
    /// of unity, and `None` when it is not a root of unity at all.
    pub fn order(&self) -> Option<u64> {
        if self.free.is_empty() {
            Some(*self.torsion.denom() as u64)
        } else {
            None
        }
    }

    pub fn is_primitive_root(&self, n: u64) -> bool {
        self.order() == Some(n)
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> Self {
        MonoScalar {
            torsion: reduce_torsion(self.torsion * Ratio::from_integer(k)),
            free: self
                .free
                .iter()
                .filter_map(|(n, e)| {
                    let e = e * k;
                    (e != 0).then(|| (n.clone(), e))
                })
                .collect(),
        }
    }

    /// Square roots of the torsion part are not unique; this returns `s` with
    /// `s^2 == self` when one exists in the symbolic model, choosing the
    /// torsion root in `[0, 1/2)`.
    pub fn sqrt(&self) -> Option<Self> {
        let mut free = BTreeMap::new();
        for (n, e) in &self.free {
            if e.is_odd() {
                return None;
            }
            free.insert(n.clone(), e / 2);
        }
        Some(MonoScalar {
            torsion: self.torsion / Ratio::from_integer(2),
            free,
        })
    }
}

impl Mul for &MonoScalar {
    type Output = MonoScalar;

    fn mul(self, rhs: &MonoScalar) -> MonoScalar {
        let mut free = self.free.clone();
        for (n, e) in &rhs.free {
            let entry = free.entry(n.clone()).or_insert(0);
            *entry += e;
        }
        free.retain(|_, e| *e != 0);
        MonoScalar {
            torsion: reduce_torsion(self.torsion + rhs.torsion),
            free,
        }
    }
}

impl Mul for MonoScalar {
    type Output = MonoScalar;

    fn mul(self, rhs: MonoScalar) -> MonoScalar {
        &self * &rhs
    }
}

impl fmt::Display for MonoScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut negate = false;
        if !self.torsion.is_zero() {
            let (a, b) = (*self.torsion.numer(), *self.torsion.denom());
            if b == 2 {
                negate = true;
            } else if a == 1 {
                factors.push(format!("zeta({b})"));
            } else {
                factors.push(format!("zeta({b})^{a}"));
            }
        }
        for (n, e) in &self.free {
            if *e == 1 {
                factors.push(n.clone());
            } else {
                factors.push(format!("{n}^{e}"));
            }
        }
        if negate {
            write!(f, "-")?;
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert_eq!(MonoScalar::root_of_unity(3, 1).order(), Some(3));
        assert_eq!(MonoScalar::one().order(), Some(1));
        assert_eq!(MonoScalar::indeterminate_pow("q", 2).order(), None);
    }

    #[test]
    fn group_operations() {
        let z = MonoScalar::root_of_unity(3, 1);
        let z2 = MonoScalar::root_of_unity(3, 2);
        assert!((&z * &z2).is_one());
        assert_eq!(MonoScalar::minus_one().inv(), MonoScalar::minus_one());
        assert_eq!(
            MonoScalar::indeterminate("q").pow(-3),
            MonoScalar::indeterminate_pow("q", -3)
        );
        assert!(MonoScalar::indeterminate("q")
            .pow(0)
            .free()
            .is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(MonoScalar::minus_one().to_string(), "-1");
        assert_eq!(MonoScalar::root_of_unity(3, 2).to_string(), "zeta(3)^2");
        let s = &MonoScalar::minus_one() * &MonoScalar::indeterminate_pow("q", -1);
        assert_eq!(s.to_string(), "-q^-1");
    }

    #[test]
    fn sqrt_roundtrip() {
        let s = MonoScalar::root_of_unity(5, 2) * MonoScalar::indeterminate_pow("q", 4);
        let r = s.sqrt().unwrap();
        assert_eq!(r.pow(2), s);
        assert!(MonoScalar::indeterminate("q").sqrt().is_none());
    }
}
