use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::mono::MonoScalar;
use super::poly::{cyclotomic_polynomial, QPoly};
use crate::error::{Error, Result};

/// The computable fields an operator can live over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldTag {
    Rat,
    Cyclo(u32),
    RatFunc,
}

impl FieldTag {
    /// Smallest field containing both.
    pub fn join(self, other: FieldTag) -> Option<FieldTag> {
        use FieldTag::*;
        match (self, other) {
            (Rat, x) | (x, Rat) => Some(x),
            (Cyclo(a), Cyclo(b)) => Some(Cyclo(a.lcm(&b))),
            (RatFunc, RatFunc) => Some(RatFunc),
            _ => None,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rat => write!(f, "RAT"),
            FieldTag::Cyclo(n) => write!(f, "CYCLO({n})"),
            FieldTag::RatFunc => write!(f, "RATFUNC"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let up = s.trim().to_ascii_uppercase();
        match up.as_str() {
            "RAT" | "Q" => Ok(FieldTag::Rat),
            "RATFUNC" | "Q(T)" => Ok(FieldTag::RatFunc),
            _ => {
                let inner = up
                    .strip_prefix("CYCLO(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| format!("unknown field `{s}`"))?;
                let n: u32 = inner.parse().map_err(|_| format!("bad conductor in `{s}`"))?;
                if n == 0 {
                    return Err("conductor must be positive".into());
                }
                Ok(FieldTag::Cyclo(n))
            }
        }
    }
}

static CYCLO_CACHE: LazyLock<Mutex<HashMap<u32, Arc<QPoly>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn phi_poly(n: u32) -> Arc<QPoly> {
    let mut cache = CYCLO_CACHE.lock().expect("cyclotomic cache poisoned");
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(cyclotomic_polynomial(n)))
        .clone()
}

/// Element of `Q(ζ_n)` stored as a polynomial in `ζ_n` of degree below `φ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    poly: QPoly,
}

impl Cyclotomic {
    pub fn new(n: u32, poly: QPoly) -> Self {
        let poly = poly.rem(&phi_poly(n));
        Cyclotomic { n, poly }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    /// `ζ_n^k`
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        Cyclotomic::new(n, QPoly::monomial(BigRational::one(), e))
    }

    fn lift(&self, m: u32) -> Cyclotomic {
        debug_assert_eq!(m % self.n, 0);
        if m == self.n {
            return self.clone();
        }
        Cyclotomic::new(m, self.poly.inflate((m / self.n) as usize))
    }

    fn inv(&self) -> Option<Cyclotomic> {
        if self.poly.is_zero() {
            return None;
        }
        let inv = self.poly.inv_mod(&phi_poly(self.n))?;
        Some(Cyclotomic { n: self.n, poly: inv })
    }
}

/// Element of `Q(t)`: a reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero").clone();
        let inv = lead.recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction::new(p, QPoly::one())
    }

    /// `c · t^k` for any integer `k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(QPoly::monomial(c, k as usize))
        } else {
            RationalFunction::new(
                QPoly::constant(c),
                QPoly::monomial(BigRational::one(), (-k) as usize),
            )
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }
}

/// An element of one of the supported exact fields.
///
/// Representatives are canonical inside a field, so `==` is equality of
/// field elements. Binary operations coerce `Rat` into the other operand's
/// field and join two cyclotomic fields at the lcm of their conductors;
/// mixing `RatFunc` with a proper cyclotomic field panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Cyclo(Cyclotomic),
    RatFunc(RationalFunction),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldElement {
    pub fn zero(tag: FieldTag) -> Self {
        Self::from_rational(tag, BigRational::zero())
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::from_rational(tag, BigRational::one())
    }

    pub fn from_int(tag: FieldTag, n: i64) -> Self {
        Self::from_rational(tag, rat(n))
    }

    pub fn from_rational(tag: FieldTag, r: BigRational) -> Self {
        match tag {
            FieldTag::Rat => FieldElement::Rat(r),
            FieldTag::Cyclo(n) => FieldElement::Cyclo(Cyclotomic::new(n, QPoly::constant(r))),
            FieldTag::RatFunc => FieldElement::RatFunc(RationalFunction::from_poly(QPoly::constant(r))),
        }
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            FieldElement::Rat(_) => FieldTag::Rat,
            FieldElement::Cyclo(c) => FieldTag::Cyclo(c.n),
            FieldElement::RatFunc(_) => FieldTag::RatFunc,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Cyclo(c) => c.poly.is_zero(),
            FieldElement::RatFunc(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_one(),
            FieldElement::Cyclo(c) => c.poly.is_one(),
            FieldElement::RatFunc(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    /// Re-express in a larger field; fails if `tag` does not contain `self`.
    pub fn coerce(&self, tag: FieldTag) -> Result<FieldElement> {
        let bad = || Error::IncompatibleField {
            scalar: self.to_string(),
            field: tag.to_string(),
            reason: "field does not contain the element".into(),
        };
        match (self, tag) {
            (FieldElement::Rat(r), _) => Ok(Self::from_rational(tag, r.clone())),
            (FieldElement::Cyclo(c), FieldTag::Cyclo(m)) if m % c.n == 0 => Ok(FieldElement::Cyclo(c.lift(m))),
            (FieldElement::Cyclo(c), _) => match c.poly.degree() {
                None => Ok(Self::zero(tag)),
                Some(0) => Ok(Self::from_rational(tag, c.poly.coeff(0))),
                _ => Err(bad()),
            },
            (FieldElement::RatFunc(f), FieldTag::RatFunc) => Ok(FieldElement::RatFunc(f.clone())),
            (FieldElement::RatFunc(f), _) => {
                if f.den.is_one() && f.num.degree().unwrap_or(0) == 0 {
                    Ok(Self::from_rational(tag, f.num.coeff(0)))
                } else {
                    Err(bad())
                }
            }
        }
    }

    fn unify(a: &FieldElement, b: &FieldElement) -> (FieldElement, FieldElement) {
        if a.tag() == b.tag() {
            return (a.clone(), b.clone());
        }
        let tag = a
            .tag()
            .join(b.tag())
            .unwrap_or_else(|| panic!("cannot combine elements of {} and {}", a.tag(), b.tag()));
        (
            a.coerce(tag).expect("join contains operand"),
            b.coerce(tag).expect("join contains operand"),
        )
    }

    pub fn inv(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rat(r) => (!r.is_zero()).then(|| FieldElement::Rat(r.recip())),
            FieldElement::Cyclo(c) => c.inv().map(FieldElement::Cyclo),
            FieldElement::RatFunc(f) => {
                (!f.num.is_zero()).then(|| FieldElement::RatFunc(RationalFunction::new(f.den.clone(), f.num.clone())))
            }
        }
    }

    pub fn checked_div(&self, other: &FieldElement) -> Option<FieldElement> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, k: i64) -> Option<FieldElement> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one(self.tag());
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = FieldElement::unify(self, rhs);
        match (a, b) {
            (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x + y),
            (FieldElement::Cyclo(x), FieldElement::Cyclo(y)) => FieldElement::Cyclo(Cyclotomic {
                n: x.n,
                poly: x.poly.add(&y.poly),
            }),
            (FieldElement::RatFunc(x), FieldElement::RatFunc(y)) => FieldElement::RatFunc(RationalFunction::new(
                x.num.mul(&y.den).add(&y.num.mul(&x.den)),
                x.den.mul(&y.den),
            )),
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rat(x) => FieldElement::Rat(-x),
            FieldElement::Cyclo(x) => FieldElement::Cyclo(Cyclotomic {
                n: x.n,
                poly: x.poly.neg(),
            }),
            FieldElement::RatFunc(x) => FieldElement::RatFunc(RationalFunction {
                num: x.num.neg(),
                den: x.den.clone(),
            }),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = FieldElement::unify(self, rhs);
        match (a, b) {
            (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x * y),
            (FieldElement::Cyclo(x), FieldElement::Cyclo(y)) => {
                FieldElement::Cyclo(Cyclotomic::new(x.n, x.poly.mul(&y.poly)))
            }
            (FieldElement::RatFunc(x), FieldElement::RatFunc(y)) => {
                FieldElement::RatFunc(RationalFunction::new(x.num.mul(&y.num), x.den.mul(&y.den)))
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Cyclo(c) => {
                let var = format!("z{}", c.n);
                c.poly.fmt_in(&var, f)
            }
            FieldElement::RatFunc(r) => {
                if r.den.is_one() {
                    r.num.fmt_in("t", f)
                } else {
                    write!(f, "(")?;
                    r.num.fmt_in("t", f)?;
                    write!(f, ")/(")?;
                    r.den.fmt_in("t", f)?;
                    write!(f, ")")
                }
            }
        }
    }
}

/// Embed a multiplicative scalar into a field.
///
/// `Rat` accepts `±1`; `Cyclo(n)` accepts roots of unity whose order divides
/// `n`, or `2n` when `n` is odd; `RatFunc` accepts `±x^k` for a single indeterminate `x`, sent to `±t^k`.
pub fn embed(s: &MonoScalar, tag: FieldTag) -> Result<FieldElement> {
    let fail = |reason: &str| Error::IncompatibleField {
        scalar: s.to_string(),
        field: tag.to_string(),
        reason: reason.to_string(),
    };
    let sign = if s.torsion().is_zero() {
        Some(1)
    } else if *s.torsion().denom() == 2 {
        Some(-1)
    } else {
        None
    };
    match tag {
        FieldTag::Rat => {
            if !s.free().is_empty() {
                return Err(fail("indeterminates need RATFUNC"));
            }
            let sign = sign.ok_or_else(|| fail("only ±1 lie in Q"))?;
            Ok(FieldElement::Rat(rat(sign)))
        }
        FieldTag::Cyclo(n) => {
            if !s.free().is_empty() {
                return Err(fail("indeterminates need RATFUNC"));
            }
            let t = s.torsion();
            let (a, b, n) = (*t.numer(), *t.denom(), n as i64);
            if n % b == 0 {
                return Ok(FieldElement::Cyclo(Cyclotomic::zeta_pow(n as u32, a * (n / b))));
            }
            if n % 2 == 1 && (2 * n) % b == 0 {
                // ζ_2n = -ζ_n^((n+1)/2) for odd n
                let e = a * (2 * n / b);
                let z = FieldElement::Cyclo(Cyclotomic::zeta_pow(n as u32, e * (n + 1) / 2));
                return Ok(if e.rem_euclid(2) == 1 { -&z } else { z });
            }
            Err(fail("order does not divide the conductor"))
        }
        FieldTag::RatFunc => {
            if s.free().len() > 1 {
                return Err(fail("RATFUNC has a single indeterminate"));
            }
            let sign = sign.ok_or_else(|| fail("torsion must be ±1 in RATFUNC"))?;
            let k = s.free().values().next().copied().unwrap_or(0);
            Ok(FieldElement::RatFunc(RationalFunction::monomial(rat(sign), k)))
        }
    }
}

/// Convenience for tests and fixtures: `p/q` as an element of `tag`.
pub fn ratio(tag: FieldTag, p: i64, q: i64) -> FieldElement {
    FieldElement::from_rational(tag, BigRational::new(BigInt::from(p), BigInt::from(q)))
}

pub(crate) fn is_positive_integer(r: &BigRational) -> bool {
    r.is_integer() && r.is_positive()
}
