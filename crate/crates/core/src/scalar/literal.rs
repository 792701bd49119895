use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use super::field::{embed, FieldElement, FieldTag};
use super::mono::MonoScalar;
use crate::error::{Error, Result};
use crate::text::Cursor;

/// A scalar literal: a non-negative rational coefficient times a
/// [`MonoScalar`]. Signs are folded into the torsion part, so `-2` is stored
/// as `2 · (-1)`.
///
/// Syntax: `['-'] factor ('*' factor)*` where a factor is a rational
/// `a` or `a/b`, `zeta(N)` or `zeta(N)^k`, or `NAME` or `NAME^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarLiteral {
    coeff: BigRational,
    mono: MonoScalar,
}

impl ScalarLiteral {
    pub fn new(coeff: BigRational, mono: MonoScalar) -> Self {
        if coeff.is_zero() {
            return ScalarLiteral {
                coeff,
                mono: MonoScalar::one(),
            };
        }
        let (coeff, mono) = if coeff.is_negative() {
            (-coeff, &mono * &MonoScalar::minus_one())
        } else {
            (coeff, mono)
        };
        ScalarLiteral { coeff, mono }
    }

    pub fn from_mono(mono: MonoScalar) -> Self {
        ScalarLiteral {
            coeff: BigRational::one(),
            mono,
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn mono(&self) -> &MonoScalar {
        &self.mono
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The multiplicative part when the literal is a unit of modulus one.
    pub fn as_mono(&self) -> Option<&MonoScalar> {
        self.coeff.is_one().then_some(&self.mono)
    }

    pub fn to_field(&self, tag: FieldTag) -> Result<FieldElement> {
        if self.is_zero() {
            return Ok(FieldElement::zero(tag));
        }
        let m = embed(&self.mono, tag)?;
        Ok(&FieldElement::from_rational(tag, self.coeff.clone()) * &m)
    }

    pub fn parse_from(c: &mut Cursor<'_>) -> Result<ScalarLiteral> {
        let negate = c.eat('-');
        let mut coeff = BigRational::one();
        let mut torsion = Ratio::<i64>::zero();
        let mut free: BTreeMap<String, i64> = BTreeMap::new();
        loop {
            c.skip_ws();
            match c.peek() {
                Some(ch) if ch.is_ascii_digit() => {
                    coeff *= c.rational()?;
                }
                Some(_) if c.peek_ident() == Some("zeta") => {
                    c.expect_keyword("zeta")?;
                    c.expect('(')?;
                    let span = c.span();
                    let n = c.small_integer()?;
                    if n <= 0 {
                        return Err(Cursor::error_at(span, "zeta order must be positive"));
                    }
                    c.expect(')')?;
                    let k = if c.eat('^') { c.small_integer()? } else { 1 };
                    torsion += Ratio::new(k, n);
                }
                Some(_) if c.peek_ident().is_some() => {
                    let name = c.ident()?;
                    let k = if c.eat('^') { c.small_integer()? } else { 1 };
                    *free.entry(name).or_insert(0) += k;
                }
                _ => return Err(c.error(format!("expected scalar factor, found {}", c.describe_next()))),
            }
            if !c.eat('*') {
                break;
            }
        }
        let mut mono = MonoScalar::from_parts(torsion, free);
        if negate {
            mono = &mono * &MonoScalar::minus_one();
        }
        Ok(ScalarLiteral::new(coeff, mono))
    }
}

impl FromStr for ScalarLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        let lit = ScalarLiteral::parse_from(&mut c)?;
        c.skip_ws();
        if !c.at_end() {
            return Err(c.error(format!("trailing input {}", c.describe_next())));
        }
        Ok(lit)
    }
}

impl FromStr for MonoScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lit: ScalarLiteral = s.parse()?;
        lit.as_mono().cloned().ok_or_else(|| {
            Error::syntax(1, 1, format!("`{s}` is not a unit scalar (coefficient must be ±1)"))
        })
    }
}

impl fmt::Display for ScalarLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        if self.coeff.is_one() {
            return write!(f, "{}", self.mono);
        }
        let m = self.mono.to_string();
        let (neg, rest) = match m.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, m.as_str()),
        };
        if neg {
            write!(f, "-")?;
        }
        write!(f, "{}", self.coeff)?;
        if rest != "1" {
            write!(f, "*{rest}")?;
        }
        Ok(())
    }
}
