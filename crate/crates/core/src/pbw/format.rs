//! Text format for PBW presentations.
//!
//! ```text
//! [generators] s1 s2
//! [heights]    s1 = 2
//!              s2 = inf
//! [straighten s1 s2]
//! lambda = q
//! 2*zeta(3) : 1      # coefficient : exponents of s1, s2, …
//! [power s1]
//! ```
//!
//! A `[power]` section without terms states `s^h = 0`. Each term sits on one
//! line.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{DegreeVector, Height, PBWPresentation, Straightening, Term};
use crate::error::{Error, Result};
use crate::scalar::ScalarLiteral;
use crate::text::{Cursor, Span};

struct RawTerm {
    span: Span,
    coeff: ScalarLiteral,
    exps: Vec<u64>,
}

#[derive(Default)]
struct Raw {
    generators: Option<Vec<(Span, String)>>,
    heights: Option<Vec<(Span, String, Height)>>,
    straighten: Vec<(Span, String, String, ScalarLiteral, Vec<RawTerm>)>,
    powers: Vec<(Span, String, Vec<RawTerm>)>,
}

fn at_section_end(c: &Cursor<'_>) -> bool {
    matches!(c.peek_char_after_ws(), None | Some('['))
}

fn terms(c: &mut Cursor<'_>) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    while !at_section_end(c) {
        c.skip_ws();
        let span = c.span();
        let coeff = ScalarLiteral::parse_from(c)?;
        c.expect(':')?;
        let mut exps = Vec::new();
        loop {
            c.skip_inline_ws();
            match c.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let s = c.span();
                    let e = c.unsigned()?;
                    exps.push(u64::try_from(e).map_err(|_| Cursor::error_at(s, "exponent out of range"))?);
                }
                None | Some('\n') => break,
                Some(_) => return Err(c.error(format!("expected exponent, found {}", c.describe_next()))),
            }
        }
        out.push(RawTerm { span, coeff, exps });
    }
    Ok(out)
}

fn parse_raw(src: &str) -> Result<Raw> {
    let mut c = Cursor::new(src);
    let mut raw = Raw::default();
    loop {
        c.skip_ws();
        if c.at_end() {
            return Ok(raw);
        }
        let span = c.span();
        c.expect('[')?;
        let kind = c.ident()?;
        match kind.as_str() {
            "generators" => {
                c.expect(']')?;
                let mut gens = Vec::new();
                while !at_section_end(&c) {
                    c.skip_ws();
                    gens.push((c.span(), c.ident()?));
                }
                if raw.generators.replace(gens).is_some() {
                    return Err(Cursor::error_at(span, "duplicate [generators] section"));
                }
            }
            "heights" => {
                c.expect(']')?;
                let mut hs = Vec::new();
                while !at_section_end(&c) {
                    c.skip_ws();
                    let s = c.span();
                    let g = c.ident()?;
                    c.expect('=')?;
                    let h = if c.eat_keyword("inf") {
                        Height::Infinite
                    } else {
                        let hs = c.span();
                        let n = c.unsigned()?;
                        Height::Finite(u64::try_from(n).map_err(|_| Cursor::error_at(hs, "height out of range"))?)
                    };
                    hs.push((s, g, h));
                }
                if raw.heights.replace(hs).is_some() {
                    return Err(Cursor::error_at(span, "duplicate [heights] section"));
                }
            }
            "straighten" => {
                let a = c.ident()?;
                let b = c.ident()?;
                c.expect(']')?;
                c.expect_keyword("lambda")?;
                c.expect('=')?;
                let lambda = ScalarLiteral::parse_from(&mut c)?;
                let ts = terms(&mut c)?;
                raw.straighten.push((span, a, b, lambda, ts));
            }
            "power" => {
                let a = c.ident()?;
                c.expect(']')?;
                let ts = terms(&mut c)?;
                raw.powers.push((span, a, ts));
            }
            other => return Err(Cursor::error_at(span, format!("unknown section `[{other}]`"))),
        }
    }
}

fn to_terms(p: &PBWPresentation, raw: Vec<RawTerm>) -> Result<Vec<Term>> {
    raw.into_iter()
        .map(|t| {
            if t.exps.len() > p.len() {
                return Err(Cursor::error_at(
                    t.span,
                    format!("{} exponents for {} generators", t.exps.len(), p.len()),
                ));
            }
            Ok(Term {
                coeff: t.coeff,
                degree: DegreeVector::new(t.exps),
            })
        })
        .collect()
}

impl FromStr for PBWPresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_raw(s)?;
        let gens = raw
            .generators
            .ok_or_else(|| Error::MissingData("[generators] section".into()))?;
        for (k, (span, g)) in gens.iter().enumerate() {
            if gens[..k].iter().any(|(_, h)| h == g) {
                return Err(Cursor::error_at(*span, format!("duplicate generator `{g}`")));
            }
        }
        let mut p = PBWPresentation::new(gens.into_iter().map(|(_, g)| g).collect())?;
        let lookup = |p: &PBWPresentation, span: Span, g: &str| {
            p.index_of(g)
                .ok_or_else(|| Cursor::error_at(span, format!("unknown generator `{g}`")))
        };
        let mut seen = BTreeMap::new();
        for (span, g, h) in raw.heights.unwrap_or_default() {
            let i = lookup(&p, span, &g)?;
            if seen.insert(i, ()).is_some() {
                return Err(Cursor::error_at(span, format!("second height for `{g}`")));
            }
            p.set_height(i, h)?;
        }
        if let Some(g) = (0..p.len()).find(|i| !seen.contains_key(i)) {
            return Err(Error::MissingData(format!("height of {}", p.generators[g])));
        }
        for (span, a, b, lambda, ts) in raw.straighten {
            let (i, j) = (lookup(&p, span, &a)?, lookup(&p, span, &b)?);
            if p.straightening(i, j).is_some() {
                return Err(Cursor::error_at(span, format!("second [straighten {a} {b}] section")));
            }
            let terms = to_terms(&p, ts)?;
            p.set_straightening(i, j, Straightening { lambda, terms })?;
        }
        for (span, a, ts) in raw.powers {
            let i = lookup(&p, span, &a)?;
            if p.power(i).is_some() {
                return Err(Cursor::error_at(span, format!("second [power {a}] section")));
            }
            let terms = to_terms(&p, ts)?;
            p.set_power(i, terms)?;
        }
        Ok(p)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    for t in terms {
        let e: Vec<String> = t.degree.entries().iter().map(u64::to_string).collect();
        writeln!(f, "{} : {}", t.coeff, e.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for PBWPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[generators]\n{}", self.generators.join(" "))?;
        writeln!(f, "\n[heights]")?;
        for (g, h) in self.generators.iter().zip(&self.heights) {
            writeln!(f, "{g} = {h}")?;
        }
        for (&(i, j), s) in &self.straighten {
            writeln!(f, "\n[straighten {} {}]\nlambda = {}", self.generators[i], self.generators[j], s.lambda)?;
            write_terms(f, &s.terms)?;
        }
        for (&i, terms) in &self.powers {
            writeln!(f, "\n[power {}]", self.generators[i])?;
            write_terms(f, terms)?;
        }
        Ok(())
    }
}
