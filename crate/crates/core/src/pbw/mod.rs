//! Convex PBW presentations.
//!
//! A presentation lists ordered generators `s_1 < … < s_t`, their heights,
//! the straightening data `s_i s_j = λ_ij s_j s_i + (lower terms)` for
//! `i < j` and the expansions of `s_i^{h(s_i)}` for finite heights. Terms are
//! PBW monomials `s_1^{e_1} ⋯ s_t^{e_t}` recorded by their degree vectors,
//! which are ordered lexicographically reading from the right.
//!
//! ```
//! use nichols_gk::pbw::{check_convex, gr_gkdim, PBWPresentation};
//!
//! let p: PBWPresentation = "
//!     [generators] x y
//!     [heights] x = 2
//!               y = inf
//!     [straighten x y]
//!     lambda = q
//!     [power x]
//! "
//! .parse()
//! .unwrap();
//! assert!(check_convex(&p).unwrap().is_convex());
//! assert_eq!(gr_gkdim(&p).unwrap(), 1);
//! ```

mod format;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::scalar::ScalarLiteral;

/// A finitely supported sequence of non-negative integers, stored without
/// trailing zeros. Index 0 is the exponent of the first generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegreeVector(Vec<u64>);

impl DegreeVector {
    pub fn new(mut entries: Vec<u64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        DegreeVector(entries)
    }

    pub fn zero() -> Self {
        DegreeVector(Vec::new())
    }

    /// `δ_i` (0-based).
    pub fn unit(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        DegreeVector(v)
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Number of entries up to the last non-zero one.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, k: u64) -> Self {
        DegreeVector::new(self.0.iter().map(|e| e * k).collect())
    }

    /// The entries moved `by` places to the right.
    pub fn shift(&self, by: usize) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = vec![0; by];
        v.extend_from_slice(&self.0);
        DegreeVector(v)
    }
}

impl Ord for DegreeVector {
    /// Compares at the largest index where the entries differ.
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        (0..n)
            .rev()
            .map(|i| self.get(i).cmp(&other.get(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for DegreeVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &DegreeVector {
    type Output = DegreeVector;

    fn add(self, other: &DegreeVector) -> DegreeVector {
        let n = self.0.len().max(other.0.len());
        DegreeVector::new((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", s.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Height {
    pub fn admits(&self, e: u64) -> bool {
        match self {
            Height::Finite(h) => e < *h,
            Height::Infinite => true,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

/// `coeff · s_1^{e_1} ⋯ s_t^{e_t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: ScalarLiteral,
    pub degree: DegreeVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightening {
    pub lambda: ScalarLiteral,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWPresentation {
    generators: Vec<String>,
    heights: Vec<Height>,
    straighten: BTreeMap<(usize, usize), Straightening>,
    powers: BTreeMap<usize, Vec<Term>>,
}

impl PBWPresentation {
    /// Generators in increasing order, all of infinite height and without
    /// relations.
    pub fn new(generators: Vec<String>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if generators[..k].contains(g) {
                return Err(Error::malformed(g, "duplicate generator"));
            }
        }
        let heights = vec![Height::Infinite; generators.len()];
        Ok(PBWPresentation {
            generators,
            heights,
            straighten: BTreeMap::new(),
            powers: BTreeMap::new(),
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn heights(&self) -> &[Height] {
        &self.heights
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn straightening(&self, i: usize, j: usize) -> Option<&Straightening> {
        self.straighten.get(&(i, j))
    }

    pub fn power(&self, i: usize) -> Option<&[Term]> {
        self.powers.get(&i).map(Vec::as_slice)
    }

    pub fn set_height(&mut self, i: usize, h: Height) -> Result<()> {
        if matches!(h, Height::Finite(n) if n < 2) {
            return Err(Error::malformed(&self.generators[i], "heights are at least 2"));
        }
        let old = std::mem::replace(&mut self.heights[i], h);
        let terms = self.all_terms();
        let checked = self.check_terms(&format!("height of {}", self.generators[i]), &terms);
        if checked.is_err() {
            self.heights[i] = old;
        }
        checked
    }

    pub fn set_straightening(&mut self, i: usize, j: usize, s: Straightening) -> Result<()> {
        let path = format!("straighten {} {}", self.name(i), self.name(j));
        if i >= j || j >= self.len() {
            return Err(Error::malformed(path, "straightening pairs are ordered s_i < s_j"));
        }
        self.check_terms(&path, &s.terms)?;
        self.straighten.insert((i, j), s);
        Ok(())
    }

    pub fn set_power(&mut self, i: usize, terms: Vec<Term>) -> Result<()> {
        let path = format!("power {}", self.name(i));
        if self.heights[i] == Height::Infinite {
            return Err(Error::malformed(path, "power data for a generator of infinite height"));
        }
        self.check_terms(&path, &terms)?;
        self.powers.insert(i, terms);
        Ok(())
    }

    fn name(&self, i: usize) -> &str {
        self.generators.get(i).map_or("?", String::as_str)
    }

    fn all_terms(&self) -> Vec<Term> {
        self.straighten
            .values()
            .flat_map(|s| s.terms.iter())
            .chain(self.powers.values().flatten())
            .cloned()
            .collect()
    }

    /// Every term must be a member of the PBW set.
    fn check_terms<'t>(&self, path: &str, terms: impl IntoIterator<Item = &'t Term>) -> Result<()> {
        for t in terms {
            if t.coeff.is_zero() {
                return Err(Error::malformed(path, "zero coefficient"));
            }
            if t.degree.support_len() > self.len() {
                return Err(Error::malformed(path, format!("term {} has too many exponents", t.degree)));
            }
            for (k, &e) in t.degree.entries().iter().enumerate() {
                if !self.heights[k].admits(e) {
                    return Err(Error::malformed(
                        path,
                        format!("exponent {e} of {} is not below its height {}", self.name(k), self.heights[k]),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Straighten(usize, usize),
    Power(usize),
}

/// A lower term whose degree is not below the leading degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexViolation {
    pub relation: Relation,
    pub term: usize,
    pub degree: DegreeVector,
    pub bound: DegreeVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConvexReport {
    pub violations: Vec<ConvexViolation>,
}

impl ConvexReport {
    pub fn is_convex(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that straightening terms lie below `δ_i + δ_j` and power terms
/// below `h(s_i) δ_i`.
pub fn check_convex(p: &PBWPresentation) -> Result<ConvexReport> {
    let t = p.len();
    let mut violations = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            let s = p
                .straightening(i, j)
                .ok_or_else(|| Error::MissingData(format!("straightening {} {}", p.name(i), p.name(j))))?;
            let bound = &DegreeVector::unit(i) + &DegreeVector::unit(j);
            collect(&mut violations, Relation::Straighten(i, j), &s.terms, &bound);
        }
    }
    for i in 0..t {
        if let Height::Finite(h) = p.heights[i] {
            let terms = p
                .power(i)
                .ok_or_else(|| Error::MissingData(format!("power {}", p.name(i))))?;
            collect(&mut violations, Relation::Power(i), terms, &DegreeVector::unit(i).scale(h));
        }
    }
    Ok(ConvexReport { violations })
}

fn collect(out: &mut Vec<ConvexViolation>, relation: Relation, terms: &[Term], bound: &DegreeVector) {
    for (k, term) in terms.iter().enumerate() {
        if term.degree >= *bound {
            out.push(ConvexViolation {
                relation: relation.clone(),
                term: k,
                degree: term.degree.clone(),
                bound: bound.clone(),
            });
        }
    }
}

/// GKdim of the associated graded algebra: the number of generators of
/// infinite height.
pub fn gr_gkdim(p: &PBWPresentation) -> Result<u64> {
    let report = check_convex(p)?;
    if !report.is_convex() {
        return Err(Error::NotConvex(report.violations.len()));
    }
    if let Some(&(i, j)) = p.straighten.iter().find(|(_, s)| s.lambda.is_zero()).map(|(k, _)| k) {
        return Err(Error::ZeroLambda(i + 1, j + 1));
    }
    Ok(p.heights.iter().filter(|h| **h == Height::Infinite).count() as u64)
}

/// The presentation on `S ∪ S′`, with `S` first, where `s t = λ_{s,t} t s`
/// for `s ∈ S`, `t ∈ S′`. `cross(i, j)` is `λ` for the `i`-th generator of
/// `S` and the `j`-th of `S′`.
pub fn compose(
    p: &PBWPresentation,
    q: &PBWPresentation,
    cross: impl Fn(usize, usize) -> ScalarLiteral,
) -> Result<PBWPresentation> {
    for side in [p, q] {
        let report = check_convex(side)?;
        if !report.is_convex() {
            return Err(Error::NotConvex(report.violations.len()));
        }
    }
    let shift = p.len();
    let mut out = PBWPresentation::new(p.generators.iter().chain(&q.generators).cloned().collect())?;
    out.heights = p.heights.iter().chain(&q.heights).copied().collect();
    out.straighten = p.straighten.clone();
    out.powers = p.powers.clone();
    let moved = |terms: &[Term]| -> Vec<Term> {
        terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                degree: t.degree.shift(shift),
            })
            .collect()
    };
    for (&(i, j), s) in &q.straighten {
        out.straighten.insert(
            (i + shift, j + shift),
            Straightening {
                lambda: s.lambda.clone(),
                terms: moved(&s.terms),
            },
        );
    }
    for (&i, terms) in &q.powers {
        out.powers.insert(i + shift, moved(terms));
    }
    for i in 0..p.len() {
        for j in 0..q.len() {
            let lambda = cross(i, j);
            if lambda.is_zero() {
                return Err(Error::ZeroLambda(i + 1, j + shift + 1));
            }
            out.straighten.insert((i, j + shift), Straightening { lambda, terms: vec![] });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u64]) -> DegreeVector {
        DegreeVector::new(v.to_vec())
    }

    fn lit(s: &str) -> ScalarLiteral {
        s.parse().unwrap()
    }

    fn pres(s: &str) -> PBWPresentation {
        s.parse().unwrap()
    }

    #[test]
    fn right_to_left_order() {
        assert!(dv(&[1]) < dv(&[0, 1]));
        assert!(dv(&[5]) > dv(&[3]));
        assert_eq!(dv(&[2, 1]).cmp(&dv(&[2, 1, 0])), Ordering::Equal);
        assert!(dv(&[9, 9]) < dv(&[0, 0, 1]));
        assert!(dv(&[0, 0, 1]) > &dv(&[1]) + &dv(&[0, 1]));
    }

    #[test]
    fn order_is_total_and_additive() {
        let all: Vec<DegreeVector> = (0..27).map(|n| dv(&[n % 3, (n / 3) % 3, n / 9])).collect();
        for a in &all {
            for b in &all {
                assert_eq!(a.cmp(b), b.cmp(a).reverse());
                assert_eq!(a.cmp(b) == Ordering::Equal, a == b);
                for c in &all {
                    if a < b && b < c {
                        assert!(a < c);
                    }
                    if a < b {
                        assert!((a + c) < (b + c));
                    }
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(DegreeVector::unit(i) < DegreeVector::unit(j), i < j);
            }
        }
    }

    #[test]
    fn quantum_plane_is_convex() {
        let p = pres("[generators] x y\n[heights]\nx = inf\ny = inf\n[straighten x y]\nlambda = q\n");
        assert!(check_convex(&p).unwrap().is_convex());
        assert_eq!(gr_gkdim(&p).unwrap(), 2);
    }

    #[test]
    fn canonical_violations() {
        let p = pres(
            "[generators] s1 s2 s3
             [heights] s1 = inf
                       s2 = inf
                       s3 = inf
             [straighten s1 s2] lambda = 1
             1 : 0 0 1
             [straighten s1 s3] lambda = 1
             [straighten s2 s3] lambda = 1",
        );
        let r = check_convex(&p).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].relation, Relation::Straighten(0, 1));
        assert_eq!(gr_gkdim(&p), Err(Error::NotConvex(1)));

        let p = pres(
            "[generators] s1 s2
             [heights] s1 = 2
                       s2 = inf
             [straighten s1 s2] lambda = -1
             [power s1]
             1 : 0 1",
        );
        let r = check_convex(&p).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].relation, Relation::Power(0));
        assert_eq!(r.violations[0].bound, dv(&[2]));
    }

    #[test]
    fn lower_terms_below_the_bound_are_fine() {
        let p = pres(
            "[generators] a b c
             [heights] a = 3
                       b = inf
                       c = 2
             [straighten a b] lambda = zeta(3)
             2 : 2
             -1/2*q : 1
             [straighten a c] lambda = -1
             1 : 0 1
             [straighten b c] lambda = 1
             [power a]
             [power c]
             1 : 2 1",
        );
        assert!(check_convex(&p).unwrap().is_convex());
        assert_eq!(gr_gkdim(&p).unwrap(), 1);
    }

    #[test]
    fn missing_data_and_zero_lambda() {
        let p = pres("[generators] x y\n[heights]\nx = inf\ny = inf\n");
        assert_eq!(check_convex(&p), Err(Error::MissingData("straightening x y".into())));
        let p = pres("[generators] x\n[heights]\nx = 4\n");
        assert_eq!(check_convex(&p), Err(Error::MissingData("power x".into())));
        let p = pres("[generators] x y\n[heights]\nx = inf\ny = inf\n[straighten x y]\nlambda = 0\n");
        assert_eq!(gr_gkdim(&p), Err(Error::ZeroLambda(1, 2)));
    }

    #[test]
    fn heights_counts() {
        let p = pres(
            "[generators] a b c d
             [heights] a = 2
                       b = 3
                       c = inf
                       d = inf
             [straighten a b] lambda = 1
             [straighten a c] lambda = 1
             [straighten a d] lambda = 1
             [straighten b c] lambda = 1
             [straighten b d] lambda = 1
             [straighten c d] lambda = 1
             [power a]
             [power b]",
        );
        assert_eq!(gr_gkdim(&p).unwrap(), 2);
        let p = pres("[generators] x\n[heights]\nx = 2\n[power x]\n");
        assert_eq!(gr_gkdim(&p).unwrap(), 0);
        let p = pres("[generators] x\n[heights]\nx = inf\n");
        assert_eq!(gr_gkdim(&p).unwrap(), 1);
    }

    #[test]
    fn terms_must_be_pbw_monomials() {
        let bad = [
            "[generators] x\n[heights]\nx = 1\n",
            "[generators] x\n[heights]\nx = 2\n[power x]\n1 : 2\n",
            "[generators] x y\n[heights]\nx = inf\ny = inf\n[straighten x y]\nlambda = 1\n1 : 0 0 1\n",
            "[generators] x y\n[heights]\nx = inf\ny = inf\n[straighten y x]\nlambda = 1\n",
            "[generators] x\n[heights]\nx = inf\n[power x]\n",
            "[generators] x x\n",
        ];
        for s in bad {
            assert!(s.parse::<PBWPresentation>().is_err(), "{s}");
        }
    }

    #[test]
    fn composition() {
        let x = pres("[generators] x\n[heights]\nx = inf\n");
        let y = pres("[generators] y\n[heights]\ny = inf\n");
        let c = compose(&x, &y, |_, _| lit("q")).unwrap();
        assert!(check_convex(&c).unwrap().is_convex());
        assert_eq!(c.straightening(0, 1).unwrap().lambda, lit("q"));
        assert_eq!(gr_gkdim(&c).unwrap(), 2);

        let t = pres("[generators] t\n[heights]\nt = 2\n[power t]\n");
        let c = compose(&t, &y, |_, _| lit("-1")).unwrap();
        assert_eq!(gr_gkdim(&c).unwrap(), 1);
        assert!(matches!(compose(&t, &y, |_, _| lit("0")), Err(Error::ZeroLambda(1, 2))));
    }

    #[test]
    fn composition_shifts_lower_terms() {
        let p = pres(
            "[generators] a b
             [heights] a = inf
                       b = inf
             [straighten a b] lambda = q
             1 : 1",
        );
        let q = pres(
            "[generators] c d
             [heights] c = 3
                       d = inf
             [straighten c d] lambda = 1
             5 : 2
             [power c]
             1 : 1",
        );
        let c = compose(&p, &q, |i, j| lit(&format!("r^{}", i + 2 * j + 1))).unwrap();
        assert_eq!(c.straightening(2, 3).unwrap().terms[0].degree, dv(&[0, 0, 2]));
        assert_eq!(c.power(2).unwrap()[0].degree, dv(&[0, 0, 1]));
        assert!(check_convex(&c).unwrap().is_convex());
        assert_eq!(gr_gkdim(&c).unwrap(), gr_gkdim(&p).unwrap() + gr_gkdim(&q).unwrap());
        assert_eq!(c.to_string().parse::<PBWPresentation>().unwrap(), c);
    }
}
