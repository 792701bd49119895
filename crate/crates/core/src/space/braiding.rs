use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, Word, WordVec};
use crate::scalar::{embed, FieldElement, FieldTag, MonoScalar};

use super::types::{BraidedSpaceSpec, PairData, Point};
#[cfg(test)]
use super::types::Sign;

/// Operators up to this dimension are checked exhaustively on construction.
pub const BRAID_CHECK_MAX_DIM: usize = 6;

/// One term `coeff · x_u ⊗ x_v`.
pub type Term = (u32, u32, FieldElement);

/// The braiding `c` on `V ⊗ V` for an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingOperator {
    labels: Vec<String>,
    field: FieldTag,
    images: Vec<Vec<Term>>,
    grading: Option<Vec<i64>>,
    window: Option<Vec<u32>>,
}

impl BraidingOperator {
    /// `images[r * d + s]` is `c(x_r ⊗ x_s)`. Verifies invertibility and the
    /// braid equation when `d ≤ 6`.
    pub fn new(labels: Vec<String>, field: FieldTag, images: Vec<Vec<Term>>) -> Result<Self> {
        let op = Self::new_unchecked(labels, field, images);
        if op.dim() <= BRAID_CHECK_MAX_DIM {
            op.check_braid_equation()?;
            if !op.is_invertible() {
                return Err(Error::malformed("braiding", "c is not invertible"));
            }
        }
        Ok(op)
    }

    pub(crate) fn new_unchecked(labels: Vec<String>, field: FieldTag, images: Vec<Vec<Term>>) -> Self {
        let d = labels.len();
        assert_eq!(images.len(), d * d, "one image per basis pair");
        BraidingOperator {
            labels,
            field,
            images,
            grading: None,
            window: None,
        }
    }

    pub fn with_grading(mut self, degrees: Vec<i64>) -> Self {
        assert_eq!(degrees.len(), self.dim());
        self.grading = Some(degrees);
        self
    }

    /// Restricts symmetrizer domains to words in these basis vectors.
    pub fn with_window(mut self, window: Vec<u32>) -> Self {
        self.window = Some(window);
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    /// Basis vectors spanning the domain of interest.
    pub fn window(&self) -> Vec<u32> {
        match &self.window {
            Some(w) => w.clone(),
            None => (0..self.dim() as u32).collect(),
        }
    }

    pub fn image(&self, r: u32, s: u32) -> &[Term] {
        &self.images[r as usize * self.dim() + s as usize]
    }

    /// Dense `d² × d²` matrix, rows and columns indexed by `r·d + s`.
    pub fn matrix(&self) -> Vec<Vec<FieldElement>> {
        let d = self.dim();
        let mut m = vec![vec![FieldElement::zero(self.field); d * d]; d * d];
        for (col, img) in self.images.iter().enumerate() {
            for (u, v, c) in img {
                m[*u as usize * d + *v as usize][col] = c.clone();
            }
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        let d = self.dim();
        bareiss_rank(self.matrix(), self.field) == d * d
    }

    /// Applies `c` in slots `(k, k+1)` (0-based) of every word of `v`.
    pub fn apply_at(&self, v: &WordVec, k: usize) -> WordVec {
        let mut out = WordVec::new();
        for (w, c) in v.iter() {
            for (a, b, x) in self.image(w[k], w[k + 1]) {
                let mut nw = w.clone();
                nw[k] = *a;
                nw[k + 1] = *b;
                out.add_term(nw, c * x);
            }
        }
        out
    }

    pub fn check_braid_equation(&self) -> Result<()> {
        let d = self.dim() as u32;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let w: Word = vec![a, b, c];
                    let v = WordVec::basis(w, self.field);
                    let lhs = self.apply_at(&self.apply_at(&self.apply_at(&v, 0), 1), 0);
                    let rhs = self.apply_at(&self.apply_at(&self.apply_at(&v, 1), 0), 1);
                    if lhs != rhs {
                        return Err(Error::BraidEquationViolation(
                            self.labels[a as usize].clone(),
                            self.labels[b as usize].clone(),
                            self.labels[c as usize].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Basis {
    Lower(usize),
    Upper(usize),
    Point(usize),
}

struct Lookup<'a> {
    spec: &'a BraidedSpaceSpec,
    pairs: HashMap<(&'a str, &'a str), &'a PairData>,
}

impl<'a> Lookup<'a> {
    fn new(spec: &'a BraidedSpaceSpec) -> Self {
        let mut pairs = HashMap::new();
        for p in &spec.pairs {
            pairs.insert((p.r.as_str(), p.s.as_str()), p);
            pairs.insert((p.s.as_str(), p.r.as_str()), p);
        }
        Lookup { spec, pairs }
    }

    /// `(q_rs, a_rs)` with absent data defaulting to `(1, 0)`.
    fn q_a(&self, r: &str, s: &str) -> (MonoScalar, BigRational) {
        match self.pairs.get(&(r, s)) {
            None => (MonoScalar::one(), BigRational::zero()),
            Some(p) if p.r == r => (p.q_rs.clone(), p.a_rs.clone().unwrap_or_else(BigRational::zero)),
            Some(p) => (p.q_sr.clone(), p.a_sr.clone().unwrap_or_else(BigRational::zero)),
        }
    }

    fn id(&self, b: Basis) -> &str {
        match b {
            Basis::Lower(j) | Basis::Upper(j) => &self.spec.blocks[j].id,
            Basis::Point(i) => &self.spec.points[i].id,
        }
    }
}

/// Basis labels of a finite spec: `j`, `j+1/2` for each block, then the points.
pub fn basis_labels(spec: &BraidedSpaceSpec) -> Vec<String> {
    basis_of(spec)
        .into_iter()
        .map(|b| match b {
            Basis::Lower(j) => spec.blocks[j].id.clone(),
            Basis::Upper(j) => format!("{}+1/2", spec.blocks[j].id),
            Basis::Point(i) => spec.points[i].id.clone(),
        })
        .collect()
}

fn basis_of(spec: &BraidedSpaceSpec) -> Vec<Basis> {
    let mut basis = Vec::new();
    for j in 0..spec.blocks.len() {
        basis.push(Basis::Lower(j));
        basis.push(Basis::Upper(j));
    }
    basis.extend((0..spec.points.len()).map(Basis::Point));
    basis
}

/// Smallest field containing every scalar of a finite spec.
pub fn natural_field(spec: &BraidedSpaceSpec) -> Result<FieldTag> {
    let scalars: Vec<&MonoScalar> = spec
        .points
        .iter()
        .map(|p| &p.q)
        .chain(spec.pairs.iter().flat_map(|p| [&p.q_rs, &p.q_sr]))
        .collect();
    crate::scalar::field_for(scalars)
}

/// Assembles `c` on `V ⊗ V` for a finite spec from the block matrix and
/// the block–point and block–block rules.
pub fn braiding_matrix(spec: &BraidedSpaceSpec, field: FieldTag) -> Result<BraidingOperator> {
    if !spec.is_finite() {
        return Err(Error::malformed(
            format!("space {}", spec.name),
            "braiding matrices need a finite spec; truncate it first",
        ));
    }
    super::validate(spec)?;
    let basis = basis_of(spec);
    let pos: HashMap<Basis, u32> = basis.iter().enumerate().map(|(k, b)| (*b, k as u32)).collect();
    let look = Lookup::new(spec);
    let q = |s: &MonoScalar| embed(s, field);
    let rat = |a: &BigRational| FieldElement::from_rational(field, a.clone());
    let one = FieldElement::one(field);
    let mut images = Vec::with_capacity(basis.len() * basis.len());
    for &x in &basis {
        for &y in &basis {
            let px = pos[&x];
            let py = pos[&y];
            let mut img: Vec<Term> = Vec::new();
            match (x, y) {
                (Basis::Lower(j) | Basis::Upper(j), Basis::Lower(k) | Basis::Upper(k)) if j == k => {
                    let eps = FieldElement::from_int(field, spec.blocks[j].sign.epsilon());
                    let lower = pos[&Basis::Lower(j)];
                    let upper = pos[&Basis::Upper(j)];
                    match y {
                        Basis::Lower(_) => img.push((lower, px, eps)),
                        _ => {
                            img.push((upper, px, eps));
                            img.push((lower, px, one.clone()));
                        }
                    }
                }
                (Basis::Point(i), Basis::Point(h)) => {
                    let qih = if i == h {
                        spec.points[i].q.clone()
                    } else {
                        look.q_a(look.id(x), look.id(y)).0
                    };
                    img.push((py, px, q(&qih)?));
                }
                (_, Basis::Point(_)) => {
                    // block acting on a point
                    let (qji, _) = look.q_a(look.id(x), look.id(y));
                    img.push((py, px, q(&qji)?));
                }
                (_, Basis::Lower(_)) => {
                    let (qrs, _) = look.q_a(look.id(x), look.id(y));
                    img.push((py, px, q(&qrs)?));
                }
                (_, Basis::Upper(k)) => {
                    let (qrs, ars) = look.q_a(look.id(x), look.id(y));
                    let c = q(&qrs)?;
                    img.push((py, px, c.clone()));
                    img.push((pos[&Basis::Lower(k)], px, &c * &rat(&ars)));
                }
            }
            img.retain(|t| !t.2.is_zero());
            images.push(img);
        }
    }
    BraidingOperator::new(basis_labels(spec), field, images)
}

/// The diagonal space `𝕌[n]`: points `z_1..z_n` with `c(z_i ⊗ z_j) = -z_j ⊗ z_i`,
/// `c(z_i ⊗ y) = μ y ⊗ z_i`, `c(y ⊗ z_j) = ζ^j z_j ⊗ y`, `c(y ⊗ y) = q y ⊗ y`,
/// where `ζ = e^{2πi/n}`.
pub fn un_fixture(n: usize, mu: &MonoScalar, q: &MonoScalar) -> Result<BraidedSpaceSpec> {
    if n < 2 {
        return Err(Error::malformed("un_fixture", "n must be at least 2"));
    }
    let mut spec = BraidedSpaceSpec::new(format!("U{n}"));
    for i in 1..=n {
        spec.points.push(Point {
            id: format!("z{i}"),
            q: MonoScalar::minus_one(),
        });
    }
    spec.points.push(Point { id: "y".into(), q: q.clone() });
    for i in 1..=n {
        for j in i + 1..=n {
            spec.pairs.push(PairData {
                r: format!("z{i}"),
                s: format!("z{j}"),
                q_rs: MonoScalar::minus_one(),
                q_sr: MonoScalar::minus_one(),
                a_rs: None,
                a_sr: None,
            });
        }
        spec.pairs.push(PairData {
            r: format!("z{i}"),
            s: "y".into(),
            q_rs: mu.clone(),
            q_sr: MonoScalar::root_of_unity(n as u64, i as i64),
            a_rs: None,
            a_sr: None,
        });
    }
    Ok(spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RackVariant {
    /// `c(v_i ⊗ v_j) = v_{j+1} ⊗ v_i`.
    Shift,
    /// `c(x_i ⊗ x_j) = x_{2i-j} ⊗ x_i`.
    Reflection,
}

/// A set-theoretic braiding on the span of `v_lo..v_hi`. The operator acts
/// on a cyclic ambient `ℤ/L` large enough that words in the window never
/// wrap within `n` tensor factors; the window and the grading `deg v_i = i`
/// are attached to the operator.
pub fn shift_fixture(lo: i64, hi: i64, n: usize, variant: RackVariant) -> BraidingOperator {
    assert!(lo <= hi);
    let width = hi - lo + 1;
    let margin = match variant {
        RackVariant::Shift => n as i64 + 1,
        RackVariant::Reflection => (width + 1) * (n as i64 + 1),
    };
    let start = lo - margin;
    let len = width + 2 * margin;
    let idx = |i: i64| (i - start).rem_euclid(len) as u32;
    let labels: Vec<String> = (0..len).map(|k| format!("v{}", start + k)).collect();
    let mut images = Vec::with_capacity((len * len) as usize);
    for a in 0..len {
        for b in 0..len {
            let (i, j) = (start + a, start + b);
            let left = match variant {
                RackVariant::Shift => j + 1,
                RackVariant::Reflection => 2 * i - j,
            };
            images.push(vec![(idx(left), idx(i), FieldElement::one(FieldTag::Rat))]);
        }
    }
    let degrees: Vec<i64> = (0..len).map(|k| start + k).collect();
    BraidingOperator::new_unchecked(labels, FieldTag::Rat, images)
        .with_grading(degrees)
        .with_window((lo..=hi).map(idx).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MonoScalar {
        s.parse().unwrap()
    }

    #[test]
    fn single_point() {
        let spec = BraidedSpaceSpec::new("p").point("x", m("-1"));
        let op = braiding_matrix(&spec, FieldTag::Rat).unwrap();
        assert_eq!(op.matrix(), vec![vec![FieldElement::from_int(FieldTag::Rat, -1)]]);
    }

    #[test]
    fn single_plus_block() {
        let spec = BraidedSpaceSpec::new("b").block("j", Sign::Plus);
        let op = braiding_matrix(&spec, FieldTag::Rat).unwrap();
        let one = FieldElement::one(FieldTag::Rat);
        // c(x_j ⊗ x_j) = x_j ⊗ x_j
        assert_eq!(op.image(0, 0), &[(0, 0, one.clone())]);
        // c(x_j ⊗ x_{j+½}) = (x_{j+½} + x_j) ⊗ x_j
        assert_eq!(op.image(0, 1), &[(1, 0, one.clone()), (0, 0, one.clone())]);
        // c(x_{j+½} ⊗ x_j) = x_j ⊗ x_{j+½}
        assert_eq!(op.image(1, 0), &[(0, 1, one.clone())]);
        // c(x_{j+½} ⊗ x_{j+½}) = (x_{j+½} + x_j) ⊗ x_{j+½}
        assert_eq!(op.image(1, 1), &[(1, 1, one.clone()), (0, 1, one)]);
    }

    #[test]
    fn weak_block_point_with_a() {
        let spec = BraidedSpaceSpec::new("bp")
            .block("j", Sign::Plus)
            .point("i", m("-1"))
            .pair(PairData {
                r: "i".into(),
                s: "j".into(),
                q_rs: m("zeta(4)"),
                q_sr: m("zeta(4)^3"),
                a_rs: Some(BigRational::from_integer(1.into())),
                a_sr: None,
            });
        let op = braiding_matrix(&spec, FieldTag::Cyclo(4)).unwrap();
        let qij = embed(&m("zeta(4)"), FieldTag::Cyclo(4)).unwrap();
        // c(x_i ⊗ x_{j+½}) = q_ij (x_{j+½} + 1·x_j) ⊗ x_i
        assert_eq!(op.image(2, 1), &[(1, 2, qij.clone()), (0, 2, qij)]);
    }

    #[test]
    fn braid_violation_is_reported() {
        let t = FieldTag::Rat;
        let one = FieldElement::one(t);
        // a non-flipping diagonal c with one entry 2 fails at (x, y, y)
        let mut images = Vec::new();
        for a in 0..2u32 {
            for b in 0..2u32 {
                let c = if (a, b) == (0, 1) { FieldElement::from_int(t, 2) } else { one.clone() };
                images.push(vec![(a, b, c)]);
            }
        }
        let err = BraidingOperator::new(vec!["x".into(), "y".into()], t, images).unwrap_err();
        assert!(matches!(err, Error::BraidEquationViolation(..)));
    }

    #[test]
    fn un_fixture_entries() {
        let spec = un_fixture(3, &MonoScalar::one(), &m("-1")).unwrap();
        assert_eq!(spec.points.len(), 4);
        let zy: Vec<_> = spec.pairs.iter().filter(|p| p.s == "y").collect();
        assert_eq!(zy[0].q_sr, MonoScalar::root_of_unity(3, 1));
        assert!(spec
            .pairs
            .iter()
            .filter(|p| p.s != "y")
            .all(|p| p.q_rs.is_minus_one() && p.q_sr.is_minus_one()));
    }

    #[test]
    fn shift_and_reflection_images() {
        let op = shift_fixture(0, 1, 3, RackVariant::Shift);
        let i0 = op.window()[0];
        let i1 = op.window()[1];
        let (a, b, _) = &op.image(i0, i1)[0];
        assert_eq!(op.labels()[*a as usize], "v2");
        assert_eq!(*b, i0);
        let op = shift_fixture(0, 1, 3, RackVariant::Reflection);
        let (a, _, _) = &op.image(op.window()[0], op.window()[1])[0];
        assert_eq!(op.labels()[*a as usize], "v-1");
        let (a, _, _) = &op.image(op.window()[1], op.window()[1])[0];
        assert_eq!(op.labels()[*a as usize], "v1");
    }
}
