//! Braided vector spaces of points and blocks.
//!
//! A [`BraidedSpaceSpec`] is a finite presentation: a finite core of blocks
//! and points, eventually periodic tails, and families of repeated
//! components. [`validate`] expands it into a [`Skeleton`], [`truncate`]
//! cuts out a finite subspace, and [`braiding_matrix`] assembles `c` on it.

mod braiding;
mod skeleton;
mod tails;
mod types;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

pub use braiding::{
    basis_labels, braiding_matrix, natural_field, shift_fixture, un_fixture, BraidingOperator, RackVariant, Term,
    BRAID_CHECK_MAX_DIM,
};
pub use skeleton::{
    PairView, SkNode, SkPair, SkTail, SkVertex, Skeleton, TailLink, VertexKind, MAX_FAMILY_COPIES,
};
pub use tails::{tail_shape, TailShape};
pub use types::*;

use crate::error::{Error, Result};
use crate::scalar::MonoScalar;

/// A spec whose structure has been checked, with its `≈` classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedSpec {
    pub spec: BraidedSpaceSpec,
    pub skeleton: Skeleton,
    pub components: Vec<Vec<SkNode>>,
}

impl ValidatedSpec {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

pub fn validate(spec: &BraidedSpaceSpec) -> Result<ValidatedSpec> {
    let skeleton = Skeleton::build(spec)?;
    let components = skeleton.components();
    Ok(ValidatedSpec {
        spec: spec.clone(),
        skeleton,
        components,
    })
}

fn block_point<'a>(spec: &'a BraidedSpaceSpec, j: &str, i: &str) -> Result<(Sign, Option<&'a PairData>)> {
    let sign = spec.block_sign(j).ok_or_else(|| Error::UnknownVertex(j.to_string()))?;
    if !spec.points.iter().any(|p| p.id == i) {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    let pair = spec.pairs.iter().find(|p| p.involves(i) && p.involves(j));
    Ok((sign, pair))
}

/// `𝒮_ij = q_ji q_ij`; the interaction is weak when this is 1.
pub fn interaction(spec: &BraidedSpaceSpec, j: &str, i: &str) -> Result<MonoScalar> {
    let (_, pair) = block_point(spec, j, i)?;
    Ok(pair.map(|p| &p.q_rs * &p.q_sr).unwrap_or_else(MonoScalar::one))
}

/// `𝒢_ij`: `-2 a_ij` for a `plus` block, `a_ij` for a `minus` block.
pub fn ghost(spec: &BraidedSpaceSpec, j: &str, i: &str) -> Result<BigRational> {
    let (sign, pair) = block_point(spec, j, i)?;
    let a = pair
        .and_then(|p| if p.r == i { p.a_rs.clone() } else { p.a_sr.clone() })
        .unwrap_or_else(|| BigRational::from_integer(0.into()));
    Ok(ghost_from_a(sign, &a))
}

/// Whether a ghost is discrete, i.e. a positive integer.
pub fn is_discrete(ghost: &BigRational) -> bool {
    crate::scalar::is_positive_integer(ghost)
}

/// How much of each infinite item a truncation keeps: `NAME=N,*=N`.
/// Names are tail ids, `family.tail` for tails inside a family, or family
/// ids for `omega` families. Unlisted items fall back to `*`, then to 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Selector {
    pub entries: BTreeMap<String, usize>,
    pub default: usize,
}

impl Selector {
    pub fn uniform(n: usize) -> Self {
        Selector {
            entries: BTreeMap::new(),
            default: n,
        }
    }

    pub fn with(mut self, name: &str, n: usize) -> Self {
        self.entries.insert(name.to_string(), n);
        self
    }

    pub fn get(&self, name: &str) -> usize {
        self.entries.get(name).copied().unwrap_or(self.default)
    }

    /// Pointwise `≤`.
    pub fn le(&self, other: &Selector) -> bool {
        self.default <= other.default
            && self
                .entries
                .keys()
                .chain(other.entries.keys())
                .all(|k| self.get(k) <= other.get(k))
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sel = Selector::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, n) = part
                .split_once('=')
                .ok_or_else(|| Error::malformed("selector", format!("`{part}` is not NAME=N")))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::malformed("selector", format!("`{n}` is not a count")))?;
            match name.trim() {
                "*" => sel.default = n,
                name => {
                    sel.entries.insert(name.to_string(), n);
                }
            }
        }
        Ok(sel)
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.entries.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.push(format!("*={}", self.default));
        f.write_str(&parts.join(","))
    }
}

/// The finite subspace picked by `sel`: the whole finite core, every copy
/// of every finite family, `sel[f]` copies of each `omega` family `f` and
/// the first `sel[t]` vertices of each tail `t`.
pub fn truncate(spec: &BraidedSpaceSpec, sel: &Selector) -> Result<BraidedSpaceSpec> {
    let mut finite = spec.clone();
    finite.families.clear();
    for f in &spec.families {
        let count = match f.count {
            Multiplicity::Finite(n) => n,
            Multiplicity::Omega => sel.get(&f.id) as u64,
        };
        if count > 0 {
            let mut g = f.clone();
            g.count = Multiplicity::Finite(count);
            finite.families.push(g);
        }
    }
    let sk = Skeleton::build(&finite)?;
    let mut out = BraidedSpaceSpec::new(spec.name.clone());
    for v in &sk.vertices {
        match &v.kind {
            VertexKind::Block(s) => out.blocks.push(Block { id: v.id.clone(), sign: *s }),
            VertexKind::Point(q) => out.points.push(Point {
                id: v.id.clone(),
                q: q.clone(),
            }),
        }
    }
    let pair_of = |r: &str, s: &str, p: &SkPair| PairData {
        r: r.to_string(),
        s: s.to_string(),
        q_rs: p.q_rs.clone(),
        q_sr: p.q_sr.clone(),
        a_rs: nonzero(&p.a_rs),
        a_sr: nonzero(&p.a_sr),
    };
    for p in &sk.pairs {
        out.pairs.push(pair_of(&sk.vertices[p.r].id, &sk.vertices[p.s].id, p));
    }
    for t in &sk.tails {
        let n = sel.entries.get(&t.key).copied().unwrap_or(sel.default);
        let shape = &t.shape;
        let order = shape.order(n);
        let mut per_ray = vec![0; shape.template.rays.len()];
        for r in &order {
            if let crate::diagram::VertexRef::Ray(k, i) = r {
                per_ray[*k] = per_ray[*k].max(i + 1);
            }
        }
        let w = shape.template.window_with(&per_ray);
        let keep: Vec<bool> = w.refs.iter().map(|r| order.contains(r)).collect();
        let names: Vec<String> = w.refs.iter().map(|r| shape.vertex_name(*r)).collect();
        for (k, r) in w.refs.iter().enumerate() {
            if keep[k] {
                out.points.push(Point {
                    id: names[k].clone(),
                    q: shape.template.label(*r).clone(),
                });
            }
        }
        for (a, b, l) in &w.edges {
            if keep[*a] && keep[*b] {
                out.pairs.push(PairData::qtilde(&names[*a], &names[*b], l.clone()));
            }
        }
        if n == 0 {
            continue;
        }
        let entry = shape.vertex_name(shape.entry);
        match &t.link {
            TailLink::None => {}
            TailLink::Point {
                source,
                q_src_entry,
                q_entry_src,
            } => out.pairs.push(PairData {
                r: sk.vertices[*source].id.clone(),
                s: entry,
                q_rs: q_src_entry.clone(),
                q_sr: q_entry_src.clone(),
                a_rs: None,
                a_sr: None,
            }),
            TailLink::Block { source, a } => out.pairs.push(PairData {
                r: entry,
                s: sk.vertices[*source].id.clone(),
                q_rs: MonoScalar::one(),
                q_sr: MonoScalar::one(),
                a_rs: nonzero(a),
                a_sr: None,
            }),
        }
    }
    Ok(out)
}

fn nonzero(a: &BigRational) -> Option<BigRational> {
    if num_traits::Zero::is_zero(a) {
        None
    } else {
        Some(a.clone())
    }
}
