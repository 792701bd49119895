use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::MonoScalar;

use super::tails::{tail_shape, TailShape};
use super::types::*;

/// Families with more finite copies than this are rejected rather than
/// expanded.
pub const MAX_FAMILY_COPIES: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Block(Sign),
    Point(MonoScalar),
}

impl VertexKind {
    pub fn is_block(&self) -> bool {
        matches!(self, VertexKind::Block(_))
    }

    /// `q_rr` of the group-like element of the vertex acting on itself.
    pub fn self_q(&self) -> MonoScalar {
        match self {
            VertexKind::Block(s) => s.as_mono(),
            VertexKind::Point(q) => q.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkVertex {
    pub id: String,
    pub kind: VertexKind,
    /// Set when the vertex stands for countably many copies of an
    /// `omega` family member.
    pub omega: Option<String>,
}

/// Pair data between skeleton vertices `r < s`, with absent values resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkPair {
    pub r: usize,
    pub s: usize,
    pub q_rs: MonoScalar,
    pub q_sr: MonoScalar,
    pub a_rs: BigRational,
    pub a_sr: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailLink {
    None,
    /// Edge label `q̃` from a point to the entry vertex.
    Point { source: usize, q_src_entry: MonoScalar, q_entry_src: MonoScalar },
    /// Weak connection from a block with coefficient `a_{entry, block}`.
    Block { source: usize, a: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkTail {
    /// Selector key: the tail id, or `family.tail` inside a family.
    pub key: String,
    pub shape: TailShape,
    pub link: TailLink,
    pub omega: Option<String>,
}

impl SkTail {
    pub fn source(&self) -> Option<usize> {
        match &self.link {
            TailLink::None => None,
            TailLink::Point { source, .. } | TailLink::Block { source, .. } => Some(*source),
        }
    }

    pub fn is_linked(&self) -> bool {
        match &self.link {
            TailLink::None => false,
            TailLink::Point {
                q_src_entry,
                q_entry_src,
                ..
            } => !(q_src_entry * q_entry_src).is_one(),
            TailLink::Block { a, .. } => !a.is_zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkNode {
    Vertex(usize),
    Tail(usize),
}

/// Finite working form of a spec.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: Vec<SkVertex>,
    pub pairs: Vec<SkPair>,
    pub tails: Vec<SkTail>,
    index: HashMap<String, usize>,
    pair_index: HashMap<(usize, usize), usize>,
}

/// Resolved view of the braiding between two vertices, oriented `(r, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairView {
    pub q_rs: MonoScalar,
    pub q_sr: MonoScalar,
    pub a_rs: BigRational,
    pub a_sr: BigRational,
}

impl Skeleton {
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn pair(&self, r: usize, s: usize) -> PairView {
        let key = (r.min(s), r.max(s));
        match self.pair_index.get(&key) {
            None => PairView {
                q_rs: MonoScalar::one(),
                q_sr: MonoScalar::one(),
                a_rs: BigRational::zero(),
                a_sr: BigRational::zero(),
            },
            Some(&k) => {
                let p = &self.pairs[k];
                if p.r == r {
                    PairView {
                        q_rs: p.q_rs.clone(),
                        q_sr: p.q_sr.clone(),
                        a_rs: p.a_rs.clone(),
                        a_sr: p.a_sr.clone(),
                    }
                } else {
                    PairView {
                        q_rs: p.q_sr.clone(),
                        q_sr: p.q_rs.clone(),
                        a_rs: p.a_sr.clone(),
                        a_sr: p.a_rs.clone(),
                    }
                }
            }
        }
    }

    /// `r ∼ s`: the double braiding between `V_r` and `V_s` is not the identity.
    pub fn related(&self, r: usize, s: usize) -> bool {
        if r == s {
            return false;
        }
        let p = self.pair(r, s);
        !(&p.q_rs * &p.q_sr).is_one() || !p.a_rs.is_zero() || !p.a_sr.is_zero()
    }

    /// Pairs `(r, s)`, `r < s`, with `r ∼ s`.
    pub fn sim_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .filter(|p| self.related(p.r, p.s))
            .map(|p| (p.r, p.s))
            .collect();
        out.sort();
        out
    }

    /// Connected components of `≈`: vertices joined by `∼`, and each tail
    /// together with its source when the link is nontrivial.
    pub fn components(&self) -> Vec<Vec<SkNode>> {
        let nv = self.vertices.len();
        let n = nv + self.tails.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (a, b) = (find(p, a), find(p, b));
            if a != b {
                p[a.max(b)] = a.min(b);
            }
        };
        for (r, s) in self.sim_edges() {
            union(&mut parent, r, s);
        }
        for (t, tail) in self.tails.iter().enumerate() {
            if let Some(src) = tail.source() {
                if tail.is_linked() {
                    union(&mut parent, src, nv + t);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<SkNode>> = Default::default();
        for k in 0..n {
            let node = if k < nv { SkNode::Vertex(k) } else { SkNode::Tail(k - nv) };
            groups.entry(find(&mut parent, k)).or_default().push(node);
        }
        groups.into_values().collect()
    }

    fn add_vertex(&mut self, id: String, kind: VertexKind, omega: Option<String>) -> Result<usize> {
        if self.index.contains_key(&id) {
            return Err(Error::malformed(id.clone(), "duplicate identifier"));
        }
        let k = self.vertices.len();
        self.index.insert(id.clone(), k);
        self.vertices.push(SkVertex { id, kind, omega });
        Ok(k)
    }

    fn add_pair(&mut self, path: &str, d: &PairData, rename: &dyn Fn(&str) -> String) -> Result<()> {
        let r_id = rename(&d.r);
        let s_id = rename(&d.s);
        let r = self.index_of(&r_id).ok_or_else(|| Error::malformed(path, format!("unknown vertex `{}`", d.r)))?;
        let s = self.index_of(&s_id).ok_or_else(|| Error::malformed(path, format!("unknown vertex `{}`", d.s)))?;
        if r == s {
            return Err(Error::malformed(path, "an edge needs two distinct vertices"));
        }
        if d.a_rs.is_some() && !self.vertices[s].kind.is_block() {
            return Err(Error::malformed(path, format!("a12 needs `{}` to be a block", d.s)));
        }
        if d.a_sr.is_some() && !self.vertices[r].kind.is_block() {
            return Err(Error::malformed(path, format!("a21 needs `{}` to be a block", d.r)));
        }
        let key = (r.min(s), r.max(s));
        if self.pair_index.contains_key(&key) {
            return Err(Error::malformed(path, "duplicate edge"));
        }
        let a_rs = d.a_rs.clone().unwrap_or_else(BigRational::zero);
        let a_sr = d.a_sr.clone().unwrap_or_else(BigRational::zero);
        let pair = if r < s {
            SkPair {
                r,
                s,
                q_rs: d.q_rs.clone(),
                q_sr: d.q_sr.clone(),
                a_rs,
                a_sr,
            }
        } else {
            SkPair {
                r: s,
                s: r,
                q_rs: d.q_sr.clone(),
                q_sr: d.q_rs.clone(),
                a_rs: a_sr,
                a_sr: a_rs,
            }
        };
        self.pair_index.insert(key, self.pairs.len());
        self.pairs.push(pair);
        Ok(())
    }

    fn add_tail(
        &mut self,
        path: &str,
        t: &TailTemplate,
        id: String,
        key: String,
        source: Option<String>,
        omega: Option<String>,
    ) -> Result<()> {
        check_tail_params(path, t)?;
        let mut renamed = t.clone();
        renamed.id = id;
        let shape = tail_shape(&renamed)?;
        let link = match &source {
            None => {
                if t.ghost.is_some() || t.link.is_some() {
                    return Err(Error::malformed(path, "a fresh tail takes no `ghost` or `link`"));
                }
                TailLink::None
            }
            Some(src) => {
                let k = self.index_of(src).ok_or_else(|| Error::malformed(path, format!("unknown vertex `{src}`")))?;
                match &self.vertices[k].kind {
                    VertexKind::Block(sign) => {
                        if t.link.is_some() {
                            return Err(Error::malformed(path, "a tail from a block takes `ghost`, not `link`"));
                        }
                        let ghost = match (&t.ghost, t.kind) {
                            (Some(g), _) => g.clone(),
                            (None, TailKind::AInfChain) => BigRational::from_integer(1.into()),
                            (None, _) => return Err(Error::malformed(path, "missing `ghost`")),
                        };
                        TailLink::Block {
                            source: k,
                            a: a_from_ghost(*sign, &ghost),
                        }
                    }
                    VertexKind::Point(_) => {
                        if t.ghost.is_some() {
                            return Err(Error::malformed(path, "a tail from a point takes `link`, not `ghost`"));
                        }
                        let link = match (&t.link, t.kind) {
                            (Some(l), _) => l.clone(),
                            (None, TailKind::AInfChain) => MonoScalar::minus_one(),
                            (None, _) => return Err(Error::malformed(path, "missing `link`")),
                        };
                        TailLink::Point {
                            source: k,
                            q_src_entry: link,
                            q_entry_src: MonoScalar::one(),
                        }
                    }
                }
            }
        };
        self.tails.push(SkTail { key, shape, link, omega });
        Ok(())
    }

    /// Builds the skeleton; finite families are expanded, `omega` families
    /// keep one representative copy.
    pub fn build(spec: &BraidedSpaceSpec) -> Result<Skeleton> {
        let mut sk = Skeleton::default();
        let space = &spec.name;
        let mut names: HashMap<String, &str> = HashMap::new();
        let mut claim = |id: &str, what: &'static str| -> Result<()> {
            if id.is_empty() {
                return Err(Error::malformed(format!("space {space}"), format!("empty {what} identifier")));
            }
            if let Some(prev) = names.insert(id.to_string(), what) {
                return Err(Error::malformed(
                    format!("space {space} / {what} {id}"),
                    format!("identifier already used by a {prev}"),
                ));
            }
            Ok(())
        };
        for b in &spec.blocks {
            claim(&b.id, "block")?;
        }
        for p in &spec.points {
            claim(&p.id, "point")?;
        }
        for t in &spec.tails {
            claim(&t.id, "tail")?;
        }
        for f in &spec.families {
            claim(&f.id, "family")?;
        }
        for b in &spec.blocks {
            sk.add_vertex(b.id.clone(), VertexKind::Block(b.sign), None)?;
        }
        for p in &spec.points {
            sk.add_vertex(p.id.clone(), VertexKind::Point(p.q.clone()), None)?;
        }
        let same = |s: &str| s.to_string();
        for d in &spec.pairs {
            sk.add_pair(&format!("space {space} / edge {} {}", d.r, d.s), d, &same)?;
        }
        for t in &spec.tails {
            let path = format!("space {space} / tail {}", t.id);
            let src = match &t.from {
                TailSource::Fresh => None,
                TailSource::Vertex(v) => {
                    if spec.tails.iter().any(|o| &o.id == v) {
                        return Err(Error::malformed(path, "a tail cannot grow from another tail"));
                    }
                    Some(v.clone())
                }
            };
            sk.add_tail(&path, t, t.id.clone(), t.id.clone(), src, None)?;
        }
        for f in &spec.families {
            let path = format!("space {space} / family {}", f.id);
            let copies: Vec<(String, Option<String>)> = match f.count {
                Multiplicity::Finite(0) => return Err(Error::malformed(path, "count must be positive")),
                Multiplicity::Finite(n) if n > MAX_FAMILY_COPIES => {
                    return Err(Error::BudgetExceeded {
                        what: format!("copies of family {}", f.id),
                        size: n as u128,
                        limit: MAX_FAMILY_COPIES as u128,
                    })
                }
                Multiplicity::Finite(n) => (1..=n).map(|k| (format!("{}.{k}", f.id), None)).collect(),
                Multiplicity::Omega => vec![(format!("{}[*]", f.id), Some(f.id.clone()))],
            };
            for (prefix, omega) in copies {
                sk.add_family_copy(spec, f, &path, &prefix, omega)?;
            }
        }
        Ok(sk)
    }

    fn add_family_copy(
        &mut self,
        spec: &BraidedSpaceSpec,
        f: &ComponentFamily,
        path: &str,
        prefix: &str,
        omega: Option<String>,
    ) -> Result<()> {
        let pat = &f.pattern;
        let mut local: HashMap<&str, ()> = HashMap::new();
        for id in pat
            .blocks
            .iter()
            .map(|b| b.id.as_str())
            .chain(pat.points.iter().map(|p| p.id.as_str()))
            .chain(pat.tails.iter().map(|t| t.id.as_str()))
        {
            if local.insert(id, ()).is_some() {
                return Err(Error::malformed(format!("{path} / {id}"), "duplicate identifier in pattern"));
            }
            if self.index_of(id).is_some() || spec.tails.iter().any(|t| t.id == id) {
                return Err(Error::malformed(format!("{path} / {id}"), "pattern identifier shadows an outer one"));
            }
        }
        let rename = |id: &str| {
            if local.contains_key(id) {
                format!("{prefix}.{id}")
            } else {
                id.to_string()
            }
        };
        for b in &pat.blocks {
            self.add_vertex(rename(&b.id), VertexKind::Block(b.sign), omega.clone())?;
        }
        for p in &pat.points {
            self.add_vertex(rename(&p.id), VertexKind::Point(p.q.clone()), omega.clone())?;
        }
        for d in &pat.pairs {
            let both_outer = !local.contains_key(d.r.as_str()) && !local.contains_key(d.s.as_str());
            if both_outer {
                return Err(Error::malformed(format!("{path} / edge {} {}", d.r, d.s), "pattern edge must touch the pattern"));
            }
            self.add_pair(&format!("{path} / edge {} {}", d.r, d.s), d, &rename)?;
        }
        for t in &pat.tails {
            let src = match &t.from {
                TailSource::Fresh => None,
                TailSource::Vertex(v) => Some(rename(v)),
            };
            let key = format!("{}.{}", f.id, t.id);
            self.add_tail(&format!("{path} / tail {}", t.id), t, rename(&t.id), key, src, omega.clone())?;
        }
        for (k, att) in f.attachments.iter().enumerate() {
            let apath = format!("{path} / attach {}", k + 1);
            let sign = spec
                .block_sign(&att.block)
                .ok_or_else(|| Error::malformed(&apath, format!("`{}` is not a block of the space", att.block)))?;
            let at = match &att.at {
                Some(p) => {
                    if !pat.points.iter().any(|x| &x.id == p) {
                        return Err(Error::malformed(&apath, format!("`{p}` is not a point of the pattern")));
                    }
                    p.clone()
                }
                None => pat
                    .points
                    .first()
                    .map(|p| p.id.clone())
                    .ok_or_else(|| Error::malformed(&apath, "pattern has no point to attach"))?,
            };
            let d = PairData {
                r: at,
                s: att.block.clone(),
                q_rs: MonoScalar::one(),
                q_sr: MonoScalar::one(),
                a_rs: Some(a_from_ghost(sign, &att.ghost)),
                a_sr: None,
            };
            self.add_pair(&apath, &d, &rename)?;
        }
        Ok(())
    }
}

pub(crate) fn check_tail_params(path: &str, t: &TailTemplate) -> Result<()> {
    let bad = |r: &str| Err(Error::malformed(path, r.to_string()));
    match t.kind {
        TailKind::AInfChain => {
            if t.q.is_some() || t.p.is_some() {
                return bad("a_inf_chain takes no `q` or `p`");
            }
        }
        TailKind::Cartan(ty) => {
            let Some(q) = &t.q else { return bad("missing `q`") };
            if q.is_one() {
                return bad("Cartan tails need q != 1");
            }
            if matches!(ty, CartanType::BInf | CartanType::CInf) && q.pow(2).is_one() {
                return bad("B_inf and C_inf tails need q^2 != 1");
            }
            if t.p.is_some() {
                return bad("Cartan tails take no `p`");
            }
        }
        TailKind::Super(_) => {
            let Some(q) = &t.q else { return bad("missing `q`") };
            if q.is_one() || q.is_minus_one() {
                return bad("super tails need q != 1, -1");
            }
            let Some(p) = &t.p else { return bad("missing `p`") };
            if p.prefix.iter().chain(std::iter::once(&p.tail)).any(|&x| x != 1 && x != -1) {
                return bad("p entries must be 1 or -1");
            }
            if p.is_identically_one() {
                return bad("p must not be identically 1");
            }
        }
    }
    Ok(())
}
