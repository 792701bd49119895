use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gkdim::GKDim;
use crate::scalar::MonoScalar;
use crate::space::CartanType;

use super::template::{DiagonalTemplate, Window};

const DATA_FILE: &str = "infinite_types.toml";
const DATA: &str = include_str!("../../data/infinite_types.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    OneSided,
    TwoSided,
    Fork,
}

#[derive(Deserialize)]
struct RawForms {
    local: Vec<[String; 3]>,
    leaf: Vec<[String; 2]>,
}

#[derive(Deserialize)]
struct RawCartan {
    #[serde(rename = "type")]
    ty: CartanType,
    shape: Shape,
    entries: Vec<[i64; 3]>,
}

#[derive(Deserialize)]
struct RawSuper {
    #[serde(rename = "type")]
    ty: CartanType,
    shape: Shape,
    #[serde(default)]
    minus_one: Vec<usize>,
    #[serde(default)]
    not_minus_one: Vec<usize>,
    rule_from: usize,
    #[serde(default)]
    leaves: Vec<usize>,
    rules: Vec<String>,
    q: String,
}

#[derive(Deserialize)]
struct RawData {
    forms: RawForms,
    cartan: Vec<RawCartan>,
    #[serde(rename = "super")]
    super_: Vec<RawSuper>,
}

struct CartanRow {
    ty: CartanType,
    shape: Shape,
    entries: BTreeMap<(usize, usize), i64>,
}

struct SuperRow {
    ty: CartanType,
    shape: Shape,
    minus_one: Vec<usize>,
    not_minus_one: Vec<usize>,
    rule_from: usize,
    leaves: Vec<usize>,
    rules: Vec<(MonoScalar, MonoScalar)>,
    q: MonoScalar,
}

struct Tables {
    local: Vec<[MonoScalar; 3]>,
    leaf: Vec<[MonoScalar; 2]>,
    cartan: Vec<CartanRow>,
    supers: Vec<SuperRow>,
}

fn data_err(reason: impl Into<String>) -> Error {
    Error::Data {
        file: DATA_FILE.into(),
        reason: reason.into(),
    }
}

fn mono(s: &str) -> Result<MonoScalar> {
    s.parse().map_err(|e| data_err(format!("`{s}`: {e}")))
}

enum Symbol {
    Vertex(usize),
    Edge(usize, usize),
}

fn symbol(name: &str) -> Option<Symbol> {
    let digits = |s: &str| s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty();
    if let Some(n) = name.strip_prefix('v') {
        return digits(n).then(|| Symbol::Vertex(n.parse().unwrap()));
    }
    if let Some(n) = name.strip_prefix('e') {
        if n.len() == 2 && digits(n) {
            let b = n.as_bytes();
            return Some(Symbol::Edge((b[0] - b'0') as usize, (b[1] - b'0') as usize));
        }
    }
    None
}

fn check_symbols(m: &MonoScalar) -> Result<()> {
    for name in m.free().keys() {
        if symbol(name).is_none() {
            return Err(data_err(format!("unknown symbol `{name}`")));
        }
    }
    Ok(())
}

/// Substitutes every indeterminate of `m`.
fn substitute(m: &MonoScalar, value: &dyn Fn(&str) -> Option<MonoScalar>) -> Option<MonoScalar> {
    let mut out = MonoScalar::from_parts(m.torsion(), BTreeMap::new());
    for (name, k) in m.free() {
        out = &out * &value(name)?.pow(*k);
    }
    Some(out)
}

fn load() -> Result<Tables> {
    let raw: RawData = toml::from_str(DATA).map_err(|e| data_err(e.to_string()))?;
    let local = raw
        .forms
        .local
        .iter()
        .map(|f| Ok([mono(&f[0])?, mono(&f[1])?, mono(&f[2])?]))
        .collect::<Result<Vec<_>>>()?;
    let leaf = raw
        .forms
        .leaf
        .iter()
        .map(|f| Ok([mono(&f[0])?, mono(&f[1])?]))
        .collect::<Result<Vec<_>>>()?;
    let cartan = raw
        .cartan
        .into_iter()
        .map(|c| CartanRow {
            ty: c.ty,
            shape: c.shape,
            entries: c.entries.iter().map(|e| ((e[0] as usize, e[1] as usize), e[2])).collect(),
        })
        .collect();
    let mut supers = Vec::new();
    for s in raw.super_ {
        let mut rules = Vec::new();
        for r in &s.rules {
            let (l, rhs) = r.split_once('=').ok_or_else(|| data_err(format!("rule `{r}` has no `=`")))?;
            let (l, rhs) = (mono(l.trim())?, mono(rhs.trim())?);
            check_symbols(&l)?;
            check_symbols(&rhs)?;
            rules.push((l, rhs));
        }
        let q = mono(&s.q)?;
        check_symbols(&q)?;
        if s.rule_from == 0 {
            return Err(data_err("rule_from is 1-based"));
        }
        supers.push(SuperRow {
            ty: s.ty,
            shape: s.shape,
            minus_one: s.minus_one,
            not_minus_one: s.not_minus_one,
            rule_from: s.rule_from,
            leaves: s.leaves,
            rules,
            q,
        });
    }
    Ok(Tables {
        local,
        leaf,
        cartan,
        supers,
    })
}

fn tables() -> Result<&'static Tables> {
    static TABLES: OnceLock<Result<Tables>> = OnceLock::new();
    TABLES.get_or_init(load).as_ref().map_err(Clone::clone)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InfiniteTypeTag {
    Cartan(CartanType),
    Super {
        kind: CartanType,
        q: MonoScalar,
        /// `p` over the inspected window, in diagram order.
        p: Vec<i8>,
        /// `min { i : p_i = -1 }` for diagrams indexed by `ℕ`.
        d: Option<usize>,
    },
    None,
}

impl fmt::Display for InfiniteTypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteTypeTag::Cartan(t) => write!(f, "Cartan {t}"),
            InfiniteTypeTag::Super { kind, q, p, d } => {
                let p: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "super {kind}(q = {q}, p = [{}, ...]", p.join(", "))?;
                if let Some(d) = d {
                    write!(f, ", d = {d}")?;
                }
                write!(f, ")")
            }
            InfiniteTypeTag::None => write!(f, "none"),
        }
    }
}

/// A settled window laid out in diagram order.
struct Linear<'a> {
    window: &'a Window,
    shape: Shape,
    /// `order[k]` is the window index of vertex `k + 1`.
    order: Vec<usize>,
    number: Vec<usize>,
}

impl Linear<'_> {
    fn label(&self, v: usize) -> &MonoScalar {
        &self.window.labels[self.order[v - 1]]
    }

    fn edge(&self, u: usize, v: usize) -> MonoScalar {
        self.window.edge_label(self.order[u - 1], self.order[v - 1])
    }

    fn is_cut(&self, v: usize) -> bool {
        self.window.cut.contains(&self.order[v - 1])
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self.window.neighbours(self.order[v - 1]).into_iter().map(|(u, _)| self.number[u]).collect();
        n.sort();
        n
    }

    fn symbol(&self, name: &str) -> Option<MonoScalar> {
        match symbol(name)? {
            Symbol::Vertex(v) if v >= 1 && v <= self.order.len() => Some(self.label(v).clone()),
            Symbol::Edge(u, v) if u >= 1 && v >= 1 && u.max(v) <= self.order.len() => Some(self.edge(u, v)),
            _ => None,
        }
    }
}

fn connected(w: &Window) -> bool {
    let n = w.labels.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for (u, _) in w.neighbours(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn walk(w: &Window, start: usize, prefix: Vec<usize>) -> Vec<usize> {
    let mut order = prefix;
    let mut prev = order.last().copied();
    let mut cur = start;
    loop {
        order.push(cur);
        let next = w.neighbours(cur).into_iter().map(|(u, _)| u).find(|&u| Some(u) != prev && !order.contains(&u));
        match next {
            Some(u) => {
                prev = Some(cur);
                cur = u;
            }
            None => return order,
        }
    }
}

fn linearize(w: &Window, rays: usize) -> Option<Linear<'_>> {
    let n = w.labels.len();
    if w.edges.len() + 1 != n {
        return None;
    }
    let deg: Vec<usize> = (0..n).map(|v| w.neighbours(v).len()).collect();
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    let (shape, order) = match (rays, branch.as_slice()) {
        (1, []) => {
            let cut = *w.cut.first()?;
            let start = (0..n).find(|&v| deg[v] <= 1 && v != cut)?;
            (Shape::OneSided, walk(w, start, vec![]))
        }
        (2, []) => {
            if w.cut.len() != 2 || deg[w.cut[1]] > 1 {
                return None;
            }
            (Shape::TwoSided, walk(w, w.cut[1], vec![]))
        }
        (1, [c]) if deg[*c] == 3 => {
            let cut = *w.cut.first()?;
            let nb: Vec<usize> = w.neighbours(*c).into_iter().map(|(u, _)| u).collect();
            let leaves: Vec<usize> = nb.iter().copied().filter(|&u| deg[u] == 1 && u != cut).collect();
            let arm: Vec<usize> = nb.iter().copied().filter(|u| !leaves.contains(u)).collect();
            match (leaves.as_slice(), arm.as_slice()) {
                ([a, b], [r]) => (Shape::Fork, walk(w, *r, vec![*a.min(b), *a.max(b), *c])),
                _ => return None,
            }
        }
        _ => return None,
    };
    if order.len() != n {
        return None;
    }
    let mut number = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        number[v] = k + 1;
    }
    Some(Linear {
        window: w,
        shape,
        order,
        number,
    })
}

fn is_cartan(l: &Linear, row: &CartanRow) -> bool {
    if l.shape != row.shape {
        return false;
    }
    (1..=l.order.len()).all(|i| {
        let qi = l.label(i);
        !qi.is_one()
            && l.neighbours(i).into_iter().all(|j| {
                let a = row.entries.get(&(i, j)).copied().unwrap_or(-1);
                l.edge(i, j) == qi.pow(a)
            })
    })
}

fn super_tag(l: &Linear, row: &SuperRow, t: &Tables) -> Option<InfiniteTypeTag> {
    if l.shape != row.shape || l.order.len() < row.rule_from + 1 {
        return None;
    }
    if row.minus_one.iter().any(|&v| !l.label(v).is_minus_one()) || row.not_minus_one.iter().any(|&v| l.label(v).is_minus_one()) {
        return None;
    }
    let entering = if row.rule_from == 1 { (1, 2) } else { (row.rule_from - 1, row.rule_from) };
    let big_q = l.edge(entering.0, entering.1);
    if big_q.is_one() || big_q.is_minus_one() {
        return None;
    }
    let in_q = |m: &MonoScalar| substitute(m, &|_| Some(big_q.clone()));
    let local: Vec<[MonoScalar; 3]> = t.local.iter().map(|f| [in_q(&f[0]).unwrap(), in_q(&f[1]).unwrap(), in_q(&f[2]).unwrap()]).collect();
    let leaf: Vec<[MonoScalar; 2]> = t.leaf.iter().map(|f| [in_q(&f[0]).unwrap(), in_q(&f[1]).unwrap()]).collect();
    for v in row.rule_from..=l.order.len() {
        if l.is_cut(v) {
            continue;
        }
        let nb = l.neighbours(v);
        let [left, right] = nb.as_slice() else { return None };
        let form = [l.edge(*left, v), l.label(v).clone(), l.edge(v, *right)];
        if !local.contains(&form) {
            return None;
        }
    }
    for &v in &row.leaves {
        let nb = l.neighbours(v);
        let [u] = nb.as_slice() else { return None };
        if !leaf.contains(&[l.label(v).clone(), l.edge(v, *u)]) {
            return None;
        }
    }
    let value = |name: &str| l.symbol(name);
    for (lhs, rhs) in &row.rules {
        if substitute(lhs, &value)? != substitute(rhs, &value)? {
            return None;
        }
    }
    let q = substitute(&row.q, &value)?;
    if q.is_one() || q.is_minus_one() {
        return None;
    }
    let p: Vec<i8> = (1..=l.order.len()).map(|v| if l.label(v).is_minus_one() { -1 } else { 1 }).collect();
    let first = p.iter().position(|&x| x == -1)?;
    let d = (row.shape != Shape::TwoSided).then_some(first + 1);
    Some(InfiniteTypeTag::Super {
        kind: row.ty,
        q,
        p,
        d,
    })
}

fn settled(t: &DiagonalTemplate) -> Result<Window> {
    if t.rays.is_empty() {
        return Err(Error::NotATemplate("the diagram is finite".into()));
    }
    let w = t.settled_window();
    if !connected(&w) {
        return Err(Error::NotATemplate("the diagram is not connected".into()));
    }
    Ok(w)
}

/// Recognizes a connected infinite diagonal diagram as one of the Cartan
/// or super types of finite presentation. Cartan types take precedence.
pub fn recognize_infinite(t: &DiagonalTemplate) -> Result<InfiniteTypeTag> {
    let tables = tables()?;
    let w = settled(t)?;
    let Some(l) = linearize(&w, t.rays.len()) else {
        return Ok(InfiniteTypeTag::None);
    };
    if let Some(row) = tables.cartan.iter().find(|row| is_cartan(&l, row)) {
        return Ok(InfiniteTypeTag::Cartan(row.ty));
    }
    Ok(tables
        .supers
        .iter()
        .find_map(|row| super_tag(&l, row, tables))
        .unwrap_or(InfiniteTypeTag::None))
}

/// `Finite(0)` when the diagram is recognized and its labels are roots of
/// unity; otherwise `Infinite`, which relies on the conjectural
/// classification.
pub fn classify_infinite_diagonal(t: &DiagonalTemplate) -> Result<GKDim> {
    let tag = recognize_infinite(t)?;
    let finite = match &tag {
        InfiniteTypeTag::Cartan(_) => t.settled_window().labels.iter().all(MonoScalar::is_root_of_unity),
        InfiniteTypeTag::Super { q, .. } => q.is_root_of_unity(),
        InfiniteTypeTag::None => false,
    };
    Ok(if finite { GKDim::finite(0) } else { GKDim::infinite() })
}
