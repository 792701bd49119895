use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{is_positive_integer, MonoScalar};
use crate::space::Sign;

const DATA_FILE: &str = "patterns.toml";
const DATA: &str = include_str!("../../data/patterns.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    T3,
    T4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GhostCondition {
    Natural,
    Exactly(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RCondition {
    NotRootOfUnity,
    RootOfUnityNotPm1,
}

/// One row of the connection tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternRow {
    pub id: String,
    pub table: Table,
    pub block: Sign,
    pub ghost: GhostCondition,
    /// Vertex 0 is the black point.
    pub vertices: Vec<MonoScalar>,
    pub edges: Vec<(usize, usize, MonoScalar)>,
    pub chain: Option<usize>,
    pub r: Option<RCondition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternTable {
    pub rows: Vec<PatternRow>,
}

/// A finite connected diagonal component with a distinguished black point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    pub labels: Vec<MonoScalar>,
    pub edges: Vec<(usize, usize, MonoScalar)>,
}

impl SmallGraph {
    pub fn edge(&self, u: usize, v: usize) -> MonoScalar {
        self.edges
            .iter()
            .find(|(a, b, _)| (*a == u && *b == v) || (*a == v && *b == u))
            .map(|e| e.2.clone())
            .unwrap_or_else(MonoScalar::one)
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|(a, b, _)| {
                if *a == v {
                    Some(*b)
                } else if *b == v {
                    Some(*a)
                } else {
                    None
                }
            })
            .collect()
    }
}

#[derive(Deserialize)]
struct RawEdge {
    a: usize,
    b: usize,
    label: String,
}

#[derive(Deserialize)]
struct RawRow {
    id: String,
    table: u8,
    block: Sign,
    ghost: String,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    #[serde(default)]
    chain: bool,
    min_len: Option<usize>,
    r: Option<RCondition>,
}

#[derive(Deserialize)]
struct RawTable {
    row: Vec<RawRow>,
}

fn data_err(reason: impl Into<String>) -> Error {
    Error::Data {
        file: DATA_FILE.into(),
        reason: reason.into(),
    }
}

const PARAMS: [&str; 2] = ["omega", "r"];

fn label(s: &str) -> Result<MonoScalar> {
    let m: MonoScalar = s.parse().map_err(|e| data_err(format!("`{s}`: {e}")))?;
    if let Some(name) = m.free().keys().find(|k| !PARAMS.contains(&k.as_str())) {
        return Err(data_err(format!("unknown parameter `{name}`")));
    }
    Ok(m)
}

impl PatternTable {
    pub fn parse(text: &str) -> Result<PatternTable> {
        let raw: RawTable = toml::from_str(text).map_err(|e| data_err(e.to_string()))?;
        let mut rows = Vec::new();
        for r in raw.row {
            let table = match r.table {
                3 => Table::T3,
                4 => Table::T4,
                t => return Err(data_err(format!("{}: unknown table {t}", r.id))),
            };
            let ghost = match r.ghost.as_str() {
                "natural" => GhostCondition::Natural,
                g => GhostCondition::Exactly(g.parse().map_err(|_| data_err(format!("{}: bad ghost `{g}`", r.id)))?),
            };
            let vertices = r.vertices.iter().map(|v| label(v)).collect::<Result<Vec<_>>>()?;
            let mut edges = Vec::new();
            for e in &r.edges {
                if e.a >= vertices.len() || e.b >= vertices.len() || e.a == e.b {
                    return Err(data_err(format!("{}: bad edge {}-{}", r.id, e.a, e.b)));
                }
                edges.push((e.a, e.b, label(&e.label)?));
            }
            if vertices.is_empty() {
                return Err(data_err(format!("{}: no black point", r.id)));
            }
            let chain = if r.chain {
                if vertices.len() < 2 || edges.is_empty() {
                    return Err(data_err(format!("{}: a chain row needs two vertices and an edge", r.id)));
                }
                Some(r.min_len.unwrap_or(2))
            } else {
                None
            };
            rows.push(PatternRow {
                id: r.id,
                table,
                block: r.block,
                ghost,
                vertices,
                edges,
                chain,
                r: r.r,
            });
        }
        Ok(PatternTable { rows })
    }

    /// The tables shipped with the library.
    pub fn builtin() -> Result<&'static PatternTable> {
        static TABLE: OnceLock<Result<PatternTable>> = OnceLock::new();
        TABLE.get_or_init(|| PatternTable::parse(DATA)).as_ref().map_err(Clone::clone)
    }

    pub fn row(&self, id: &str) -> Option<&PatternRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// The first row matching, preferring T4.
    pub fn match_connection(&self, sign: Sign, ghost: &BigRational, x: &SmallGraph, black: usize) -> Option<&PatternRow> {
        let mut rows: Vec<&PatternRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| std::cmp::Reverse(r.table));
        rows.into_iter().find(|row| row.matches(sign, ghost, x, black))
    }
}

fn substitute(m: &MonoScalar, binding: &BTreeMap<&str, MonoScalar>) -> MonoScalar {
    let mut out = MonoScalar::from_parts(m.torsion(), BTreeMap::new());
    for (name, k) in m.free() {
        out = &out * &binding[name.as_str()].pow(*k);
    }
    out
}

impl PatternRow {
    fn uses(&self, p: &str) -> bool {
        self.vertices
            .iter()
            .chain(self.edges.iter().map(|e| &e.2))
            .any(|m| m.free().contains_key(p))
    }

    fn ghost_ok(&self, ghost: &BigRational) -> bool {
        match self.ghost {
            GhostCondition::Natural => is_positive_integer(ghost),
            GhostCondition::Exactly(n) => *ghost == BigRational::from_integer(n.into()),
        }
    }

    pub fn matches(&self, sign: Sign, ghost: &BigRational, x: &SmallGraph, black: usize) -> bool {
        if sign != self.block || !self.ghost_ok(ghost) {
            return false;
        }
        if let Some(min_len) = self.chain {
            return self.matches_chain(x, black, min_len);
        }
        if x.labels.len() != self.vertices.len() || x.edges.len() != self.edges.len() {
            return false;
        }
        let omegas = if self.uses("omega") {
            vec![MonoScalar::root_of_unity(3, 1), MonoScalar::root_of_unity(3, 2)]
        } else {
            vec![MonoScalar::one()]
        };
        let rs: Vec<MonoScalar> = if self.uses("r") {
            x.labels
                .iter()
                .chain(x.edges.iter().map(|e| &e.2))
                .flat_map(|l| [l.clone(), l.inv()])
                .collect()
        } else {
            vec![MonoScalar::one()]
        };
        for omega in &omegas {
            for r in &rs {
                if let Some(cond) = self.r {
                    let ok = match cond {
                        RCondition::NotRootOfUnity => !r.is_root_of_unity(),
                        RCondition::RootOfUnityNotPm1 => r.is_root_of_unity() && !r.is_one() && !r.is_minus_one(),
                    };
                    if !ok {
                        continue;
                    }
                }
                let binding: BTreeMap<&str, MonoScalar> = [("omega", omega.clone()), ("r", r.clone())].into();
                let labels: Vec<MonoScalar> = self.vertices.iter().map(|v| substitute(v, &binding)).collect();
                let edges: Vec<(usize, usize, MonoScalar)> =
                    self.edges.iter().map(|(a, b, l)| (*a, *b, substitute(l, &binding))).collect();
                let pattern = SmallGraph { labels, edges };
                if isomorphic(&pattern, x, black) {
                    return true;
                }
            }
        }
        false
    }

    fn matches_chain(&self, x: &SmallGraph, black: usize, min_len: usize) -> bool {
        let (vl, el) = (&self.vertices[1], &self.edges[0].2);
        let n = x.labels.len();
        if n < min_len || x.edges.len() + 1 != n || x.labels.iter().any(|l| l != vl) || x.edges.iter().any(|e| &e.2 != el) {
            return false;
        }
        if &self.vertices[0] != vl || x.neighbours(black).len() != 1 {
            return false;
        }
        (0..n).all(|v| x.neighbours(v).len() <= 2)
    }
}

/// Label-preserving isomorphism `pattern → x` sending vertex 0 to `black`.
fn isomorphic(pattern: &SmallGraph, x: &SmallGraph, black: usize) -> bool {
    let n = pattern.labels.len();
    if x.labels.len() != n {
        return false;
    }
    fn extend(p: &SmallGraph, x: &SmallGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == p.labels.len() {
            return true;
        }
        for v in 0..x.labels.len() {
            if used[v] || x.labels[v] != p.labels[k] {
                continue;
            }
            if (0..k).any(|i| p.edge(i, k) != x.edge(map[i], v)) {
                continue;
            }
            map.push(v);
            used[v] = true;
            if extend(p, x, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }
    if pattern.labels[0] != x.labels[black] {
        return false;
    }
    let mut used = vec![false; n];
    used[black] = true;
    extend(pattern, x, &mut vec![black], &mut used)
}
