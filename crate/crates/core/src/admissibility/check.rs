use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;

use crate::diagram::{classify_infinite_diagonal, template_of};
use crate::error::Result;
use crate::gkdim::GKDim;
use crate::scalar::MonoScalar;
use crate::space::{validate, BraidedSpaceSpec, SkNode};

use super::gkdim::Contributions;
use super::graph::{flourish, Copies, DiagComponent, EdgeLabel, FlourishedGraph, NodeKind};
use super::patterns::{PatternTable, Table};

pub const UNKNOWN_FINITE_DIAGONAL: &str = "UNKNOWN_FINITE_DIAGONAL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    Diagonal,
    Blocky,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Diagonal => "DIAGONAL",
            ComponentKind::Blocky => "BLOCKY",
        })
    }
}

/// A violated admissibility clause with the vertices and edges involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: char,
    pub witness: Vec<String>,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}: {}", self.clause, self.witness.join(", "), self.reason)
    }
}

/// A block–component connection found in the tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMatch {
    pub block: String,
    pub component: String,
    pub row: String,
    pub table: Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub id: String,
    pub kind: ComponentKind,
    pub copies: Copies,
    pub vertices: Vec<String>,
    pub admissible: bool,
    pub violations: Vec<Violation>,
    pub matches: Vec<TableMatch>,
    pub gkdim: GKDim,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub space: String,
    pub components: Vec<ComponentVerdict>,
    pub total: GKDim,
}

impl Verdict {
    pub fn is_admissible(&self) -> bool {
        self.components.iter().all(|c| c.admissible)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.components.iter().flat_map(|c| &c.violations)
    }

    /// The set of violated clauses, over all components.
    pub fn clauses(&self) -> BTreeSet<char> {
        self.violations().map(|v| v.clause).collect()
    }
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

struct Assessment {
    violations: Vec<Violation>,
    matches: Vec<TableMatch>,
    gkdim: GKDim,
    note: Option<String>,
}

fn violation(clause: char, witness: Vec<String>, reason: impl Into<String>) -> Violation {
    Violation {
        clause,
        witness,
        reason: reason.into(),
    }
}

/// Whether `x` together with its block is the infinite chain
/// `⊞ -1- •(-1) -(-1)- ∘(-1) -(-1)- ⋯` with the black point at `black`.
fn is_minus_one_chain(g: &FlourishedGraph, x: &DiagComponent, black: &str) -> bool {
    let nodes: Vec<SkNode> = x.nodes.iter().map(|&k| g.sk_node(k)).collect();
    let Ok(t) = template_of(&g.skeleton, &nodes) else { return false };
    if t.rays.len() != 1 {
        return false;
    }
    let w = t.window_with(&[t.rays[0].settle_len() + 2]);
    let n = w.labels.len();
    if w.edges.len() + 1 != n || w.labels.iter().chain(w.edges.iter().map(|e| &e.2)).any(|l| !l.is_minus_one()) {
        return false;
    }
    let Some(start) = w.refs.iter().position(|r| t.name(*r) == black) else { return false };
    if w.cut.contains(&start) || w.neighbours(start).len() != 1 {
        return false;
    }
    let (mut prev, mut cur, mut seen) = (usize::MAX, start, 1);
    loop {
        let next: Vec<usize> = w.neighbours(cur).into_iter().map(|(u, _)| u).filter(|&u| u != prev).collect();
        match next.as_slice() {
            [] => break,
            [u] => {
                prev = cur;
                cur = *u;
                seen += 1;
            }
            _ => return false,
        }
    }
    seen == n && w.cut == [cur]
}

fn x_name(g: &FlourishedGraph, x: &DiagComponent) -> String {
    g.nodes[x.nodes[0]].id.clone()
}

fn assess_blocky(
    g: &FlourishedGraph,
    members: &BTreeSet<usize>,
    all_omega: bool,
    patterns: &PatternTable,
    contributions: &Contributions,
) -> Assessment {
    let omega = |k: usize| g.nodes[k].omega && !all_omega;
    let mut violations = Vec::new();
    let mut matches = Vec::new();
    let blocks: Vec<usize> = members.iter().copied().filter(|&k| g.nodes[k].is_block()).collect();
    for &b in &blocks {
        if omega(b) {
            violations.push(violation(
                'a',
                vec![g.nodes[b].id.clone()],
                "the block stands for infinitely many blocks",
            ));
        }
    }
    for e in g.block_edges().filter(|e| members.contains(&e.a)) {
        violations.push(violation(
            'b',
            vec![g.nodes[e.a].id.clone(), g.nodes[e.b].id.clone()],
            "edge between blocks",
        ));
    }
    let mut extra = GKDim::finite(0);
    let mut missing = BTreeSet::new();
    for x in g.diag.iter().filter(|x| members.contains(&x.nodes[0])) {
        let xid = x_name(g, x);
        let conns = g.connections(x);
        let copies = if all_omega { Copies::One } else { x.copies };
        let linked_blocks: BTreeSet<usize> = conns.iter().map(|c| c.block).collect();
        let linked_at: BTreeSet<usize> = conns.iter().map(|c| c.at).collect();
        let bname = |b: usize| g.nodes[b].id.clone();
        if x.is_infinite(g) {
            let mut witness = vec![xid.clone()];
            witness.extend(linked_blocks.iter().map(|&b| bname(b)));
            let reason = if copies == Copies::Mixed {
                Some("infinitely many copies glued to a common vertex")
            } else if linked_blocks.len() != 1 {
                Some("an infinite component must be connected to a unique block")
            } else if conns.len() != 1 {
                Some("an infinite component must meet its block at one point")
            } else {
                let c = &conns[0];
                let plus = matches!(g.nodes[c.block].kind, NodeKind::Block(crate::space::Sign::Plus));
                if !plus || c.label != EdgeLabel::Ghost(one()) || !is_minus_one_chain(g, x, &g.vertex_name(c.at)) {
                    Some("the connection is not a ⊞ -1- chain of points -1 with edges -1")
                } else {
                    None
                }
            };
            if let Some(r) = reason {
                violations.push(violation('i', witness, r));
            }
            continue;
        }
        if linked_at.len() > 1 {
            let mut w: Vec<String> = vec![xid.clone()];
            w.extend(linked_at.iter().map(|&k| g.nodes[k].id.clone()));
            violations.push(violation('e', w, "more than one vertex is connected to a block"));
        }
        if x.nodes.len() > 1 && linked_blocks.len() > 1 {
            let mut w = vec![xid.clone()];
            w.extend(linked_blocks.iter().map(|&b| bname(b)));
            violations.push(violation('f', w, "a component with several points meets several blocks"));
        }
        if x.nodes.len() == 1 && linked_blocks.len() > 1 {
            if let NodeKind::Point(q) = &g.nodes[x.nodes[0]].kind {
                if q.is_primitive_root(3) {
                    let mut w = vec![xid.clone()];
                    w.extend(linked_blocks.iter().map(|&b| bname(b)));
                    violations.push(violation('g', w, "a point with label in G'_3 meets several blocks"));
                }
            }
        }
        let (small, idx) = g.small_graph(x);
        let mut t3 = Vec::new();
        for &b in &linked_blocks {
            let mine: Vec<_> = conns.iter().filter(|c| c.block == b).collect();
            if mine.len() != 1 {
                continue;
            }
            let c = mine[0];
            let witness = vec![bname(b), g.nodes[c.at].id.clone()];
            let NodeKind::Block(sign) = g.nodes[b].kind else { continue };
            let EdgeLabel::Ghost(ghost) = &c.label else {
                violations.push(violation('c', witness, "the interaction is not weak"));
                continue;
            };
            let black = idx.iter().position(|&k| k == c.at).expect("connection lands in the component");
            match patterns.match_connection(sign, ghost, &small, black) {
                None => violations.push(violation('c', witness, "the connection is not in the T3 and T4 tables")),
                Some(row) => {
                    matches.push(TableMatch {
                        block: bname(b),
                        component: xid.clone(),
                        row: row.id.clone(),
                        table: row.table,
                    });
                    if row.table == Table::T3 {
                        if copies != Copies::One {
                            violations.push(violation('d', witness, format!("infinitely many {} connections", row.id)));
                        }
                        t3.push((row.id.clone(), ghost.clone()));
                    }
                }
            }
        }
        match (t3.as_slice(), linked_blocks.len()) {
            ([], _) => {}
            ([(row, ghost)], 1) => match contributions.contribution(row, ghost) {
                Some(c) => extra = extra + GKDim::finite(c),
                None => {
                    missing.insert(row.clone());
                    extra = extra + GKDim::at_least(1);
                }
            },
            _ => {
                missing.insert(format!("{xid} with several blocks"));
                extra = extra + GKDim::at_least(1);
            }
        }
    }
    let gkdim = if violations.is_empty() {
        GKDim::finite(2 * blocks.len() as u64) + extra
    } else {
        GKDim::infinite()
    };
    let note = (violations.is_empty() && !missing.is_empty())
        .then(|| format!("no exact contribution for {}", missing.into_iter().collect::<Vec<_>>().join(", ")));
    Assessment {
        violations,
        matches,
        gkdim,
        note,
    }
}

fn assess_diagonal(g: &FlourishedGraph, members: &BTreeSet<usize>, all_omega: bool) -> Result<Assessment> {
    let copies = if all_omega {
        Copies::One
    } else {
        Copies::of(members.iter().map(|&k| g.nodes[k].omega))
    };
    let ok = |gkdim, note: Option<String>| Assessment {
        violations: vec![],
        matches: vec![],
        gkdim,
        note,
    };
    if copies == Copies::Mixed {
        return Ok(ok(
            GKDim::infinite(),
            Some("infinitely many copies glued to a common vertex".into()),
        ));
    }
    let has_tail = members.iter().any(|&k| matches!(g.nodes[k].kind, NodeKind::Tail(_)));
    if has_tail {
        let nodes: Vec<SkNode> = members.iter().map(|&k| g.sk_node(k)).collect();
        let t = template_of(&g.skeleton, &nodes)?;
        return Ok(ok(classify_infinite_diagonal(&t)?, None));
    }
    let labels: Vec<&MonoScalar> = members
        .iter()
        .filter_map(|&k| match &g.nodes[k].kind {
            NodeKind::Point(q) => Some(q),
            _ => None,
        })
        .collect();
    let polynomial = |q: &MonoScalar| q.is_one() || !q.is_root_of_unity();
    if let [q] = labels.as_slice() {
        return Ok(ok(GKDim::finite(u64::from(polynomial(q))), None));
    }
    let bound = u64::from(labels.iter().any(|q| polynomial(q)));
    Ok(ok(GKDim::at_least(bound), Some(UNKNOWN_FINITE_DIAGONAL.into())))
}

/// Classifies every `≈`-component of a flourished graph and aggregates.
pub fn classify(g: &FlourishedGraph, contributions: &Contributions) -> Result<Verdict> {
    let patterns = PatternTable::builtin()?;
    let mut components = Vec::new();
    for comp in g.skeleton.components() {
        let members: BTreeSet<usize> = comp.iter().map(|&n| g.node_of(n)).collect();
        let copies = Copies::of(members.iter().map(|&k| g.nodes[k].omega));
        let all_omega = copies == Copies::Omega;
        let blocky = members.iter().any(|&k| g.nodes[k].is_block());
        let a = if blocky {
            assess_blocky(g, &members, all_omega, patterns, contributions)
        } else {
            assess_diagonal(g, &members, all_omega)?
        };
        let admissible = if blocky {
            a.violations.is_empty()
        } else {
            !a.gkdim.is_infinite()
        };
        components.push(ComponentVerdict {
            id: g.nodes[*members.first().expect("components are nonempty")].id.clone(),
            kind: if blocky { ComponentKind::Blocky } else { ComponentKind::Diagonal },
            copies,
            vertices: members.iter().map(|&k| g.nodes[k].id.clone()).collect(),
            admissible,
            violations: a.violations,
            matches: a.matches,
            gkdim: a.gkdim,
            note: a.note,
        });
    }
    let total = components
        .iter()
        .map(|c| {
            if c.copies == Copies::Omega && c.gkdim.is_positive() {
                GKDim::infinite()
            } else {
                c.gkdim
            }
        })
        .sum();
    Ok(Verdict {
        space: String::new(),
        components,
        total,
    })
}

/// Admissibility of every component, without exact T3 values.
pub fn check_admissible(g: &FlourishedGraph) -> Result<Verdict> {
    classify(g, &Contributions::default())
}

/// Total GKdim of the blocky components.
pub fn gkdim_blocky(g: &FlourishedGraph, contributions: &Contributions) -> Result<GKDim> {
    Ok(classify(g, contributions)?
        .components
        .iter()
        .filter(|c| c.kind == ComponentKind::Blocky)
        .map(|c| c.gkdim)
        .sum())
}

/// Verdict for a whole space.
pub fn gkdim_space(spec: &BraidedSpaceSpec, contributions: &Contributions) -> Result<Verdict> {
    let v = validate(spec)?;
    let mut verdict = classify(&flourish(&v), contributions)?;
    verdict.space = spec.name.clone();
    Ok(verdict)
}
