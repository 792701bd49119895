use num_rational::BigRational;

use crate::scalar::MonoScalar;
use crate::space::{ghost_from_a, SkNode, Skeleton, TailLink, ValidatedSpec, VertexKind};

use super::patterns::SmallGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Block(crate::space::Sign),
    Point(MonoScalar),
    /// An infinite tail; its vertices are described by the skeleton tail.
    Tail(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlNode {
    pub id: String,
    pub kind: NodeKind,
    /// The node stands for one copy of an `omega` family.
    pub omega: bool,
}

impl FlNode {
    pub fn is_block(&self) -> bool {
        matches!(self.kind, NodeKind::Block(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeLabel {
    /// Point–point edge, `q̃ ≠ 1`.
    QTilde(MonoScalar),
    /// Weak block–point edge with nonzero ghost.
    Ghost(BigRational),
    /// Block–block edge, or a block–point edge whose interaction is not weak.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlEdge {
    pub a: usize,
    pub b: usize,
    pub label: EdgeLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Copies {
    One,
    /// Countably many disjoint copies.
    Omega,
    /// Countably many copies glued to a common part.
    Mixed,
}

impl Copies {
    pub fn of(flags: impl IntoIterator<Item = bool>) -> Copies {
        let (mut any, mut all) = (false, true);
        for f in flags {
            any |= f;
            all &= f;
        }
        match (any, all) {
            (false, _) => Copies::One,
            (true, true) => Copies::Omega,
            (true, false) => Copies::Mixed,
        }
    }
}

/// A connected component of the diagonal part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagComponent {
    pub nodes: Vec<usize>,
    pub copies: Copies,
}

impl DiagComponent {
    /// `X ∈ 𝒳_∞`: contains a tail or infinitely many glued copies.
    pub fn is_infinite(&self, g: &FlourishedGraph) -> bool {
        self.copies == Copies::Mixed || self.nodes.iter().any(|&n| matches!(g.nodes[n].kind, NodeKind::Tail(_)))
    }
}

/// A block–point edge from a block to a component of the diagonal part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub block: usize,
    pub at: usize,
    pub label: EdgeLabel,
}

/// The flourished graph. Node `k < skeleton.vertices.len()` is skeleton
/// vertex `k`; the remaining nodes are the tails, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlourishedGraph {
    pub nodes: Vec<FlNode>,
    pub edges: Vec<FlEdge>,
    pub diag: Vec<DiagComponent>,
    pub skeleton: Skeleton,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    p[x] = r;
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(p, a), find(p, b));
    if a != b {
        p[a.max(b)] = a.min(b);
    }
}

/// Builds the flourished graph of a validated space.
pub fn flourish(v: &ValidatedSpec) -> FlourishedGraph {
    let sk = &v.skeleton;
    let nv = sk.vertices.len();
    let mut nodes: Vec<FlNode> = sk
        .vertices
        .iter()
        .map(|x| FlNode {
            id: x.id.clone(),
            kind: match &x.kind {
                VertexKind::Block(s) => NodeKind::Block(*s),
                VertexKind::Point(q) => NodeKind::Point(q.clone()),
            },
            omega: x.omega.is_some(),
        })
        .collect();
    nodes.extend(sk.tails.iter().enumerate().map(|(k, t)| FlNode {
        id: t.shape.id.clone(),
        kind: NodeKind::Tail(k),
        omega: t.omega.is_some(),
    }));
    let mut edges = Vec::new();
    for (r, s) in sk.sim_edges() {
        let label = match (&sk.vertices[r].kind, &sk.vertices[s].kind) {
            (VertexKind::Block(_), VertexKind::Block(_)) => EdgeLabel::Plain,
            (VertexKind::Point(_), VertexKind::Point(_)) => {
                let p = sk.pair(r, s);
                EdgeLabel::QTilde(&p.q_rs * &p.q_sr)
            }
            (VertexKind::Block(sign), VertexKind::Point(_)) | (VertexKind::Point(_), VertexKind::Block(sign)) => {
                let (i, j) = if sk.vertices[r].kind.is_block() { (s, r) } else { (r, s) };
                let p = sk.pair(i, j);
                if (&p.q_rs * &p.q_sr).is_one() && !num_traits::Zero::is_zero(&p.a_rs) {
                    EdgeLabel::Ghost(ghost_from_a(*sign, &p.a_rs))
                } else {
                    EdgeLabel::Plain
                }
            }
        };
        edges.push(FlEdge { a: r, b: s, label });
    }
    for (k, t) in sk.tails.iter().enumerate() {
        if !t.is_linked() {
            continue;
        }
        let label = match &t.link {
            TailLink::None => continue,
            TailLink::Point {
                q_src_entry,
                q_entry_src,
                ..
            } => EdgeLabel::QTilde(q_src_entry * q_entry_src),
            TailLink::Block { source, a } => {
                let VertexKind::Block(sign) = sk.vertices[*source].kind else { continue };
                EdgeLabel::Ghost(ghost_from_a(sign, a))
            }
        };
        edges.push(FlEdge {
            a: t.source().expect("linked tail has a source"),
            b: nv + k,
            label,
        });
    }
    let n = nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in &edges {
        if !nodes[e.a].is_block() && !nodes[e.b].is_block() {
            union(&mut parent, e.a, e.b);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for k in (0..n).filter(|&k| !nodes[k].is_block()) {
        groups.entry(find(&mut parent, k)).or_default().push(k);
    }
    let diag = groups
        .into_values()
        .map(|nodes_x| DiagComponent {
            copies: Copies::of(nodes_x.iter().map(|&k| nodes[k].omega)),
            nodes: nodes_x,
        })
        .collect();
    FlourishedGraph {
        nodes,
        edges,
        diag,
        skeleton: sk.clone(),
    }
}

impl FlourishedGraph {
    pub fn node_of(&self, n: SkNode) -> usize {
        match n {
            SkNode::Vertex(k) => k,
            SkNode::Tail(k) => self.skeleton.vertices.len() + k,
        }
    }

    pub fn sk_node(&self, k: usize) -> SkNode {
        let nv = self.skeleton.vertices.len();
        if k < nv {
            SkNode::Vertex(k)
        } else {
            SkNode::Tail(k - nv)
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&k| self.nodes[k].is_block())
    }

    /// Edges from blocks into `x`, sorted by block then vertex.
    pub fn connections(&self, x: &DiagComponent) -> Vec<Connection> {
        let mut out: Vec<Connection> = self
            .edges
            .iter()
            .filter_map(|e| {
                let (blk, at) = if self.nodes[e.a].is_block() { (e.a, e.b) } else { (e.b, e.a) };
                (self.nodes[blk].is_block() && !self.nodes[at].is_block() && x.nodes.contains(&at)).then(|| Connection {
                    block: blk,
                    at,
                    label: e.label.clone(),
                })
            })
            .collect();
        out.sort_by_key(|c| (c.block, c.at));
        out
    }

    /// The name of the vertex a connection lands on: the point itself, or
    /// the entry vertex of a tail.
    pub fn vertex_name(&self, at: usize) -> String {
        match &self.nodes[at].kind {
            NodeKind::Tail(k) => {
                let shape = &self.skeleton.tails[*k].shape;
                shape.vertex_name(shape.entry)
            }
            _ => self.nodes[at].id.clone(),
        }
    }

    /// A finite component as a small decorated graph, with node indices.
    pub fn small_graph(&self, x: &DiagComponent) -> (SmallGraph, Vec<usize>) {
        let idx = x.nodes.clone();
        let labels = idx
            .iter()
            .map(|&k| match &self.nodes[k].kind {
                NodeKind::Point(q) => q.clone(),
                _ => MonoScalar::one(),
            })
            .collect();
        let pos = |k: usize| idx.iter().position(|&m| m == k);
        let edges = self
            .edges
            .iter()
            .filter_map(|e| match (&e.label, pos(e.a), pos(e.b)) {
                (EdgeLabel::QTilde(l), Some(a), Some(b)) => Some((a, b, l.clone())),
                _ => None,
            })
            .collect();
        (SmallGraph { labels, edges }, idx)
    }

    /// Edges between two blocks.
    pub fn block_edges(&self) -> impl Iterator<Item = &FlEdge> + '_ {
        self.edges
            .iter()
            .filter(|e| self.nodes[e.a].is_block() && self.nodes[e.b].is_block())
    }
}
