//! Generalized Dynkin diagrams of the diagonal part.
//!
//! Vertices carry `q_ii`, edges carry `q̃_ih = q_ih q_hi` and are drawn only
//! when `q̃_ih ≠ 1`. Infinite diagrams are finitely presented as a
//! [`DiagonalTemplate`]: a finite prefix plus eventually periodic rays.

mod recognize;
mod template;

pub use recognize::{classify_infinite_diagonal, recognize_infinite, InfiniteTypeTag, Shape};
pub use template::{DiagonalTemplate, Ray, RayNaming, RayStep, VertexRef, Window};

use crate::error::{Error, Result};
use crate::space::{validate, BraidedSpaceSpec, Multiplicity, SkNode, Skeleton, TailLink, VertexKind};

/// A generalized Dynkin diagram, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub template: DiagonalTemplate,
}

impl DynkinDiagram {
    pub fn is_finite(&self) -> bool {
        self.template.is_finite()
    }

    /// Vertices of the finite part with their labels.
    pub fn vertices(&self) -> impl Iterator<Item = (&str, &crate::scalar::MonoScalar)> {
        self.template.names.iter().map(String::as_str).zip(&self.template.labels)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &crate::scalar::MonoScalar)> {
        self.template
            .edges
            .iter()
            .map(|(a, b, l)| (self.template.names[*a].as_str(), self.template.names[*b].as_str(), l))
    }
}

/// The diagram of a set of skeleton nodes. Block nodes are rejected;
/// an `omega` family contributes its representative copy.
pub fn template_of(sk: &Skeleton, nodes: &[SkNode]) -> Result<DiagonalTemplate> {
    let mut t = DiagonalTemplate::default();
    let mut local = vec![None; sk.vertices.len()];
    for node in nodes {
        if let SkNode::Vertex(v) = node {
            let vx = &sk.vertices[*v];
            let VertexKind::Point(q) = &vx.kind else {
                return Err(Error::NotDiagonal(vx.id.clone()));
            };
            local[*v] = Some(t.add_vertex(vx.id.clone(), q.clone()));
        }
    }
    for p in &sk.pairs {
        if let (Some(a), Some(b)) = (local[p.r], local[p.s]) {
            let qt = &p.q_rs * &p.q_sr;
            if !qt.is_one() {
                t.edges.push((a, b, qt));
            }
        }
    }
    for node in nodes {
        let SkNode::Tail(k) = node else { continue };
        let tail = &sk.tails[*k];
        let shape = &tail.shape.template;
        let offset = t.labels.len();
        let rays = t.rays.len();
        for (name, label) in shape.names.iter().zip(&shape.labels) {
            t.add_vertex(name.clone(), label.clone());
        }
        t.edges.extend(shape.edges.iter().map(|(a, b, l)| (a + offset, b + offset, l.clone())));
        for (ray, naming) in shape.rays.iter().zip(&shape.ray_names) {
            let mut ray = ray.clone();
            ray.anchor = ray.anchor.map(|(a, l)| (a + offset, l));
            t.rays.push(ray);
            t.ray_names.push(naming.clone());
        }
        let (source, qt) = match &tail.link {
            TailLink::None | TailLink::Block { .. } => continue,
            TailLink::Point {
                source,
                q_src_entry,
                q_entry_src,
            } => (*source, q_src_entry * q_entry_src),
        };
        let Some(src) = local[source] else { continue };
        if qt.is_one() {
            continue;
        }
        match tail.shape.entry {
            VertexRef::Prefix(i) => t.edges.push((src, offset + i, qt)),
            VertexRef::Ray(r, _) => t.rays[rays + r].anchor = Some((src, qt)),
        }
    }
    Ok(t)
}

/// The Dynkin diagram of a diagonal spec.
pub fn dynkin(spec: &BraidedSpaceSpec) -> Result<DynkinDiagram> {
    if let Some(b) = spec.blocks.first() {
        return Err(Error::NotDiagonal(b.id.clone()));
    }
    let v = validate(spec)?;
    if let Some(f) = spec.families.iter().find(|f| f.count == Multiplicity::Omega) {
        return Err(Error::NotATemplate(format!("family `{}` stands for infinitely many copies", f.id)));
    }
    let nodes: Vec<SkNode> = v.components.iter().flatten().copied().collect();
    Ok(DynkinDiagram {
        template: template_of(&v.skeleton, &nodes)?,
    })
}

/// Classes of `≈`, by vertex id; a tail appears under its own id.
pub fn components(spec: &BraidedSpaceSpec) -> Result<Vec<Vec<String>>> {
    let v = validate(spec)?;
    Ok(v.components
        .iter()
        .map(|c| {
            c.iter()
                .map(|n| match n {
                    SkNode::Vertex(k) => v.skeleton.vertices[*k].id.clone(),
                    SkNode::Tail(k) => v.skeleton.tails[*k].shape.id.clone(),
                })
                .collect()
        })
        .collect())
}
