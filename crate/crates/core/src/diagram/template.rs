use crate::scalar::MonoScalar;

/// One vertex of a ray together with the label of the edge to the next
/// vertex of the same ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayStep {
    pub label: MonoScalar,
    pub next: MonoScalar,
}

impl RayStep {
    pub fn new(label: MonoScalar, next: MonoScalar) -> Self {
        RayStep { label, next }
    }
}

/// An infinite path `head ++ cycle ++ cycle ++ …`, optionally joined to a
/// prefix vertex by an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    pub anchor: Option<(usize, MonoScalar)>,
    pub head: Vec<RayStep>,
    pub cycle: Vec<RayStep>,
}

impl Ray {
    pub fn step(&self, k: usize) -> &RayStep {
        if k < self.head.len() {
            &self.head[k]
        } else {
            &self.cycle[(k - self.head.len()) % self.cycle.len()]
        }
    }

    /// Number of leading vertices after which every local configuration
    /// has already been seen.
    pub fn settle_len(&self) -> usize {
        self.head.len() + 2 * self.cycle.len() + 2
    }
}

/// Ray vertex `i` is named `{base}.{offset + i·stride + 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayNaming {
    pub base: String,
    pub offset: usize,
    pub stride: usize,
}

impl RayNaming {
    pub fn simple(base: impl Into<String>) -> Self {
        RayNaming {
            base: base.into(),
            offset: 0,
            stride: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRef {
    Prefix(usize),
    Ray(usize, usize),
}

/// A finitely presented diagonal diagram: a finite prefix plus
/// eventually periodic rays.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagonalTemplate {
    pub names: Vec<String>,
    pub labels: Vec<MonoScalar>,
    pub edges: Vec<(usize, usize, MonoScalar)>,
    pub rays: Vec<Ray>,
    pub ray_names: Vec<RayNaming>,
}

/// A finite window of a template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub refs: Vec<VertexRef>,
    pub labels: Vec<MonoScalar>,
    pub edges: Vec<(usize, usize, MonoScalar)>,
    /// Indices of the last window vertex of each ray; the ray continues past them.
    pub cut: Vec<usize>,
}

impl Window {
    pub fn neighbours(&self, v: usize) -> Vec<(usize, MonoScalar)> {
        let mut out = Vec::new();
        for (a, b, l) in &self.edges {
            if *a == v {
                out.push((*b, l.clone()));
            } else if *b == v {
                out.push((*a, l.clone()));
            }
        }
        out
    }

    pub fn edge_label(&self, u: usize, v: usize) -> MonoScalar {
        self.edges
            .iter()
            .find(|(a, b, _)| (*a == u && *b == v) || (*a == v && *b == u))
            .map(|(_, _, l)| l.clone())
            .unwrap_or_else(MonoScalar::one)
    }
}

impl DiagonalTemplate {
    pub fn is_finite(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn label(&self, r: VertexRef) -> &MonoScalar {
        match r {
            VertexRef::Prefix(i) => &self.labels[i],
            VertexRef::Ray(k, i) => &self.rays[k].step(i).label,
        }
    }

    pub fn name(&self, r: VertexRef) -> String {
        match r {
            VertexRef::Prefix(i) => self.names[i].clone(),
            VertexRef::Ray(k, i) => {
                let n = &self.ray_names[k];
                format!("{}.{}", n.base, n.offset + i * n.stride + 1)
            }
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, label: MonoScalar) -> usize {
        self.names.push(name.into());
        self.labels.push(label);
        self.labels.len() - 1
    }

    /// The prefix together with the first `per_ray[k]` vertices of ray `k`.
    pub fn window_with(&self, per_ray: &[usize]) -> Window {
        let mut refs: Vec<VertexRef> = (0..self.labels.len()).map(VertexRef::Prefix).collect();
        let mut labels = self.labels.clone();
        let mut edges: Vec<(usize, usize, MonoScalar)> = self
            .edges
            .iter()
            .filter(|(_, _, l)| !l.is_one())
            .cloned()
            .collect();
        let mut cut = Vec::new();
        for (k, ray) in self.rays.iter().enumerate() {
            let len = per_ray.get(k).copied().unwrap_or(0);
            let mut prev: Option<(usize, MonoScalar)> = None;
            for i in 0..len {
                let step = ray.step(i);
                let idx = refs.len();
                refs.push(VertexRef::Ray(k, i));
                labels.push(step.label.clone());
                match (&prev, i) {
                    (Some((p, l)), _) => {
                        if !l.is_one() {
                            edges.push((*p, idx, l.clone()));
                        }
                    }
                    (None, 0) => {
                        if let Some((a, l)) = &ray.anchor {
                            if !l.is_one() {
                                edges.push((*a, idx, l.clone()));
                            }
                        }
                    }
                    _ => {}
                }
                prev = Some((idx, step.next.clone()));
            }
            if len > 0 {
                cut.push(refs.len() - 1);
            }
        }
        Window {
            refs,
            labels,
            edges,
            cut,
        }
    }

    /// A window long enough to exhibit every local configuration of every ray.
    pub fn settled_window(&self) -> Window {
        let per: Vec<usize> = self.rays.iter().map(Ray::settle_len).collect();
        self.window_with(&per)
    }

    pub fn uniform_window(&self, n: usize) -> Window {
        self.window_with(&vec![n; self.rays.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MonoScalar {
        s.parse().unwrap()
    }

    #[test]
    fn ray_steps_cycle() {
        let ray = Ray {
            anchor: None,
            head: vec![RayStep::new(m("q"), m("q^-2"))],
            cycle: vec![RayStep::new(m("q^2"), m("q^-2"))],
        };
        assert_eq!(ray.step(0).label, m("q"));
        assert_eq!(ray.step(5).label, m("q^2"));
    }

    #[test]
    fn window_edges_follow_rays() {
        let mut t = DiagonalTemplate::default();
        let c = t.add_vertex("c", m("-1"));
        t.rays.push(Ray {
            anchor: Some((c, m("-1"))),
            head: vec![],
            cycle: vec![RayStep::new(m("-1"), m("-1"))],
        });
        t.ray_names.push(RayNaming::simple("r"));
        let w = t.uniform_window(3);
        assert_eq!(w.labels.len(), 4);
        assert_eq!(w.edges.len(), 3);
        assert_eq!(w.cut, vec![3]);
        assert_eq!(w.neighbours(1).len(), 2);
    }
}
