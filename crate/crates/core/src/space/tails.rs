use crate::diagram::{DiagonalTemplate, Ray, RayNaming, RayStep, VertexRef};
use crate::error::{Error, Result};
use crate::scalar::MonoScalar;

use super::types::{CartanType, PDescriptor, TailKind, TailTemplate};

/// The diagram generated by a tail, with the vertex its source links to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailShape {
    pub id: String,
    pub template: DiagonalTemplate,
    pub entry: VertexRef,
}

impl TailShape {
    /// The first `n` vertices in generation order: prefix first, then the
    /// rays round-robin. Every initial segment is connected.
    pub fn order(&self, n: usize) -> Vec<VertexRef> {
        let m = self.template.labels.len();
        let rays = self.template.rays.len();
        (0..n)
            .map(|k| {
                if k < m {
                    VertexRef::Prefix(k)
                } else {
                    let r = k - m;
                    VertexRef::Ray(r % rays, r / rays)
                }
            })
            .collect()
    }

    /// Name of a tail vertex: `<tail>.<generation index>`, 1-based.
    pub fn vertex_name(&self, v: VertexRef) -> String {
        self.template.name(v)
    }
}

fn step(label: MonoScalar, next: MonoScalar) -> RayStep {
    RayStep::new(label, next)
}

/// Sequential super-type rule: a vertex with `p = 1` has label `e^{-1}` and
/// both edges equal to `e`; a vertex with `p = -1` has label `-1` and
/// inverse edges on its two sides.
fn a_run(e_in: &MonoScalar, ps: impl IntoIterator<Item = i8>) -> (Vec<RayStep>, MonoScalar) {
    let mut e = e_in.clone();
    let mut out = Vec::new();
    for p in ps {
        if p == 1 {
            out.push(step(e.inv(), e.clone()));
        } else {
            let next = e.inv();
            out.push(step(MonoScalar::minus_one(), next.clone()));
            e = next;
        }
    }
    (out, e)
}

fn a_cycle(e_in: &MonoScalar, constant: i8) -> Vec<RayStep> {
    if constant == 1 {
        vec![step(e_in.inv(), e_in.clone())]
    } else {
        vec![
            step(MonoScalar::minus_one(), e_in.inv()),
            step(MonoScalar::minus_one(), e_in.clone()),
        ]
    }
}

fn ps_from(p: &PDescriptor, start: usize) -> Vec<i8> {
    (start..=p.prefix.len()).map(|i| p.at(i)).collect()
}

fn malformed(t: &TailTemplate, reason: impl Into<String>) -> Error {
    Error::malformed(format!("tail {}", t.id), reason)
}

fn one_sided(head: Vec<RayStep>, cycle: Vec<RayStep>) -> (DiagonalTemplate, VertexRef) {
    let template = DiagonalTemplate {
        rays: vec![Ray {
            anchor: None,
            head,
            cycle,
        }],
        ray_names: vec![RayNaming::simple("")],
        ..Default::default()
    };
    (template, VertexRef::Ray(0, 0))
}

fn fork(leaves: [MonoScalar; 2], centre: MonoScalar, e13: MonoScalar, e23: MonoScalar, ray: Ray) -> (DiagonalTemplate, VertexRef) {
    let mut t = DiagonalTemplate::default();
    let v1 = t.add_vertex("1", leaves[0].clone());
    let v3 = t.add_vertex("3", centre);
    let v2 = t.add_vertex("2", leaves[1].clone());
    t.edges.push((v1, v3, e13));
    t.edges.push((v2, v3, e23));
    t.rays.push(ray);
    t.ray_names.push(RayNaming::simple(""));
    (t, VertexRef::Prefix(0))
}

pub fn tail_shape(t: &TailTemplate) -> Result<TailShape> {
    let q = || t.q.clone().ok_or_else(|| malformed(t, "missing `q`"));
    let p = || t.p.clone().ok_or_else(|| malformed(t, "missing `p`"));
    let m1 = MonoScalar::minus_one;
    let (mut template, entry) = match t.kind {
        TailKind::AInfChain => one_sided(vec![], vec![step(m1(), m1())]),
        TailKind::Cartan(ty) => {
            let q = q()?;
            let qi = q.inv();
            match ty {
                CartanType::APlusInf => one_sided(vec![], vec![step(q, qi)]),
                CartanType::BInf => one_sided(vec![step(q.clone(), q.pow(-2))], vec![step(q.pow(2), q.pow(-2))]),
                CartanType::CInf => one_sided(vec![step(q.pow(2), q.pow(-2))], vec![step(q, qi)]),
                CartanType::AInf => {
                    let mut t = DiagonalTemplate::default();
                    let c = t.add_vertex("1", q.clone());
                    for _ in 0..2 {
                        t.rays.push(Ray {
                            anchor: Some((c, qi.clone())),
                            head: vec![],
                            cycle: vec![step(q.clone(), qi.clone())],
                        });
                        t.ray_names.push(RayNaming::simple(""));
                    }
                    (t, VertexRef::Prefix(0))
                }
                CartanType::DInf => fork(
                    [q.clone(), q.clone()],
                    q.clone(),
                    qi.clone(),
                    qi.clone(),
                    Ray {
                        anchor: Some((1, qi.clone())),
                        head: vec![],
                        cycle: vec![step(q, qi)],
                    },
                ),
            }
        }
        TailKind::Super(ty) => {
            let q = q()?;
            let p = p()?;
            let qi = q.inv();
            match ty {
                CartanType::APlusInf => {
                    let (head, e) = a_run(&qi, ps_from(&p, 1));
                    one_sided(head, a_cycle(&e, p.tail))
                }
                CartanType::BInf => {
                    if p.at(1) != 1 {
                        return Err(malformed(t, "super B_inf needs p_1 = 1"));
                    }
                    let mut head = vec![step(q.clone(), q.pow(-2))];
                    let (rest, e) = a_run(&q.pow(-2), ps_from(&p, 2));
                    head.extend(rest);
                    one_sided(head, a_cycle(&e, p.tail))
                }
                CartanType::CInf => {
                    if p.at(1) != 1 {
                        return Err(malformed(t, "super C_inf needs p_1 = 1"));
                    }
                    let mut head = if p.at(2) == 1 {
                        vec![step(q.pow(2), q.pow(-2)), step(q.clone(), qi.clone())]
                    } else {
                        vec![step(q.pow(-2), q.pow(2)), step(m1(), qi.clone())]
                    };
                    let (rest, e) = a_run(&qi, ps_from(&p, 3));
                    head.extend(rest);
                    one_sided(head, a_cycle(&e, p.tail))
                }
                CartanType::DInf => {
                    let (centre, e34) = if p.at(3) == 1 {
                        (q.clone(), qi.clone())
                    } else {
                        (m1(), q.clone())
                    };
                    let leaf = |i: usize| if p.at(i) == 1 { q.clone() } else { m1() };
                    let (head, e) = a_run(&e34, ps_from(&p, 4));
                    fork(
                        [leaf(1), leaf(2)],
                        centre,
                        qi.clone(),
                        qi.clone(),
                        Ray {
                            anchor: Some((1, e34)),
                            head,
                            cycle: a_cycle(&e, p.tail),
                        },
                    )
                }
                CartanType::AInf => {
                    let mut t = DiagonalTemplate::default();
                    let (first, e01) = a_run(&qi, [p.at(1)]);
                    let c = t.add_vertex("1", first[0].label.clone());
                    let (head, e) = a_run(&e01, ps_from(&p, 2));
                    t.rays.push(Ray {
                        anchor: Some((c, e01)),
                        head,
                        cycle: a_cycle(&e, p.tail),
                    });
                    t.rays.push(Ray {
                        anchor: Some((c, qi.clone())),
                        head: vec![],
                        cycle: a_cycle(&qi, p.tail),
                    });
                    t.ray_names.extend([RayNaming::simple(""), RayNaming::simple("")]);
                    (t, VertexRef::Prefix(0))
                }
            }
        }
    };
    for (k, name) in template.names.iter_mut().enumerate() {
        *name = format!("{}.{}", t.id, k + 1);
    }
    let m = template.labels.len();
    let rays = template.rays.len();
    for (k, name) in template.ray_names.iter_mut().enumerate() {
        *name = RayNaming {
            base: t.id.clone(),
            offset: m + k,
            stride: rays,
        };
    }
    Ok(TailShape {
        id: t.id.clone(),
        template,
        entry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::types::TailSource;

    fn m(s: &str) -> MonoScalar {
        s.parse().unwrap()
    }

    fn tail(kind: TailKind, q: Option<&str>, p: Option<PDescriptor>) -> TailTemplate {
        TailTemplate {
            id: "t".into(),
            kind,
            from: TailSource::Fresh,
            q: q.map(m),
            ghost: None,
            link: None,
            p,
        }
    }

    #[test]
    fn chain_is_all_minus_one() {
        let s = tail_shape(&tail(TailKind::AInfChain, None, None)).unwrap();
        let w = s.template.uniform_window(4);
        assert!(w.labels.iter().all(|l| l.is_minus_one()));
        assert_eq!(w.edges.len(), 3);
        assert_eq!(s.vertex_name(VertexRef::Ray(0, 2)), "t.3");
    }

    #[test]
    fn super_a_alternates_edges_after_minus_ones() {
        let p = PDescriptor { prefix: vec![1, 1], tail: -1 };
        let s = tail_shape(&tail(TailKind::Super(CartanType::APlusInf), Some("q"), Some(p))).unwrap();
        let w = s.template.uniform_window(6);
        let labels: Vec<String> = w.labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, ["q", "q", "-1", "-1", "-1", "-1"]);
        let edges: Vec<String> = w.edges.iter().map(|e| e.2.to_string()).collect();
        assert_eq!(edges, ["q^-1", "q^-1", "q", "q^-1", "q"]);
    }

    #[test]
    fn fork_order_is_connected() {
        let s = tail_shape(&tail(TailKind::Cartan(CartanType::DInf), Some("zeta(5)"), None)).unwrap();
        let order = s.order(4);
        assert_eq!(order[0], VertexRef::Prefix(0));
        assert_eq!(order[1], VertexRef::Prefix(1));
        assert_eq!(order[3], VertexRef::Ray(0, 0));
        assert_eq!(s.vertex_name(order[3]), "t.4");
    }

    #[test]
    fn two_sided_round_robin() {
        let s = tail_shape(&tail(TailKind::Cartan(CartanType::AInf), Some("q"), None)).unwrap();
        let order = s.order(5);
        assert_eq!(order, vec![
            VertexRef::Prefix(0),
            VertexRef::Ray(0, 0),
            VertexRef::Ray(1, 0),
            VertexRef::Ray(0, 1),
            VertexRef::Ray(1, 1)
        ]);
        assert_eq!(s.vertex_name(VertexRef::Ray(1, 1)), "t.5");
    }
}
