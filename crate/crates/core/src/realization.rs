//! Principal realizations over a free abelian group.
//!
//! For a finite space with vertex set `F` the group is `ℤ^F` with basis
//! `g_i`. The characters and derivations are read off the braiding:
//! `χ_h(g_i) = q_ih` and `η_j(g_i) = a_ij` for every block `j`, so that
//! `c(x_i ⊗ x_h) = g_i · x_h ⊗ x_i`.
//!
//! ```
//! use nichols_gk::realization::principal_realization;
//! use nichols_gk::space::BraidedSpaceSpec;
//!
//! let s = BraidedSpaceSpec::new("s").point("p", "zeta(3)".parse().unwrap());
//! let r = principal_realization(&s).unwrap();
//! assert_eq!(r.chi(0, 0).to_string(), "zeta(3)");
//! ```

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{embed, FieldElement, FieldTag, MonoScalar};
use crate::space::{validate, BraidedSpaceSpec, BraidingOperator, Term, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedVertex {
    pub id: String,
    pub block: bool,
}

/// Group elements `g_i`, characters `χ_h` and derivations `η_j` on the free
/// abelian group of rank `|F|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub space: String,
    pub vertices: Vec<RealizedVertex>,
    /// `chi[h][i] = χ_h(g_i)`.
    chi: Vec<Vec<MonoScalar>>,
    /// `eta[j][i] = η_j(g_i)`, one row per block in vertex order.
    eta: Vec<Vec<BigRational>>,
}

impl Realization {
    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn chi(&self, h: usize, i: usize) -> &MonoScalar {
        &self.chi[h][i]
    }

    /// `η_j(g_i)` for the vertex `j`, which must be a block.
    pub fn eta(&self, j: usize, i: usize) -> Option<&BigRational> {
        let row = self.block_row(j)?;
        Some(&self.eta[row][i])
    }

    fn block_row(&self, j: usize) -> Option<usize> {
        self.vertices[j]
            .block
            .then(|| self.vertices[..j].iter().filter(|v| v.block).count())
    }

    /// `χ_h(∏ g_i^{n_i})`.
    pub fn chi_at(&self, h: usize, element: &[i64]) -> MonoScalar {
        element
            .iter()
            .enumerate()
            .fold(MonoScalar::one(), |acc, (i, &n)| &acc * &self.chi[h][i].pow(n))
    }

    /// `η_j(∏ g_i^{n_i})`, extended additively.
    pub fn eta_at(&self, j: usize, element: &[i64]) -> Option<BigRational> {
        let row = self.block_row(j)?;
        Some(
            element
                .iter()
                .enumerate()
                .map(|(i, &n)| &self.eta[row][i] * BigRational::from_integer(n.into()))
                .sum(),
        )
    }

    /// Rebuilds `c` from the realization data.
    pub fn rebuild_braiding(&self, field: FieldTag) -> Result<BraidingOperator> {
        let mut basis: Vec<(usize, bool)> = Vec::new();
        let mut labels = Vec::new();
        let mut lower = vec![0u32; self.rank()];
        for (k, v) in self.vertices.iter().enumerate() {
            if v.block {
                lower[k] = basis.len() as u32;
                basis.push((k, false));
                basis.push((k, true));
                labels.push(v.id.clone());
                labels.push(format!("{}+1/2", v.id));
            }
        }
        for (k, v) in self.vertices.iter().enumerate() {
            if !v.block {
                lower[k] = basis.len() as u32;
                basis.push((k, false));
                labels.push(v.id.clone());
            }
        }
        let mut images = Vec::with_capacity(basis.len() * basis.len());
        for (px, &(i, _)) in basis.iter().enumerate() {
            for (py, &(h, upper)) in basis.iter().enumerate() {
                let chi = embed(&self.chi[h][i], field)?;
                let mut img: Vec<Term> = vec![(py as u32, px as u32, chi.clone())];
                if upper {
                    let eta = self.eta(h, i).expect("upper basis vectors belong to blocks");
                    img.push((lower[h], px as u32, &chi * &FieldElement::from_rational(field, eta.clone())));
                }
                img.retain(|t| !t.2.is_zero());
                images.push(img);
            }
        }
        BraidingOperator::new(labels, field, images)
    }

    /// The tables as pretty-printed JSON, in vertex order.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Table<'a> {
            of: &'a str,
            values: Vec<String>,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            space: &'a str,
            rank: usize,
            generators: Vec<String>,
            characters: Vec<Table<'a>>,
            derivations: Vec<Table<'a>>,
        }
        let out = Out {
            space: &self.space,
            rank: self.rank(),
            generators: self.vertices.iter().map(|v| format!("g_{}", v.id)).collect(),
            characters: self
                .vertices
                .iter()
                .zip(&self.chi)
                .map(|(v, row)| Table {
                    of: &v.id,
                    values: row.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            derivations: self
                .vertices
                .iter()
                .filter(|v| v.block)
                .zip(&self.eta)
                .map(|(v, row)| Table {
                    of: &v.id,
                    values: row.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&out).expect("realization tables serialize")
    }
}

/// The principal realization of a finite space over `ℤ^F`, checked against
/// the defining equations on every pair of vertices.
pub fn principal_realization(spec: &BraidedSpaceSpec) -> Result<Realization> {
    if !spec.is_finite() {
        return Err(Error::malformed(
            format!("space {}", spec.name),
            "realizations need a finite spec; truncate it first",
        ));
    }
    let v = validate(spec)?;
    let sk = &v.skeleton;
    let n = sk.vertices.len();
    let vertices: Vec<RealizedVertex> = sk
        .vertices
        .iter()
        .map(|x| RealizedVertex {
            id: x.id.clone(),
            block: x.kind.is_block(),
        })
        .collect();
    let q = |i: usize, h: usize| {
        if i == h {
            sk.vertices[i].kind.self_q()
        } else {
            sk.pair(i, h).q_rs
        }
    };
    let a = |i: usize, j: usize| match &sk.vertices[j].kind {
        VertexKind::Block(sign) if i == j => BigRational::from_integer(sign.epsilon().into()),
        _ => sk.pair(i, j).a_rs,
    };
    let chi: Vec<Vec<MonoScalar>> = (0..n).map(|h| (0..n).map(|i| q(i, h)).collect()).collect();
    let eta: Vec<Vec<BigRational>> = (0..n)
        .filter(|&j| vertices[j].block)
        .map(|j| (0..n).map(|i| a(i, j)).collect())
        .collect();
    let r = Realization {
        space: spec.name.clone(),
        vertices,
        chi,
        eta,
    };
    for i in 0..n {
        let mut g = vec![0i64; n];
        g[i] = 1;
        for h in 0..n {
            if r.chi_at(h, &g) != q(i, h) {
                return Err(Error::malformed(&r.vertices[h].id, "character table disagrees with q"));
            }
            if r.vertices[h].block && r.eta_at(h, &g) != Some(a(i, h)) {
                return Err(Error::malformed(&r.vertices[h].id, "derivation table disagrees with a"));
            }
        }
    }
    Ok(r)
}
