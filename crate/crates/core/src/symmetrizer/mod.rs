//! Quantum symmetrizers of explicit braidings and the graded dimensions of
//! Nichols algebras, `dim 𝔅ⁿ(V) = rank Ω_n`.
//!
//! ```
//! use nichols_gk::scalar::FieldTag;
//! use nichols_gk::space::{braiding_matrix, BraidedSpaceSpec};
//! use nichols_gk::symmetrizer::{nichols_dims, SymmetrizerJob};
//!
//! let spec = BraidedSpaceSpec::new("p").point("x", "zeta(3)".parse().unwrap());
//! let op = braiding_matrix(&spec, FieldTag::Cyclo(3)).unwrap();
//! assert_eq!(nichols_dims(&SymmetrizerJob::new(op, 3)).unwrap(), vec![1, 1, 1, 0]);
//! ```

mod perm;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use perm::Permutation;

use crate::error::{Error, Result};
use crate::linalg::{column_rank, Word, WordVec};
use crate::space::BraidingOperator;

/// Default bound on the number of domain words of `V^{⊗n}`.
pub const DEFAULT_BUDGET: u128 = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// `Ω_n = (Ω_{n-1} ⊗ id)(1 + c_{n-1} + c_{n-1}c_{n-2} + ⋯ + c_{n-1}⋯c_1)`.
    #[default]
    Recursive,
    /// The literal sum of `M_σ` over `𝕊_n`.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizerJob {
    pub operator: BraidingOperator,
    pub n_max: usize,
    pub mode: Mode,
    pub budget: u128,
}

impl SymmetrizerJob {
    pub fn new(operator: BraidingOperator, n_max: usize) -> Self {
        SymmetrizerJob {
            operator,
            n_max,
            mode: Mode::Recursive,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn literal(mut self) -> Self {
        self.mode = Mode::Literal;
        self
    }
}

/// An operator on `V^{⊗n}` by its columns on the domain words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMatrix {
    pub domain: Vec<Word>,
    pub columns: Vec<WordVec>,
}

impl TensorMatrix {
    pub fn rank(&self, op: &BraidingOperator) -> usize {
        column_rank(&self.columns, op.field())
    }
}

/// Words of length `n` in the operator's window, lexicographically.
pub fn domain_words(op: &BraidingOperator, n: usize, budget: u128) -> Result<Vec<Word>> {
    let window = op.window();
    let size = (window.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded {
            what: format!("dim V^{{⊗{n}}}"),
            size,
            limit: budget,
        });
    }
    let mut words: Vec<Word> = vec![vec![]];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                window.iter().map(move |&x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    Ok(words)
}

fn apply_word(op: &BraidingOperator, v: &WordVec, word: &[usize]) -> WordVec {
    word.iter().rev().fold(v.clone(), |acc, &k| op.apply_at(&acc, k))
}

/// `M_σ = c_{i_1} ⋯ c_{i_ℓ}` along the lexicographically smallest reduced word.
pub fn m_sigma(op: &BraidingOperator, n: usize, sigma: &Permutation) -> Result<TensorMatrix> {
    m_sigma_word(op, n, &sigma.reduced_word())
}

/// `c_{i_1} ⋯ c_{i_ℓ}` for an arbitrary word of slot indices.
pub fn m_sigma_word(op: &BraidingOperator, n: usize, word: &[usize]) -> Result<TensorMatrix> {
    if let Some(&k) = word.iter().find(|&&k| k + 1 >= n) {
        return Err(Error::malformed("permutation", format!("s_{} does not act on {n} factors", k + 1)));
    }
    let domain = domain_words(op, n, DEFAULT_BUDGET)?;
    let columns = domain
        .iter()
        .map(|w| apply_word(op, &WordVec::basis(w.clone(), op.field()), word))
        .collect();
    Ok(TensorMatrix { domain, columns })
}

struct Recursion<'a> {
    op: &'a BraidingOperator,
    memo: HashMap<Word, WordVec>,
}

impl Recursion<'_> {
    fn omega(&mut self, w: &Word) -> WordVec {
        let n = w.len();
        let tag = self.op.field();
        if n <= 1 {
            return WordVec::basis(w.clone(), tag);
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let e = WordVec::basis(w.clone(), tag);
        let mut shuffles = WordVec::new();
        for k in 0..n {
            let mut v = e.clone();
            for j in k..n - 1 {
                v = self.op.apply_at(&v, j);
            }
            shuffles.add(&v);
        }
        let mut out = WordVec::new();
        for (u, c) in shuffles.iter() {
            let head = u[..n - 1].to_vec();
            let last = u[n - 1];
            for (h, x) in self.omega(&head).iter() {
                let mut word = h.clone();
                word.push(last);
                out.add_term(word, x * c);
            }
        }
        self.memo.insert(w.clone(), out.clone());
        out
    }
}

fn omega_columns(op: &BraidingOperator, domain: &[Word], mode: Mode) -> Vec<WordVec> {
    match mode {
        Mode::Recursive => {
            let mut r = Recursion { op, memo: HashMap::new() };
            domain.iter().map(|w| r.omega(w)).collect()
        }
        Mode::Literal => {
            let n = domain.first().map_or(0, Vec::len);
            let words: Vec<Vec<usize>> = Permutation::all(n).iter().map(Permutation::reduced_word).collect();
            domain
                .iter()
                .map(|w| {
                    let e = WordVec::basis(w.clone(), op.field());
                    let mut sum = WordVec::new();
                    for word in &words {
                        sum.add(&apply_word(op, &e, word));
                    }
                    sum
                })
                .collect()
        }
    }
}

/// The quantum symmetrizer `Ω_n` on the window words.
pub fn omega(op: &BraidingOperator, n: usize, mode: Mode) -> Result<TensorMatrix> {
    let domain = domain_words(op, n, DEFAULT_BUDGET)?;
    let columns = omega_columns(op, &domain, mode);
    Ok(TensorMatrix { domain, columns })
}

/// `dim 𝔅⁰, …, dim 𝔅^{n_max}` as ranks of `Ω_n`.
pub fn nichols_dims(job: &SymmetrizerJob) -> Result<Vec<usize>> {
    let op = &job.operator;
    (0..=job.n_max)
        .map(|n| {
            let domain = domain_words(op, n, job.budget)?;
            Ok(column_rank(&omega_columns(op, &domain, job.mode), op.field()))
        })
        .collect()
}

/// The constant `δ` with `deg u + deg v = deg r + deg s + δ` for every term
/// `x_u ⊗ x_v` of `c(x_r ⊗ x_s)`, over the given pairs `(r, s)`.
fn degree_shift(op: &BraidingOperator, pairs: &BTreeSet<(u32, u32)>) -> Result<i64> {
    let deg = op
        .grading()
        .ok_or_else(|| Error::GradingViolation("the operator carries no grading".into()))?;
    let mut shift = None;
    for &(r, s) in pairs {
        for (u, v, _) in op.image(r, s) {
            let delta = deg[*u as usize] + deg[*v as usize] - deg[r as usize] - deg[s as usize];
            match shift {
                None => shift = Some(delta),
                Some(x) if x != delta => {
                    let l = op.labels();
                    return Err(Error::GradingViolation(format!(
                        "c({} ⊗ {}) contains {} ⊗ {}, shifting the degree by {delta} instead of {x}",
                        l[r as usize], l[s as usize], l[*u as usize], l[*v as usize]
                    )));
                }
                Some(_) => {}
            }
        }
    }
    Ok(shift.unwrap_or(0))
}

/// Adjacent pairs met while applying at most `ℓ(w_0)` braidings to the
/// window words, as every `M_σ` does.
fn reachable_pairs(op: &BraidingOperator, words: &[Word]) -> BTreeSet<(u32, u32)> {
    let n = words.first().map_or(0, Vec::len);
    let mut layer: BTreeSet<Word> = words.iter().cloned().collect();
    let mut pairs = BTreeSet::new();
    for _ in 0..n * n.saturating_sub(1) / 2 {
        let mut next_layer = BTreeSet::new();
        for w in &layer {
            for k in 0..n.saturating_sub(1) {
                pairs.insert((w[k], w[k + 1]));
                for (a, b, _) in op.image(w[k], w[k + 1]) {
                    let mut next = w.clone();
                    next[k] = *a;
                    next[k + 1] = *b;
                    next_layer.insert(next);
                }
            }
        }
        layer = next_layer;
    }
    pairs
}

/// Whether `Ω_n` is injective on every homogeneous slice of the window.
/// The braiding must shift degrees by a constant on the words it reaches.
pub fn graded_injectivity(op: &BraidingOperator, n: usize) -> Result<bool> {
    let words = domain_words(op, n, DEFAULT_BUDGET)?;
    degree_shift(op, &reachable_pairs(op, &words))?;
    let deg = op.grading().expect("checked by degree_shift");
    let mut slices: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
    for w in words {
        let d = w.iter().map(|&x| deg[x as usize]).sum();
        slices.entry(d).or_default().push(w);
    }
    let mut r = Recursion { op, memo: HashMap::new() };
    for words in slices.values() {
        let columns: Vec<WordVec> = words.iter().map(|w| r.omega(w)).collect();
        if column_rank(&columns, op.field()) < words.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
