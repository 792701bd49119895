use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::scalar::MonoScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn epsilon(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_mono(self) -> MonoScalar {
        match self {
            Sign::Plus => MonoScalar::one(),
            Sign::Minus => MonoScalar::minus_one(),
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// A two-dimensional block with basis `x_j, x_{j+½}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub id: String,
    pub sign: Sign,
}

/// A one-dimensional point with self-braiding `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub id: String,
    pub q: MonoScalar,
}

/// Braiding data between two distinct vertices `r` and `s`.
///
/// `a_rs` is the coefficient with which `x_r` pushes `x_{s+½}` onto `x_s`,
/// so it is only meaningful when `s` is a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairData {
    pub r: String,
    pub s: String,
    pub q_rs: MonoScalar,
    pub q_sr: MonoScalar,
    pub a_rs: Option<BigRational>,
    pub a_sr: Option<BigRational>,
}

impl PairData {
    /// `edge r s qtilde = s` desugars to `q_rs = s`, `q_sr = 1`.
    pub fn qtilde(r: &str, s: &str, qt: MonoScalar) -> Self {
        PairData {
            r: r.into(),
            s: s.into(),
            q_rs: qt,
            q_sr: MonoScalar::one(),
            a_rs: None,
            a_sr: None,
        }
    }

    pub fn involves(&self, id: &str) -> bool {
        self.r == id || self.s == id
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    #[serde(rename = "A_inf")]
    AInf,
    #[serde(rename = "A_plus_inf")]
    APlusInf,
    #[serde(rename = "B_inf")]
    BInf,
    #[serde(rename = "C_inf")]
    CInf,
    #[serde(rename = "D_inf")]
    DInf,
}

impl CartanType {
    pub const ALL: [CartanType; 5] = [
        CartanType::AInf,
        CartanType::APlusInf,
        CartanType::BInf,
        CartanType::CInf,
        CartanType::DInf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CartanType::AInf => "A_inf",
            CartanType::APlusInf => "A_plus_inf",
            CartanType::BInf => "B_inf",
            CartanType::CInf => "C_inf",
            CartanType::DInf => "D_inf",
        }
    }

    fn dsl_suffix(self) -> &'static str {
        match self {
            CartanType::AInf => "a_inf",
            CartanType::APlusInf => "a_plus_inf",
            CartanType::BInf => "b_inf",
            CartanType::CInf => "c_inf",
            CartanType::DInf => "d_inf",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s || t.dsl_suffix() == s)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailKind {
    /// A `-1` chain with `-1` edges, attached with a ghost when it hangs off
    /// a block.
    AInfChain,
    Cartan(CartanType),
    Super(CartanType),
}

impl TailKind {
    pub fn keyword(self) -> String {
        match self {
            TailKind::AInfChain => "a_inf_chain".into(),
            TailKind::Cartan(t) => format!("cartan_{}", t.dsl_suffix()),
            TailKind::Super(t) => format!("super_{}", t.dsl_suffix()),
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        if s == "a_inf_chain" {
            return Some(TailKind::AInfChain);
        }
        if let Some(rest) = s.strip_prefix("cartan_") {
            return CartanType::from_name(rest).map(TailKind::Cartan);
        }
        if let Some(rest) = s.strip_prefix("super_") {
            return CartanType::from_name(rest).map(TailKind::Super);
        }
        None
    }
}

/// An eventually constant sign sequence `p_1, p_2, …`: a finite prefix
/// followed by a constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PDescriptor {
    pub prefix: Vec<i8>,
    pub tail: i8,
}

impl PDescriptor {
    /// `p_i`, 1-based.
    pub fn at(&self, i: usize) -> i8 {
        self.prefix.get(i - 1).copied().unwrap_or(self.tail)
    }

    pub fn is_identically_one(&self) -> bool {
        self.tail == 1 && self.prefix.iter().all(|&p| p == 1)
    }

    /// `min { i : p_i = -1 }`.
    pub fn first_minus(&self) -> Option<usize> {
        match self.prefix.iter().position(|&p| p == -1) {
            Some(k) => Some(k + 1),
            None if self.tail == -1 => Some(self.prefix.len() + 1),
            None => None,
        }
    }
}

impl fmt::Display for PDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix: Vec<String> = self.prefix.iter().map(|p| p.to_string()).collect();
        write!(f, "[{} ; {}]", prefix.join(", "), self.tail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TailSource {
    Fresh,
    Vertex(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailTemplate {
    pub id: String,
    pub kind: TailKind,
    pub from: TailSource,
    pub q: Option<MonoScalar>,
    pub ghost: Option<BigRational>,
    pub link: Option<MonoScalar>,
    pub p: Option<PDescriptor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Omega => write!(f, "omega"),
        }
    }
}

/// Items of a family pattern. Edges and tails may also reference vertices
/// of the enclosing space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pattern {
    pub blocks: Vec<Block>,
    pub points: Vec<Point>,
    pub pairs: Vec<PairData>,
    pub tails: Vec<TailTemplate>,
}

/// A weak connection from an outer block to a point of the pattern, given
/// by its ghost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub block: String,
    pub at: Option<String>,
    pub ghost: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFamily {
    pub id: String,
    pub pattern: Pattern,
    pub attachments: Vec<Attachment>,
    pub count: Multiplicity,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraidedSpaceSpec {
    pub name: String,
    pub blocks: Vec<Block>,
    pub points: Vec<Point>,
    pub pairs: Vec<PairData>,
    pub tails: Vec<TailTemplate>,
    pub families: Vec<ComponentFamily>,
}

impl BraidedSpaceSpec {
    pub fn new(name: impl Into<String>) -> Self {
        BraidedSpaceSpec {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn block(mut self, id: &str, sign: Sign) -> Self {
        self.blocks.push(Block { id: id.into(), sign });
        self
    }

    pub fn point(mut self, id: &str, q: MonoScalar) -> Self {
        self.points.push(Point { id: id.into(), q });
        self
    }

    pub fn pair(mut self, pair: PairData) -> Self {
        self.pairs.push(pair);
        self
    }

    /// A weak block–point connection with the given ghost.
    pub fn ghost_edge(mut self, block: &str, point: &str, ghost: BigRational) -> Self {
        let sign = self
            .blocks
            .iter()
            .find(|b| b.id == block)
            .map(|b| b.sign)
            .expect("ghost_edge: block must be declared first");
        self.pairs.push(PairData {
            r: point.into(),
            s: block.into(),
            q_rs: MonoScalar::one(),
            q_sr: MonoScalar::one(),
            a_rs: Some(a_from_ghost(sign, &ghost)),
            a_sr: None,
        });
        self
    }

    pub fn is_finite(&self) -> bool {
        self.tails.is_empty() && self.families.is_empty()
    }

    pub fn block_sign(&self, id: &str) -> Option<Sign> {
        self.blocks.iter().find(|b| b.id == id).map(|b| b.sign)
    }
}

/// Ghost of a block–point connection: `-2a` for `⊞`, `a` for `⊟`.
pub fn ghost_from_a(sign: Sign, a: &BigRational) -> BigRational {
    match sign {
        Sign::Plus => a * BigRational::from_integer((-2).into()),
        Sign::Minus => a.clone(),
    }
}

pub fn a_from_ghost(sign: Sign, ghost: &BigRational) -> BigRational {
    match sign {
        Sign::Plus => ghost / BigRational::from_integer((-2).into()),
        Sign::Minus => ghost.clone(),
    }
}
