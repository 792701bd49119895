use std::fmt;

use num_rational::BigRational;

use crate::error::Result;
use crate::scalar::MonoScalar;
use crate::space::{
    a_from_ghost, Attachment, Block, BraidedSpaceSpec, ComponentFamily, Multiplicity, PDescriptor, PairData, Pattern,
    Point, Sign, TailKind, TailSource, TailTemplate,
};
use crate::text::{Cursor, Span};

/// A node with its source position. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub span: Span,
    pub node: T,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

fn spanned<T>(span: Span, node: T) -> Spanned<T> {
    Spanned { span, node }
}

/// Parse tree of a `.bvs` file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceSpec {
    pub spaces: Vec<Spanned<SpaceDecl>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: String,
    pub items: Vec<Spanned<Item>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Block { id: String, sign: Sign },
    Point { id: String, q: MonoScalar },
    Edge(EdgeDecl),
    Tail(TailTemplate),
    Family(FamilyDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeQ {
    /// Only allowed together with a ghost: `q12 = q21 = 1`.
    Weak,
    QTilde(MonoScalar),
    Pair(MonoScalar, MonoScalar),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub r: String,
    pub s: String,
    pub q: EdgeQ,
    pub a12: Option<BigRational>,
    pub a21: Option<BigRational>,
    pub ghost: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachDecl {
    pub block: String,
    pub at: Option<String>,
    pub ghost: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub id: String,
    pub pattern: Vec<Spanned<Item>>,
    pub attachments: Vec<AttachDecl>,
    pub count: Multiplicity,
}

/// Parses a file of `space NAME { … }` declarations.
pub fn parse(text: &str) -> Result<SourceSpec> {
    let mut c = Cursor::new(text);
    let mut spaces = Vec::new();
    loop {
        c.skip_ws();
        if c.at_end() {
            break;
        }
        let span = c.span();
        c.expect_keyword("space")?;
        let name = c.ident()?;
        c.expect('{')?;
        let items = items(&mut c, false)?;
        spaces.push(spanned(span, SpaceDecl { name, items }));
    }
    if spaces.is_empty() {
        return Err(c.error("expected at least one `space` declaration"));
    }
    Ok(SourceSpec { spaces })
}

/// Parses and lowers every space of a file.
pub fn parse_spaces(text: &str) -> Result<Vec<BraidedSpaceSpec>> {
    parse(text)?.lower()
}

/// Items up to and including the closing brace.
fn items(c: &mut Cursor<'_>, in_pattern: bool) -> Result<Vec<Spanned<Item>>> {
    let mut out = Vec::new();
    loop {
        c.skip_ws();
        if c.at_end() {
            return Err(c.error("unclosed `{`"));
        }
        if c.eat('}') {
            return Ok(out);
        }
        let span = c.span();
        let item = match c.peek_ident() {
            Some("block") => {
                c.expect_keyword("block")?;
                let id = c.ident()?;
                let sign = if c.eat_keyword("plus") {
                    Sign::Plus
                } else if c.eat_keyword("minus") {
                    Sign::Minus
                } else {
                    return Err(c.error(format!("expected `plus` or `minus`, found {}", c.describe_next())));
                };
                Item::Block { id, sign }
            }
            Some("point") => {
                c.expect_keyword("point")?;
                let id = c.ident()?;
                c.expect_keyword("q")?;
                c.expect('=')?;
                Item::Point { id, q: mono(c)? }
            }
            Some("edge") => Item::Edge(edge(c)?),
            Some("tail") => Item::Tail(tail(c)?),
            Some("family") if !in_pattern => Item::Family(family(c)?),
            Some("family") => return Err(c.error("families cannot be nested")),
            _ => return Err(c.error(format!("expected an item, found {}", c.describe_next()))),
        };
        out.push(spanned(span, item));
    }
}

fn mono(c: &mut Cursor<'_>) -> Result<MonoScalar> {
    c.skip_ws();
    let span = c.span();
    let lit = crate::scalar::ScalarLiteral::parse_from(c)?;
    lit.as_mono()
        .cloned()
        .ok_or_else(|| Cursor::error_at(span, format!("`{lit}` is not a unit scalar (coefficient must be ±1)")))
}

fn assign<T>(slot: &mut Option<T>, key: &str, value: T, span: Span) -> Result<()> {
    if slot.replace(value).is_some() {
        return Err(Cursor::error_at(span, format!("`{key}` given twice")));
    }
    Ok(())
}

fn edge(c: &mut Cursor<'_>) -> Result<EdgeDecl> {
    let start = c.span();
    c.expect_keyword("edge")?;
    let r = c.ident()?;
    let s = c.ident()?;
    let (mut qt, mut q12, mut q21) = (None, None, None);
    let (mut a12, mut a21, mut ghost) = (None, None, None);
    while let Some(key @ ("qtilde" | "q12" | "q21" | "a12" | "a21" | "ghost")) = c.peek_ident() {
        c.skip_ws();
        let span = c.span();
        let key = key.to_string();
        c.expect_keyword(&key)?;
        c.expect('=')?;
        match key.as_str() {
            "qtilde" => {
                let v = mono(c)?;
                assign(&mut qt, &key, v, span)?
            }
            "q12" => {
                let v = mono(c)?;
                assign(&mut q12, &key, v, span)?
            }
            "q21" => {
                let v = mono(c)?;
                assign(&mut q21, &key, v, span)?
            }
            "a12" => {
                let v = c.rational()?;
                assign(&mut a12, &key, v, span)?
            }
            "a21" => {
                let v = c.rational()?;
                assign(&mut a21, &key, v, span)?
            }
            _ => {
                let v = c.rational()?;
                assign(&mut ghost, &key, v, span)?
            }
        }
    }
    let q = match (qt, q12, q21) {
        (Some(t), None, None) => EdgeQ::QTilde(t),
        (None, Some(a), Some(b)) => EdgeQ::Pair(a, b),
        (None, None, None) if ghost.is_some() => EdgeQ::Weak,
        (Some(_), _, _) => return Err(Cursor::error_at(start, "`qtilde` excludes `q12` and `q21`")),
        (None, None, None) => return Err(Cursor::error_at(start, "edge needs `qtilde`, `q12`/`q21` or `ghost`")),
        _ => return Err(Cursor::error_at(start, "`q12` and `q21` go together")),
    };
    if ghost.is_some() && (a12.is_some() || a21.is_some()) {
        return Err(Cursor::error_at(start, "`ghost` excludes `a12` and `a21`"));
    }
    Ok(EdgeDecl {
        r,
        s,
        q,
        a12,
        a21,
        ghost,
    })
}

fn tail(c: &mut Cursor<'_>) -> Result<TailTemplate> {
    c.expect_keyword("tail")?;
    let id = c.ident()?;
    c.expect_keyword("from")?;
    let from = if c.eat_keyword("fresh") {
        TailSource::Fresh
    } else {
        TailSource::Vertex(c.ident()?)
    };
    c.expect_keyword("shape")?;
    c.skip_ws();
    let kspan = c.span();
    let kw = c.ident()?;
    let kind = TailKind::from_keyword(&kw).ok_or_else(|| Cursor::error_at(kspan, format!("unknown tail shape `{kw}`")))?;
    let mut t = TailTemplate {
        id,
        kind,
        from,
        q: None,
        ghost: None,
        link: None,
        p: None,
    };
    while let Some(key @ ("q" | "ghost" | "link" | "p")) = c.peek_ident() {
        c.skip_ws();
        let span = c.span();
        let key = key.to_string();
        c.expect_keyword(&key)?;
        c.expect('=')?;
        match key.as_str() {
            "q" => {
                let v = mono(c)?;
                assign(&mut t.q, &key, v, span)?
            }
            "link" => {
                let v = mono(c)?;
                assign(&mut t.link, &key, v, span)?
            }
            "ghost" => {
                let v = c.rational()?;
                assign(&mut t.ghost, &key, v, span)?
            }
            _ => {
                let v = p_descriptor(c)?;
                assign(&mut t.p, &key, v, span)?
            }
        }
    }
    Ok(t)
}

/// `[p1, p2, … ; constant]`
fn p_descriptor(c: &mut Cursor<'_>) -> Result<PDescriptor> {
    c.expect('[')?;
    let sign = |c: &mut Cursor<'_>| -> Result<i8> {
        c.skip_ws();
        let span = c.span();
        match c.small_integer()? {
            1 => Ok(1),
            -1 => Ok(-1),
            v => Err(Cursor::error_at(span, format!("p entries are 1 or -1, found {v}"))),
        }
    };
    let mut prefix = Vec::new();
    if !c.eat(';') {
        loop {
            prefix.push(sign(c)?);
            if c.eat(';') {
                break;
            }
            c.expect(',')?;
        }
    }
    let tail = sign(c)?;
    c.expect(']')?;
    Ok(PDescriptor { prefix, tail })
}

fn family(c: &mut Cursor<'_>) -> Result<FamilyDecl> {
    c.expect_keyword("family")?;
    let id = c.ident()?;
    c.expect_keyword("pattern")?;
    c.expect('{')?;
    let pattern = items(c, true)?;
    let mut attachments = Vec::new();
    while c.eat_keyword("attach") {
        let block = c.ident()?;
        let at = if c.eat_keyword("at") { Some(c.ident()?) } else { None };
        c.expect_keyword("ghost")?;
        c.expect('=')?;
        let ghost = c.rational()?;
        attachments.push(AttachDecl { block, at, ghost });
    }
    c.expect_keyword("count")?;
    c.expect('=')?;
    let count = if c.eat_keyword("omega") {
        Multiplicity::Omega
    } else {
        c.skip_ws();
        let span = c.span();
        let n = c.unsigned()?;
        Multiplicity::Finite(u64::try_from(n).map_err(|_| Cursor::error_at(span, "count out of range"))?)
    };
    Ok(FamilyDecl {
        id,
        pattern,
        attachments,
        count,
    })
}

impl SourceSpec {
    pub fn lower(&self) -> Result<Vec<BraidedSpaceSpec>> {
        self.spaces.iter().map(|s| s.node.lower()).collect()
    }

    pub fn from_specs(specs: &[BraidedSpaceSpec]) -> SourceSpec {
        SourceSpec {
            spaces: specs.iter().map(|s| spanned(Span::default(), SpaceDecl::from_spec(s))).collect(),
        }
    }
}

struct Lowered {
    blocks: Vec<Block>,
    points: Vec<Point>,
    pairs: Vec<PairData>,
    tails: Vec<TailTemplate>,
    families: Vec<ComponentFamily>,
}

fn lower_items(items: &[Spanned<Item>], outer: &[Block]) -> Result<Lowered> {
    let mut out = Lowered {
        blocks: Vec::new(),
        points: Vec::new(),
        pairs: Vec::new(),
        tails: Vec::new(),
        families: Vec::new(),
    };
    for it in items {
        if let Item::Block { id, sign } = &it.node {
            out.blocks.push(Block { id: id.clone(), sign: *sign });
        }
    }
    let sign_of = |id: &str| {
        out.blocks
            .iter()
            .chain(outer)
            .find(|b| b.id == id)
            .map(|b| b.sign)
    };
    let mut pairs = Vec::new();
    let mut points = Vec::new();
    let mut tails = Vec::new();
    let mut families = Vec::new();
    for it in items {
        match &it.node {
            Item::Block { .. } => {}
            Item::Point { id, q } => points.push(Point {
                id: id.clone(),
                q: q.clone(),
            }),
            Item::Edge(e) => pairs.push(lower_edge(e, it.span, &sign_of)?),
            Item::Tail(t) => tails.push(t.clone()),
            Item::Family(f) => {
                let inner = lower_items(&f.pattern, &out.blocks)?;
                families.push(ComponentFamily {
                    id: f.id.clone(),
                    pattern: Pattern {
                        blocks: inner.blocks,
                        points: inner.points,
                        pairs: inner.pairs,
                        tails: inner.tails,
                    },
                    attachments: f
                        .attachments
                        .iter()
                        .map(|a| Attachment {
                            block: a.block.clone(),
                            at: a.at.clone(),
                            ghost: a.ghost.clone(),
                        })
                        .collect(),
                    count: f.count,
                });
            }
        }
    }
    out.points = points;
    out.pairs = pairs;
    out.tails = tails;
    out.families = families;
    Ok(out)
}

fn lower_edge(e: &EdgeDecl, span: Span, sign_of: &dyn Fn(&str) -> Option<Sign>) -> Result<PairData> {
    let (q_rs, q_sr) = match &e.q {
        EdgeQ::Weak => (MonoScalar::one(), MonoScalar::one()),
        EdgeQ::QTilde(t) => (t.clone(), MonoScalar::one()),
        EdgeQ::Pair(a, b) => (a.clone(), b.clone()),
    };
    let mut pair = PairData {
        r: e.r.clone(),
        s: e.s.clone(),
        q_rs,
        q_sr,
        a_rs: e.a12.clone(),
        a_sr: e.a21.clone(),
    };
    if let Some(g) = &e.ghost {
        match (sign_of(&e.r), sign_of(&e.s)) {
            (None, Some(sign)) => pair.a_rs = Some(a_from_ghost(sign, g)),
            (Some(sign), None) => pair.a_sr = Some(a_from_ghost(sign, g)),
            _ => return Err(Cursor::error_at(span, "`ghost` needs exactly one block end")),
        }
    }
    Ok(pair)
}

impl SpaceDecl {
    pub fn lower(&self) -> Result<BraidedSpaceSpec> {
        let l = lower_items(&self.items, &[])?;
        Ok(BraidedSpaceSpec {
            name: self.name.clone(),
            blocks: l.blocks,
            points: l.points,
            pairs: l.pairs,
            tails: l.tails,
            families: l.families,
        })
    }

    /// The canonical parse tree of a spec.
    pub fn from_spec(spec: &BraidedSpaceSpec) -> SpaceDecl {
        let mut items = lift_items(&spec.blocks, &spec.points, &spec.pairs, &spec.tails);
        for f in &spec.families {
            let p = &f.pattern;
            items.push(spanned(
                Span::default(),
                Item::Family(FamilyDecl {
                    id: f.id.clone(),
                    pattern: lift_items(&p.blocks, &p.points, &p.pairs, &p.tails),
                    attachments: f
                        .attachments
                        .iter()
                        .map(|a| AttachDecl {
                            block: a.block.clone(),
                            at: a.at.clone(),
                            ghost: a.ghost.clone(),
                        })
                        .collect(),
                    count: f.count,
                }),
            ));
        }
        SpaceDecl {
            name: spec.name.clone(),
            items,
        }
    }
}

fn lift_items(blocks: &[Block], points: &[Point], pairs: &[PairData], tails: &[TailTemplate]) -> Vec<Spanned<Item>> {
    let s = Span::default();
    let mut items: Vec<Spanned<Item>> = Vec::new();
    items.extend(blocks.iter().map(|b| {
        spanned(
            s,
            Item::Block {
                id: b.id.clone(),
                sign: b.sign,
            },
        )
    }));
    items.extend(points.iter().map(|p| {
        spanned(
            s,
            Item::Point {
                id: p.id.clone(),
                q: p.q.clone(),
            },
        )
    }));
    items.extend(pairs.iter().map(|p| {
        let q = if p.q_sr.is_one() {
            EdgeQ::QTilde(p.q_rs.clone())
        } else {
            EdgeQ::Pair(p.q_rs.clone(), p.q_sr.clone())
        };
        spanned(
            s,
            Item::Edge(EdgeDecl {
                r: p.r.clone(),
                s: p.s.clone(),
                q,
                a12: p.a_rs.clone(),
                a21: p.a_sr.clone(),
                ghost: None,
            }),
        )
    }));
    items.extend(tails.iter().map(|t| spanned(s, Item::Tail(t.clone()))));
    items
}

fn write_items(f: &mut fmt::Formatter<'_>, items: &[Spanned<Item>], indent: usize) -> fmt::Result {
    let pad = " ".repeat(indent);
    for it in items {
        write!(f, "{pad}")?;
        match &it.node {
            Item::Block { id, sign } => writeln!(f, "block {id} {}", sign.keyword())?,
            Item::Point { id, q } => writeln!(f, "point {id} q = {q}")?,
            Item::Edge(e) => {
                write!(f, "edge {} {}", e.r, e.s)?;
                match &e.q {
                    EdgeQ::Weak => {}
                    EdgeQ::QTilde(t) => write!(f, " qtilde = {t}")?,
                    EdgeQ::Pair(a, b) => write!(f, " q12 = {a} q21 = {b}")?,
                }
                if let Some(a) = &e.a12 {
                    write!(f, " a12 = {a}")?;
                }
                if let Some(a) = &e.a21 {
                    write!(f, " a21 = {a}")?;
                }
                if let Some(g) = &e.ghost {
                    write!(f, " ghost = {g}")?;
                }
                writeln!(f)?;
            }
            Item::Tail(t) => {
                let from = match &t.from {
                    TailSource::Fresh => "fresh",
                    TailSource::Vertex(v) => v.as_str(),
                };
                write!(f, "tail {} from {from} shape {}", t.id, t.kind.keyword())?;
                if let Some(q) = &t.q {
                    write!(f, " q = {q}")?;
                }
                if let Some(g) = &t.ghost {
                    write!(f, " ghost = {g}")?;
                }
                if let Some(l) = &t.link {
                    write!(f, " link = {l}")?;
                }
                if let Some(p) = &t.p {
                    write!(f, " p = {p}")?;
                }
                writeln!(f)?;
            }
            Item::Family(fam) => {
                writeln!(f, "family {} pattern {{", fam.id)?;
                write_items(f, &fam.pattern, indent + 2)?;
                write!(f, "{pad}}}")?;
                for a in &fam.attachments {
                    write!(f, " attach {}", a.block)?;
                    if let Some(at) = &a.at {
                        write!(f, " at {at}")?;
                    }
                    write!(f, " ghost = {}", a.ghost)?;
                }
                writeln!(f, " count = {}", fam.count)?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for SpaceDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space {} {{", self.name)?;
        write_items(f, &self.items, 2)?;
        writeln!(f, "}}")
    }
}

impl fmt::Display for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.spaces.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", s.node)?;
        }
        Ok(())
    }
}

/// The canonical text of a spec.
pub fn print_spec(spec: &BraidedSpaceSpec) -> String {
    SpaceDecl::from_spec(spec).to_string()
}
