//! Symbolic order-type expressions over opaque ω-blocks.
//!
//! A [`ChainTerm`] is built from the one-point chain, blocks `M_i` (or
//! iterated tails `f^d M_i`), ordered sums and the products `X·ℕ`, `X·ℤ`.
//! Text syntax: `M0 + M1.N + (M2 + fM3.N).Z`, with `1` for the point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("malformed label {0:?}")]
    BadLabel(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("term {0} is outside the constructor grammar")]
    UnsupportedShape(String),
}

/// The class name of an ω-block, e.g. `M3` or `U0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    family: u8,
    index: u32,
}

impl Label {
    /// `family` must be an ASCII uppercase letter.
    pub fn new(family: char, index: u32) -> Result<Self, TermError> {
        if !family.is_ascii_uppercase() {
            return Err(TermError::BadLabel(format!("{family}{index}")));
        }
        Ok(Label {
            family: family as u8,
            index,
        })
    }

    pub fn m(index: u32) -> Self {
        Label {
            family: b'M',
            index,
        }
    }

    pub fn u(index: u32) -> Self {
        Label {
            family: b'U',
            index,
        }
    }

    pub fn family(&self) -> char {
        self.family as char
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family as char, self.index)
    }
}

impl FromStr for Label {
    type Err = TermError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || TermError::BadLabel(text.to_string());
        let mut chars = text.chars();
        let family = chars.next().ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Label::new(family, digits.parse().map_err(|_| bad())?).map_err(|_| bad())
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A block atom: class `label` with `tail_depth` applications of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub label: Label,
    pub tail_depth: u32,
}

impl Block {
    pub fn new(label: Label) -> Self {
        Block {
            label,
            tail_depth: 0,
        }
    }

    pub fn tail(self) -> Self {
        Block {
            tail_depth: self.tail_depth + 1,
            ..self
        }
    }

    pub fn is_tail(&self) -> bool {
        self.tail_depth > 0
    }
}

impl From<Label> for Block {
    fn from(label: Label) -> Self {
        Block::new(label)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tail_depth {
            0 => write!(f, "{}", self.label),
            1 => write!(f, "f{}", self.label),
            d => write!(f, "f^{d}{}", self.label),
        }
    }
}

impl FromStr for Block {
    type Err = TermError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let term: ChainTerm = text.parse()?;
        match term {
            ChainTerm::Block(b) => Ok(b),
            _ => Err(TermError::BadLabel(text.to_string())),
        }
    }
}

impl Serialize for Block {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Block {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// How block atoms are compared by [`iso_equal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IsoPolicy {
    /// Treat every tail atom `f^d M` with `d >= 1` as one class. Only sound
    /// when the blocks are declared to have isomorphic tails.
    pub collapse_tails: bool,
}

impl IsoPolicy {
    pub const STRICT: IsoPolicy = IsoPolicy {
        collapse_tails: false,
    };
    pub const COLLAPSE_TAILS: IsoPolicy = IsoPolicy {
        collapse_tails: true,
    };

    pub fn blocks_equal(&self, a: &Block, b: &Block) -> bool {
        if self.collapse_tails && a.is_tail() && b.is_tail() {
            return true;
        }
        a == b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ChainTerm {
    Unit,
    Block(Block),
    Sum(Vec<ChainTerm>),
    OmegaProduct(Box<ChainTerm>),
    ZetaProduct(Box<ChainTerm>),
}

impl ChainTerm {
    pub fn block(label: Label) -> Self {
        ChainTerm::Block(Block::new(label))
    }

    /// Normalized ordered sum of `parts`.
    pub fn sum<I: IntoIterator<Item = ChainTerm>>(parts: I) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p.normalize() {
                ChainTerm::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            // the empty sum never arises from the constructors
            0 => ChainTerm::Sum(flat),
            1 => flat.pop().expect("one part"),
            _ => ChainTerm::Sum(flat),
        }
    }

    pub fn omega(self) -> Self {
        ChainTerm::OmegaProduct(Box::new(self))
    }

    pub fn zeta(self) -> Self {
        ChainTerm::ZetaProduct(Box::new(self))
    }

    /// Flatten nested sums and unwrap singleton sums.
    pub fn normalize(&self) -> ChainTerm {
        match self {
            ChainTerm::Unit | ChainTerm::Block(_) => self.clone(),
            ChainTerm::Sum(parts) => ChainTerm::sum(parts.iter().cloned()),
            ChainTerm::OmegaProduct(b) => b.normalize().omega(),
            ChainTerm::ZetaProduct(b) => b.normalize().zeta(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        match self {
            ChainTerm::Unit | ChainTerm::Block(_) => true,
            ChainTerm::Sum(parts) => {
                parts.len() >= 2
                    && parts
                        .iter()
                        .all(|p| !matches!(p, ChainTerm::Sum(_)) && p.is_normalized())
            }
            ChainTerm::OmegaProduct(b) | ChainTerm::ZetaProduct(b) => b.is_normalized(),
        }
    }

    /// Structural equality with atoms compared by `eq`.
    pub fn equal_by<F: Fn(&Block, &Block) -> bool + Copy>(&self, other: &ChainTerm, eq: F) -> bool {
        match (self, other) {
            (ChainTerm::Unit, ChainTerm::Unit) => true,
            (ChainTerm::Block(a), ChainTerm::Block(b)) => eq(a, b),
            (ChainTerm::Sum(a), ChainTerm::Sum(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equal_by(y, eq))
            }
            (ChainTerm::OmegaProduct(a), ChainTerm::OmegaProduct(b))
            | (ChainTerm::ZetaProduct(a), ChainTerm::ZetaProduct(b)) => a.equal_by(b, eq),
            _ => false,
        }
    }

    /// Replace every atom by `f(atom)`.
    pub fn map_blocks<F: Fn(&Block) -> Block + Copy>(&self, f: F) -> ChainTerm {
        match self {
            ChainTerm::Unit => ChainTerm::Unit,
            ChainTerm::Block(b) => ChainTerm::Block(f(b)),
            ChainTerm::Sum(parts) => {
                ChainTerm::Sum(parts.iter().map(|p| p.map_blocks(f)).collect())
            }
            ChainTerm::OmegaProduct(b) => b.map_blocks(f).omega(),
            ChainTerm::ZetaProduct(b) => b.map_blocks(f).zeta(),
        }
    }

    fn push_atoms(&self, out: &mut Vec<Block>) {
        match self {
            ChainTerm::Unit => {}
            ChainTerm::Block(b) => out.push(*b),
            ChainTerm::Sum(parts) => parts.iter().for_each(|p| p.push_atoms(out)),
            ChainTerm::OmegaProduct(b) | ChainTerm::ZetaProduct(b) => b.push_atoms(out),
        }
    }

    fn push_tails(&self, out: &mut Vec<ChainTerm>) {
        match self {
            ChainTerm::Unit => out.push(ChainTerm::Unit),
            ChainTerm::Block(b) => out.push(ChainTerm::Block(b.tail())),
            ChainTerm::OmegaProduct(base) | ChainTerm::ZetaProduct(base) => {
                let mut inner = Vec::new();
                base.push_tails(&mut inner);
                let rest = (**base).clone().omega();
                out.extend(inner.into_iter().map(|u| ChainTerm::sum([u, rest.clone()])));
            }
            ChainTerm::Sum(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    let mut inner = Vec::new();
                    part.push_tails(&mut inner);
                    let suffix = &parts[i + 1..];
                    out.extend(
                        inner.into_iter().map(|u| {
                            ChainTerm::sum(std::iter::once(u).chain(suffix.iter().cloned()))
                        }),
                    );
                }
            }
        }
    }
}

/// Flatten nested sums.
pub fn normalize(t: &ChainTerm) -> ChainTerm {
    t.normalize()
}

/// Isomorphism of normalized terms within the constructor calculus.
pub fn iso_equal(a: &ChainTerm, b: &ChainTerm, policy: IsoPolicy) -> bool {
    a.equal_by(b, |x, y| policy.blocks_equal(x, y))
}

/// Rank of a term: finite for block-free terms, `ω + n` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(u32),
    OmegaPlus(u32),
}

impl Rank {
    fn succ(self) -> Rank {
        match self {
            Rank::Finite(n) => Rank::Finite(n + 1),
            Rank::OmegaPlus(n) => Rank::OmegaPlus(n + 1),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::OmegaPlus(0) => f.write_str("omega"),
            Rank::OmegaPlus(n) => write!(f, "omega+{n}"),
        }
    }
}

/// A sum must end in an ℕ-product that dominates the other parts.
pub fn rank(t: &ChainTerm) -> Result<Rank, TermError> {
    match t {
        ChainTerm::Unit => Ok(Rank::Finite(0)),
        ChainTerm::Block(_) => Ok(Rank::OmegaPlus(0)),
        ChainTerm::OmegaProduct(b) | ChainTerm::ZetaProduct(b) => Ok(rank(b)?.succ()),
        ChainTerm::Sum(parts) => {
            let unsupported = || TermError::UnsupportedShape(t.to_string());
            let (last, init) = parts.split_last().ok_or_else(unsupported)?;
            if !matches!(last, ChainTerm::OmegaProduct(_)) || init.is_empty() {
                return Err(unsupported());
            }
            let top = rank(last)?;
            for p in init {
                if rank(p)? > top {
                    return Err(unsupported());
                }
            }
            Ok(top)
        }
    }
}

/// Block atoms in left-to-right order.
pub fn atom_sequence(t: &ChainTerm) -> Vec<Block> {
    let mut out = Vec::new();
    t.push_atoms(&mut out);
    out
}

/// The tails of `t`, one per generic cut-off location, deduplicated up to
/// `policy` and kept in cut-off order.
pub fn tail_candidates(t: &ChainTerm, policy: IsoPolicy) -> Vec<ChainTerm> {
    let mut all = Vec::new();
    t.push_tails(&mut all);
    let mut out: Vec<ChainTerm> = Vec::with_capacity(all.len());
    for c in all {
        if !out.iter().any(|o| iso_equal(o, &c, policy)) {
            out.push(c);
        }
    }
    out
}

/// The tails of `t` in cut-off order, one per generic location, without
/// deduplication.
pub fn tail_candidates_all(t: &ChainTerm) -> Vec<ChainTerm> {
    let mut all = Vec::new();
    t.push_tails(&mut all);
    all
}

impl fmt::Display for ChainTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainTerm::Unit => f.write_str("1"),
            ChainTerm::Block(b) => write!(f, "{b}"),
            ChainTerm::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write_summand(p, f)?;
                }
                Ok(())
            }
            ChainTerm::OmegaProduct(b) => write_product(b, "N", f),
            ChainTerm::ZetaProduct(b) => write_product(b, "Z", f),
        }
    }
}

fn write_summand(t: &ChainTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    // only arises for unnormalized terms
    if matches!(t, ChainTerm::Sum(_)) {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

fn write_product(base: &ChainTerm, op: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match base {
        ChainTerm::Sum(_) => write!(f, "({base}).{op}"),
        _ => write!(f, "{base}.{op}"),
    }
}

/// Pretty-print a term.
pub fn pretty(t: &ChainTerm) -> String {
    t.to_string()
}

impl FromStr for ChainTerm {
    type Err = TermError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let t = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> TermError {
        TermError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn number(&mut self) -> Result<u32, TermError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| self.error("expected a number"))
    }

    fn sum(&mut self) -> Result<ChainTerm, TermError> {
        let mut parts = vec![self.postfix()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            parts.push(self.postfix()?);
        }
        Ok(ChainTerm::sum(parts))
    }

    fn postfix(&mut self) -> Result<ChainTerm, TermError> {
        let mut t = self.primary()?;
        while self.peek() == Some(b'.') {
            self.pos += 1;
            t = match self.bump() {
                Some(b'N') => t.omega(),
                Some(b'Z') => t.zeta(),
                _ => return Err(self.error("expected N or Z after '.'")),
            };
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<ChainTerm, TermError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                if self.bump() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(t)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(ChainTerm::Unit)
            }
            Some(b'f') => {
                self.pos += 1;
                let depth = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.number()?
                } else {
                    1
                };
                let label = self.label()?;
                Ok(ChainTerm::Block(Block {
                    label,
                    tail_depth: depth,
                }))
            }
            Some(c) if c.is_ascii_uppercase() => Ok(ChainTerm::block(self.label()?)),
            _ => Err(self.error("expected a term")),
        }
    }

    fn label(&mut self) -> Result<Label, TermError> {
        let family = match self.bump() {
            Some(c) if c.is_ascii_uppercase() => c as char,
            _ => return Err(self.error("expected a block label")),
        };
        let index = self.number()?;
        Label::new(family, index)
    }
}
