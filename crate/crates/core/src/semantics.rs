//! Elements of the pure chains `A(s)`, addressed through the constructor
//! recursion, with their order, successor ranks and weights.
//!
//! `A(⟨0⟩)` is a single point. For `s(n) = n` the chain is `ℤ` copies of
//! `A(s⁻)`; otherwise it is `A(s⁺)` followed by `ℕ` copies of `A(s⁻)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strings::IndexString;
use crate::trees::{lf, Branch, NodeLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("address {addr} does not fit the shape of A({string})")]
    ShapeMismatch {
        string: IndexString,
        addr: ElementAddress,
    },
    #[error("{0} has no such side to embed from")]
    NoSide(IndexString),
    #[error("cannot parse address at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bound must be at least 1")]
    ZeroBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementAddress {
    Point,
    /// An element of the initial `A(s⁺)`.
    InitPart(Box<ElementAddress>),
    /// An element of the `m`-th copy of `A(s⁻)` in the `ℕ` product.
    SuccCopy(u32, Box<ElementAddress>),
    /// An element of the `k`-th copy of `A(s⁻)` in the `ℤ` product.
    ZCopy(i64, Box<ElementAddress>),
}

use ElementAddress::{InitPart, Point, SuccCopy, ZCopy};

impl ElementAddress {
    pub fn init(inner: ElementAddress) -> Self {
        InitPart(Box::new(inner))
    }

    pub fn succ(m: u32, inner: ElementAddress) -> Self {
        SuccCopy(m, Box::new(inner))
    }

    pub fn z(k: i64, inner: ElementAddress) -> Self {
        ZCopy(k, Box::new(inner))
    }

    pub fn depth(&self) -> usize {
        match self {
            Point => 0,
            InitPart(x) | SuccCopy(_, x) | ZCopy(_, x) => 1 + x.depth(),
        }
    }

    pub fn inner(&self) -> Option<&ElementAddress> {
        match self {
            Point => None,
            InitPart(x) | SuccCopy(_, x) | ZCopy(_, x) => Some(x),
        }
    }
}

impl fmt::Display for ElementAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point => f.write_str("."),
            InitPart(x) => write!(f, "I({x})"),
            SuccCopy(m, x) => write!(f, "S{m}({x})"),
            ZCopy(k, x) => write!(f, "Z{k}({x})"),
        }
    }
}

impl FromStr for ElementAddress {
    type Err = SemanticsError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bytes = text.trim().as_bytes();
        let (addr, end) = parse_at(bytes, 0)?;
        if end != bytes.len() {
            return Err(parse_err(end, "trailing input"));
        }
        Ok(addr)
    }
}

fn parse_err(pos: usize, msg: &str) -> SemanticsError {
    SemanticsError::Parse {
        pos,
        msg: msg.to_string(),
    }
}

fn parse_at(b: &[u8], pos: usize) -> Result<(ElementAddress, usize), SemanticsError> {
    let kind = *b.get(pos).ok_or_else(|| parse_err(pos, "unexpected end"))?;
    if kind == b'.' {
        return Ok((Point, pos + 1));
    }
    let mut i = pos + 1;
    let num_start = i;
    if kind == b'Z' && b.get(i) == Some(&b'-') {
        i += 1;
    }
    while b.get(i).is_some_and(u8::is_ascii_digit) {
        i += 1;
    }
    let digits = std::str::from_utf8(&b[num_start..i]).expect("ascii");
    if b.get(i) != Some(&b'(') {
        return Err(parse_err(i, "expected '('"));
    }
    let (inner, close) = parse_at(b, i + 1)?;
    if b.get(close) != Some(&b')') {
        return Err(parse_err(close, "expected ')'"));
    }
    let addr = match kind {
        b'I' if digits.is_empty() => ElementAddress::init(inner),
        b'S' => {
            let m = digits
                .parse()
                .map_err(|_| parse_err(num_start, "bad copy index"))?;
            ElementAddress::succ(m, inner)
        }
        b'Z' => {
            let k = digits
                .parse()
                .map_err(|_| parse_err(num_start, "bad copy index"))?;
            ElementAddress::z(k, inner)
        }
        _ => return Err(parse_err(pos, "expected '.', 'I', 'S' or 'Z'")),
    };
    Ok((addr, close + 1))
}

impl Serialize for ElementAddress {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ElementAddress {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// One step of the recursion: which sub-chain `x` lies in.
enum Step<'a> {
    Plus(IndexString, &'a ElementAddress),
    Minus(IndexString, &'a ElementAddress),
}

fn step<'a>(s: &IndexString, x: &'a ElementAddress) -> Result<Option<Step<'a>>, SemanticsError> {
    let mismatch = || SemanticsError::ShapeMismatch {
        string: s.clone(),
        addr: x.clone(),
    };
    if s.is_base() {
        return match x {
            Point => Ok(None),
            _ => Err(mismatch()),
        };
    }
    let zeta = s.is_zeta_case();
    let minus = || s.minus().expect("non-base string");
    match x {
        ZCopy(_, inner) if zeta => Ok(Some(Step::Minus(minus(), inner))),
        SuccCopy(_, inner) if !zeta => Ok(Some(Step::Minus(minus(), inner))),
        InitPart(inner) if !zeta => Ok(Some(Step::Plus(s.plus().expect("s(n) < n"), inner))),
        _ => Err(mismatch()),
    }
}

pub fn check_shape(s: &IndexString, x: &ElementAddress) -> Result<(), SemanticsError> {
    let mut cur = (s.clone(), x);
    while let Some(st) = step(&cur.0, cur.1)? {
        cur = match st {
            Step::Plus(t, y) | Step::Minus(t, y) => (t, y),
        };
    }
    Ok(())
}

/// The order of `A(s)`.
pub fn compare(
    s: &IndexString,
    x: &ElementAddress,
    y: &ElementAddress,
) -> Result<Ordering, SemanticsError> {
    check_shape(s, x)?;
    check_shape(s, y)?;
    Ok(compare_shaped(x, y))
}

fn compare_shaped(x: &ElementAddress, y: &ElementAddress) -> Ordering {
    match (x, y) {
        (Point, Point) => Ordering::Equal,
        (InitPart(a), InitPart(b)) => compare_shaped(a, b),
        (InitPart(_), SuccCopy(..)) => Ordering::Less,
        (SuccCopy(..), InitPart(_)) => Ordering::Greater,
        (SuccCopy(m, a), SuccCopy(k, b)) => m.cmp(k).then_with(|| compare_shaped(a, b)),
        (ZCopy(m, a), ZCopy(k, b)) => m.cmp(k).then_with(|| compare_shaped(a, b)),
        _ => unreachable!("shapes checked"),
    }
}

/// `b_j`: whether the level-`j` component of `x` has an immediate
/// predecessor inside its level-`j+1` component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PredecessorProfile(pub Vec<bool>);

impl PredecessorProfile {
    pub fn first_true(&self) -> Option<usize> {
        self.0.iter().position(|&b| b)
    }
}

pub fn pred_profile(
    s: &IndexString,
    x: &ElementAddress,
) -> Result<PredecessorProfile, SemanticsError> {
    let mut cur = (s.clone(), x);
    let mut outer = Vec::new();
    while let Some(st) = step(&cur.0, cur.1)? {
        // the outermost level is decided first but sits last in the profile
        cur = match st {
            Step::Plus(t, y) => {
                outer.push(false);
                (t, y)
            }
            Step::Minus(t, y) => {
                outer.push(true);
                (t, y)
            }
        };
    }
    outer.reverse();
    Ok(PredecessorProfile(outer))
}

/// The least `j` such that `x` is a `j` successor; the least element of
/// `A(s)` is a `|s|−1` successor.
pub fn succ_rank(s: &IndexString, x: &ElementAddress) -> Result<usize, SemanticsError> {
    let profile = pred_profile(s, x)?;
    Ok(profile.first_true().unwrap_or(profile.0.len()))
}

/// The branch of `Tree(s)` that `x` is associated with, root first.
pub fn assoc_branch(s: &IndexString, x: &ElementAddress) -> Result<Vec<NodeLabel>, SemanticsError> {
    let mut labels = vec![NodeLabel::new(s.clone(), 0)];
    let mut cur = (s.clone(), x);
    while let Some(st) = step(&cur.0, cur.1)? {
        let k = labels.last().expect("root pushed").weight;
        cur = match st {
            Step::Plus(t, y) => {
                labels.push(NodeLabel::new(t.clone(), k + 1));
                (t, y)
            }
            Step::Minus(t, y) => {
                labels.push(NodeLabel::new(t.clone(), 0));
                (t, y)
            }
        };
    }
    Ok(labels)
}

/// The branches taken by [`assoc_branch`].
pub fn assoc_path(s: &IndexString, x: &ElementAddress) -> Result<Vec<Branch>, SemanticsError> {
    let mut path = Vec::new();
    let mut cur = (s.clone(), x);
    while let Some(st) = step(&cur.0, cur.1)? {
        cur = match st {
            Step::Plus(t, y) => {
                path.push(Branch::Plus);
                (t, y)
            }
            Step::Minus(t, y) => {
                path.push(Branch::Minus);
                (t, y)
            }
        };
    }
    Ok(path)
}

/// `wt^s(x)`, the weight of the leaf `x` is associated with.
pub fn weight_of(s: &IndexString, x: &ElementAddress) -> Result<u32, SemanticsError> {
    let branch = assoc_branch(s, x)?;
    Ok(branch.last().expect("non-empty branch").weight)
}

/// Index of the leaf `x` is associated with, in leaf order.
pub fn leaf_of(s: &IndexString, x: &ElementAddress) -> Result<usize, SemanticsError> {
    let mut index = 0;
    let mut cur = (s.clone(), x);
    while let Some(st) = step(&cur.0, cur.1)? {
        cur = match st {
            Step::Plus(t, y) => (t, y),
            Step::Minus(t, y) => {
                if let Some(p) = cur.0.plus() {
                    index += lf(&p);
                }
                (t, y)
            }
        };
    }
    Ok(index)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

/// The canonical embedding of `A(s⁺)` or `A(s⁻)` into `A(s)`.
pub fn embed(
    s: &IndexString,
    side: Side,
    x: &ElementAddress,
) -> Result<ElementAddress, SemanticsError> {
    embed_at(s, side, 0, x)
}

/// As [`embed`], with the minus side landing in copy `copy`.
pub fn embed_at(
    s: &IndexString,
    side: Side,
    copy: u32,
    x: &ElementAddress,
) -> Result<ElementAddress, SemanticsError> {
    if s.is_base() || (side == Side::Plus && s.plus().is_none()) {
        return Err(SemanticsError::NoSide(s.clone()));
    }
    let out = match side {
        Side::Plus => ElementAddress::init(x.clone()),
        Side::Minus if s.is_zeta_case() => ElementAddress::z(copy.into(), x.clone()),
        Side::Minus => ElementAddress::succ(copy, x.clone()),
    };
    check_shape(s, &out)?;
    Ok(out)
}

/// All addresses with `ℕ`-indices in `0..=bound` and `ℤ`-indices in
/// `-bound..=bound`, in increasing order.
pub fn enumerate_elements(
    s: &IndexString,
    bound: u32,
) -> Result<Vec<ElementAddress>, SemanticsError> {
    if bound == 0 {
        return Err(SemanticsError::ZeroBound);
    }
    Ok(enumerate(s, bound))
}

fn enumerate(s: &IndexString, bound: u32) -> Vec<ElementAddress> {
    if s.is_base() {
        return vec![Point];
    }
    let inner = enumerate(&s.minus().expect("non-base string"), bound);
    match s.plus() {
        None => {
            let b = i64::from(bound);
            (-b..=b)
                .flat_map(|k| inner.iter().map(move |x| ElementAddress::z(k, x.clone())))
                .collect()
        }
        Some(p) => {
            let mut out: Vec<ElementAddress> = enumerate(&p, bound)
                .into_iter()
                .map(ElementAddress::init)
                .collect();
            out.extend((0..=bound).flat_map(|m| {
                inner
                    .iter()
                    .map(move |x| ElementAddress::succ(m, x.clone()))
            }));
            out
        }
    }
}
