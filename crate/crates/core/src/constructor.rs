//! The long and short constructors `A(s)[MM]` and `A(s)⟨UU⟩`.
//!
//! The long constructor consumes one block per leaf of `Tree(s)`. The short
//! one consumes a tagged array with one block per weight in `rwt^s`; the
//! two agree through [`expand_short_array`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strings::IndexString;
use crate::terms::{Block, ChainTerm, TermError};
use crate::trees::{lf, rwt, weight_seq, Branch, NodeLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructorError {
    #[error("array has {found} blocks, but lf(s) = {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("blocks {first} and {second} share a weight but differ")]
    WeightClassConflict { first: usize, second: usize },
    #[error("tags {found:?} do not match rwt(s) = {expected:?}")]
    TagMismatch {
        expected: BTreeSet<u32>,
        found: BTreeSet<u32>,
    },
    #[error("decomposition needs |s| >= 2")]
    BaseString,
    #[error("leaf {leaf} is out of range for lf(s) = {lf}")]
    NoSuchLeaf { leaf: usize, lf: usize },
    #[error("malformed array {0:?}")]
    Parse(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// The block array `⟨M_0, …, M_{lf(s)-1}⟩` of a long constructor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockArray(pub Vec<Block>);

impl BlockArray {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.0
    }

    /// `M0, M1, …` of length `n`.
    pub fn distinct(n: usize) -> Self {
        BlockArray(
            (0..n as u32)
                .map(|i| Block::new(crate::terms::Label::m(i)))
                .collect(),
        )
    }
}

impl FromIterator<Block> for BlockArray {
    fn from_iter<I: IntoIterator<Item = Block>>(iter: I) -> Self {
        BlockArray(iter.into_iter().collect())
    }
}

impl FromStr for BlockArray {
    type Err = ConstructorError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.trim().is_empty() {
            return Err(ConstructorError::Parse(text.to_string()));
        }
        text.split(',')
            .map(|part| part.trim().parse::<Block>().map_err(ConstructorError::from))
            .collect()
    }
}

impl fmt::Display for BlockArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Block::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// A tagged short array `{⟨U_k, k⟩ : k ∈ rwt^s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaggedShortArray(pub BTreeMap<u32, Block>);

impl TaggedShortArray {
    pub fn tags(&self) -> BTreeSet<u32> {
        self.0.keys().copied().collect()
    }

    pub fn get(&self, tag: u32) -> Option<&Block> {
        self.0.get(&tag)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(u32, Block)> for TaggedShortArray {
    fn from_iter<I: IntoIterator<Item = (u32, Block)>>(iter: I) -> Self {
        TaggedShortArray(iter.into_iter().collect())
    }
}

impl FromStr for TaggedShortArray {
    type Err = ConstructorError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructorError::Parse(text.to_string());
        if text.trim().is_empty() {
            return Err(bad());
        }
        let mut out = BTreeMap::new();
        for part in text.split(',') {
            let (tag, block) = part.split_once(':').ok_or_else(bad)?;
            let tag: u32 = tag.trim().parse().map_err(|_| bad())?;
            let block: Block = block.trim().parse()?;
            if out.insert(tag, block).is_some() {
                return Err(bad());
            }
        }
        Ok(TaggedShortArray(out))
    }
}

impl fmt::Display for TaggedShortArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, b)| format!("{k}:{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

fn check_len(s: &IndexString, n: usize) -> Result<(), ConstructorError> {
    let expected = lf(s);
    if n != expected {
        return Err(ConstructorError::LengthMismatch { expected, found: n });
    }
    Ok(())
}

fn check_tags(s: &IndexString, uu: &TaggedShortArray) -> Result<(), ConstructorError> {
    let expected = rwt(s);
    let found = uu.tags();
    if expected != found {
        return Err(ConstructorError::TagMismatch { expected, found });
    }
    Ok(())
}

/// `A(s)[MM]`:
/// `A(s⁻)[MM].ℤ` if `s(n) = n`, else `A(s⁺)[MM₊] + A(s⁻)[MM₋].ℕ`.
pub fn expand_long(s: &IndexString, mm: &BlockArray) -> Result<ChainTerm, ConstructorError> {
    check_len(s, mm.len())?;
    Ok(expand_slice(s, mm.blocks()))
}

pub(crate) fn expand_slice(s: &IndexString, mm: &[Block]) -> ChainTerm {
    if s.is_base() {
        return ChainTerm::Block(mm[0]);
    }
    let minus = s.minus().expect("non-base string");
    match s.plus() {
        None => expand_slice(&minus, mm).zeta(),
        Some(plus) => {
            let split = lf(&plus);
            ChainTerm::sum([
                expand_slice(&plus, &mm[..split]),
                expand_slice(&minus, &mm[split..]).omega(),
            ])
        }
    }
}

/// The block-free chain `A(s)` built on the one-point chain.
pub fn expand_pure(s: &IndexString) -> ChainTerm {
    if s.is_base() {
        return ChainTerm::Unit;
    }
    let minus = expand_pure(&s.minus().expect("non-base string"));
    match s.plus() {
        None => minus.zeta(),
        Some(plus) => ChainTerm::sum([expand_pure(&plus), minus.omega()]),
    }
}

/// The tagged reduction of `MM`: `M_i = U_{wt^s(i)}`.
pub fn reduce_short(
    s: &IndexString,
    mm: &BlockArray,
) -> Result<TaggedShortArray, ConstructorError> {
    check_len(s, mm.len())?;
    let wt = weight_seq(s);
    let mut first_of: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, block) in mm.blocks().iter().enumerate() {
        let first = *first_of.entry(wt.get(i)).or_insert(i);
        if mm.0[first] != *block {
            return Err(ConstructorError::WeightClassConflict { first, second: i });
        }
    }
    Ok(first_of.into_iter().map(|(k, i)| (k, mm.0[i])).collect())
}

/// `MM` with `M_i = UU(wt^s(i))`.
pub fn expand_short_array(
    s: &IndexString,
    uu: &TaggedShortArray,
) -> Result<BlockArray, ConstructorError> {
    check_tags(s, uu)?;
    Ok(weight_seq(s).0.iter().map(|k| uu.0[k]).collect())
}

/// `UU⁺_s` (when `s⁺` exists) and `UU⁻_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub plus: Option<TaggedShortArray>,
    pub minus: TaggedShortArray,
}

pub fn decompose(
    s: &IndexString,
    uu: &TaggedShortArray,
) -> Result<Decomposition, ConstructorError> {
    if s.is_base() {
        return Err(ConstructorError::BaseString);
    }
    check_tags(s, uu)?;
    let (plus, minus) = decompose_entries(s, &uu.0);
    Ok(Decomposition {
        plus: plus.map(TaggedShortArray),
        minus: TaggedShortArray(minus),
    })
}

type Tagged<V> = BTreeMap<u32, V>;

/// Decomposition over any payload; `entries` must be keyed by `rwt^s`.
fn decompose_entries<V: Clone>(
    s: &IndexString,
    entries: &Tagged<V>,
) -> (Option<Tagged<V>>, Tagged<V>) {
    let restrict = |t: &IndexString| -> Tagged<V> {
        rwt(t)
            .into_iter()
            .map(|k| (k, entries[&k].clone()))
            .collect()
    };
    let minus = restrict(&s.minus().expect("non-base string"));
    let plus = s.plus().map(|p| {
        if s.last() != 0 {
            return restrict(&p);
        }
        // wt^s(0) = n is exactly one more than wt^{s⁺}(0) = n - 1
        let n = s.rank() as u32;
        let mut out: Tagged<V> = rwt(&p)
            .into_iter()
            .filter(|&k| k != n - 1)
            .map(|k| (k, entries[&k].clone()))
            .collect();
        out.insert(n - 1, entries[&n].clone());
        out
    });
    (plus, minus)
}

/// `A(s)⟨UU⟩`:
/// `A(s⁻)⟨UU⁻⟩.ℤ` if `s(n) = n`, else `A(s⁺)⟨UU⁺⟩ + A(s⁻)⟨UU⁻⟩.ℕ`.
pub fn expand_short(s: &IndexString, uu: &TaggedShortArray) -> Result<ChainTerm, ConstructorError> {
    check_tags(s, uu)?;
    Ok(expand_short_unchecked(s, uu))
}

fn expand_short_unchecked(s: &IndexString, uu: &TaggedShortArray) -> ChainTerm {
    if s.is_base() {
        return ChainTerm::Block(uu.0[&0]);
    }
    let (plus, minus) = decompose_entries(s, &uu.0);
    let minus_term = expand_short_unchecked(
        &s.minus().expect("non-base string"),
        &TaggedShortArray(minus),
    );
    match (s.plus(), plus) {
        (Some(p), Some(plus)) => ChainTerm::sum([
            expand_short_unchecked(&p, &TaggedShortArray(plus)),
            minus_term.omega(),
        ]),
        _ => minus_term.zeta(),
    }
}

/// The tree of tagged short arrays associated with the nodes of `Tree(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrayTree {
    #[serde(flatten)]
    pub node: NodeLabel,
    pub array: TaggedShortArray,
    pub children: Vec<ArrayTree>,
}

impl ArrayTree {
    pub fn child(&self, branch: Branch) -> Option<&ArrayTree> {
        match branch {
            Branch::Plus => (self.children.len() == 2).then(|| &self.children[0]),
            Branch::Minus => self.children.last(),
        }
    }

    pub fn leaves(&self) -> Vec<&ArrayTree> {
        if self.children.is_empty() {
            return vec![self];
        }
        self.children.iter().flat_map(ArrayTree::leaves).collect()
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ArrayTree::node_count)
            .sum::<usize>()
    }
}

pub fn node_arrays(s: &IndexString, uu: &TaggedShortArray) -> Result<ArrayTree, ConstructorError> {
    check_tags(s, uu)?;
    Ok(array_node(s.clone(), 0, &uu.0, &|k: &Block| *k))
}

fn array_node<V: Clone>(
    t: IndexString,
    weight: u32,
    entries: &Tagged<V>,
    to_block: &dyn Fn(&V) -> Block,
) -> ArrayTree {
    let mut children = Vec::new();
    if !t.is_base() {
        let (plus, minus) = decompose_entries(&t, entries);
        if let (Some(p), Some(plus)) = (t.plus(), plus) {
            children.push(array_node(p, weight + 1, &plus, to_block));
        }
        children.push(array_node(
            t.minus().expect("non-base string"),
            0,
            &minus,
            to_block,
        ));
    }
    ArrayTree {
        node: NodeLabel::new(t, weight),
        array: entries.iter().map(|(k, v)| (*k, to_block(v))).collect(),
        children,
    }
}

/// Root tags of `uu` in the order they are acquired walking from leaf
/// `leaf` up to the root of the association tree.
fn acquisition_tags(
    s: &IndexString,
    uu: &TaggedShortArray,
    leaf: usize,
) -> Result<Vec<u32>, ConstructorError> {
    let chain = origin_chain(s, uu, leaf)?;
    let mut order = Vec::new();
    let mut seen = BTreeSet::new();
    for set in chain.iter().rev() {
        for &tag in set {
            if seen.insert(tag) {
                order.push(tag);
            }
        }
    }
    Ok(order)
}

/// Root-tag sets of the arrays on the branch from the root to `leaf`.
fn origin_chain(
    s: &IndexString,
    uu: &TaggedShortArray,
    leaf: usize,
) -> Result<Vec<BTreeSet<u32>>, ConstructorError> {
    check_tags(s, uu)?;
    let leaves = lf(s);
    if leaf >= leaves {
        return Err(ConstructorError::NoSuchLeaf { leaf, lf: leaves });
    }
    // track each node entry by the root tag it descends from
    let origins: Tagged<u32> = uu.0.keys().map(|&k| (k, k)).collect();
    let mut chain: Vec<BTreeSet<u32>> = Vec::new();
    let mut t = s.clone();
    let mut entries = origins;
    let mut offset = leaf;
    loop {
        chain.push(entries.values().copied().collect());
        if t.is_base() {
            break;
        }
        let (plus, minus) = decompose_entries(&t, &entries);
        let minus_s = t.minus().expect("non-base string");
        match (t.plus(), plus) {
            (Some(p), Some(plus)) if offset < lf(&p) => {
                t = p;
                entries = plus;
            }
            (Some(p), Some(_)) => {
                offset -= lf(&p);
                t = minus_s;
                entries = minus;
            }
            _ => {
                t = minus_s;
                entries = minus;
            }
        }
    }
    Ok(chain)
}

/// Blocks of `uu` in order of acquisition along the branch to `leaf`.
pub fn acquisition_order(
    s: &IndexString,
    uu: &TaggedShortArray,
    leaf: usize,
) -> Result<Vec<Block>, ConstructorError> {
    Ok(acquisition_tags(s, uu, leaf)?
        .into_iter()
        .map(|k| uu.0[&k])
        .collect())
}

/// The untagged short array: acquisition order along the right-most
/// branch of `Tree(s)`.
pub fn canonical_order(
    s: &IndexString,
    uu: &TaggedShortArray,
) -> Result<Vec<Block>, ConstructorError> {
    acquisition_order(s, uu, lf(s) - 1)
}

/// Acquisition order along the left-most branch; diagnostic only.
pub fn leftmost_order(
    s: &IndexString,
    uu: &TaggedShortArray,
) -> Result<Vec<Block>, ConstructorError> {
    acquisition_order(s, uu, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{atom_sequence, iso_equal, rank, IsoPolicy, Label, Rank};

    fn s(text: &str) -> IndexString {
        text.parse().unwrap()
    }

    fn arr(text: &str) -> BlockArray {
        text.parse().unwrap()
    }

    fn tagged(text: &str) -> TaggedShortArray {
        text.parse().unwrap()
    }

    fn term(text: &str) -> ChainTerm {
        text.parse().unwrap()
    }

    #[test]
    fn long_expansions() {
        assert_eq!(
            expand_long(&s("0,1,0"), &arr("M0,M1,M2")).unwrap(),
            term("M0 + M1.N + M2.Z.N")
        );
        assert_eq!(expand_long(&s("0"), &arr("M0")).unwrap(), term("M0"));
        assert_eq!(
            expand_long(&s("0,0,1,2"), &arr("M0,M1,M2,M3,M4")).unwrap(),
            term("(M0 + M1.N).Z + (M2.Z + (M3 + M4.N).N).N")
        );
        assert_eq!(
            expand_long(&s("0,0"), &arr("M0")),
            Err(ConstructorError::LengthMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn pure_expansions() {
        assert_eq!(expand_pure(&s("0,0")), term("1 + 1.N"));
        assert_eq!(expand_pure(&s("0,1")), term("1.Z"));
        assert_eq!(expand_pure(&s("0,1,2")), term("1.Z.Z"));
        for t in IndexString::all_up_to(6) {
            assert_eq!(
                rank(&expand_pure(&t)),
                Ok(Rank::Finite(t.rank() as u32)),
                "{t}"
            );
        }
    }

    #[test]
    fn long_atoms_follow_array_order() {
        for t in IndexString::all_up_to(6) {
            let mm = BlockArray::distinct(lf(&t));
            let e = expand_long(&t, &mm).unwrap();
            assert!(e.is_normalized());
            assert_eq!(atom_sequence(&e), mm.0, "{t}");
            assert_eq!(rank(&e), Ok(Rank::OmegaPlus(t.rank() as u32)), "{t}");
        }
    }

    #[test]
    fn reduce_short_examples() {
        let uu = reduce_short(&s("0,0,1,0"), &arr("U3,U0,U1,U0,U0,U1,U0")).unwrap();
        assert_eq!(uu, tagged("0:U0,1:U1,3:U3"));
        assert_eq!(reduce_short(&s("0"), &arr("M0")).unwrap(), tagged("0:M0"));
        assert_eq!(
            reduce_short(&s("0,1,0"), &arr("M0,M1,M2")),
            Err(ConstructorError::WeightClassConflict {
                first: 1,
                second: 2
            })
        );
    }

    #[test]
    fn expand_short_array_examples() {
        assert_eq!(
            expand_short_array(&s("0,0,1,0"), &tagged("0:U0,1:U1,3:U3")).unwrap(),
            arr("U3,U0,U1,U0,U0,U1,U0")
        );
        assert_eq!(
            expand_short_array(&s("0"), &tagged("0:U0")).unwrap(),
            arr("U0")
        );
        assert!(matches!(
            expand_short_array(&s("0,0,1,0"), &tagged("0:U0,1:U1")),
            Err(ConstructorError::TagMismatch { .. })
        ));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&s("0,0,1,0"), &tagged("0:U0,1:U1,3:U3")).unwrap();
        assert_eq!(d.plus, Some(tagged("0:U0,1:U1,2:U3")));
        assert_eq!(d.minus, tagged("0:U0,1:U1"));
        let d = decompose(&s("0,1"), &tagged("0:U0")).unwrap();
        assert_eq!(
            d,
            Decomposition {
                plus: None,
                minus: tagged("0:U0")
            }
        );
        assert_eq!(
            decompose(&s("0"), &tagged("0:U0")),
            Err(ConstructorError::BaseString)
        );
    }

    fn all_tagged(t: &IndexString, classes: u32) -> Vec<TaggedShortArray> {
        let tags: Vec<u32> = rwt(t).into_iter().collect();
        let mut out = vec![TaggedShortArray::default()];
        for &k in &tags {
            out = out
                .into_iter()
                .flat_map(|a| {
                    (0..classes).map(move |c| {
                        let mut a = a.clone();
                        a.0.insert(k, Block::new(Label::u(c)));
                        a
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn decompose_matches_reduction_of_halves() {
        for t in IndexString::all_up_to(6)
            .into_iter()
            .filter(|t| !t.is_base())
        {
            let distinct: TaggedShortArray = rwt(&t)
                .into_iter()
                .map(|k| (k, Block::new(Label::u(k))))
                .collect();
            let mm = expand_short_array(&t, &distinct).unwrap();
            let d = decompose(&t, &distinct).unwrap();
            let minus_s = t.minus().unwrap();
            match t.plus() {
                Some(p) => {
                    let split = lf(&p);
                    let plus_mm = BlockArray(mm.0[..split].to_vec());
                    let minus_mm = BlockArray(mm.0[split..].to_vec());
                    assert_eq!(
                        d.plus.clone(),
                        Some(reduce_short(&p, &plus_mm).unwrap()),
                        "{t}"
                    );
                    assert_eq!(d.minus, reduce_short(&minus_s, &minus_mm).unwrap(), "{t}");
                    // the retagging moves the top tag exactly when s(n) = 0
                    let n = t.rank() as u32;
                    let retagged =
                        distinct.get(n).is_some() && d.plus.unwrap().get(n - 1) == distinct.get(n);
                    assert_eq!(retagged, t.last() == 0, "{t}");
                }
                None => {
                    assert_eq!(d.plus, None);
                    assert_eq!(d.minus, reduce_short(&minus_s, &mm).unwrap(), "{t}");
                }
            }
        }
    }

    #[test]
    fn short_and_long_agree() {
        for t in IndexString::all_up_to(6) {
            for uu in all_tagged(&t, 3) {
                let mm = expand_short_array(&t, &uu).unwrap();
                assert_eq!(reduce_short(&t, &mm).unwrap(), uu);
                let long = expand_long(&t, &mm).unwrap();
                let short = expand_short(&t, &uu).unwrap();
                assert!(iso_equal(&long, &short, IsoPolicy::STRICT), "{t} {uu}");
            }
        }
    }

    #[test]
    fn expand_short_example_0010() {
        let uu = tagged("0:U0,1:U1,3:U3");
        let short = expand_short(&s("0,0,1,0"), &uu).unwrap();
        let long = expand_long(&s("0,0,1,0"), &arr("U3,U0,U1,U0,U0,U1,U0")).unwrap();
        assert_eq!(short, long);
        assert_eq!(
            short.to_string(),
            "U3 + U0.N + (U1 + U0.N).N + (U0.Z + (U1 + U0.N).N).N"
        );
        assert_eq!(expand_short(&s("0"), &tagged("0:U0")).unwrap(), term("U0"));
    }

    #[test]
    fn canonical_orders() {
        let uu = tagged("0:U0,1:U1,3:U3");
        let t = s("0,0,1,0");
        let show = |v: Vec<Block>| v.iter().map(Block::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(show(canonical_order(&t, &uu).unwrap()), "U0,U1,U3");
        assert_eq!(show(leftmost_order(&t, &uu).unwrap()), "U3,U0,U1");
        assert_eq!(show(acquisition_order(&t, &uu, 1).unwrap()), "U0,U3,U1");
        assert_eq!(
            show(canonical_order(&s("0"), &tagged("0:U0")).unwrap()),
            "U0"
        );
        assert!(matches!(
            acquisition_order(&t, &uu, 7),
            Err(ConstructorError::NoSuchLeaf { leaf: 7, lf: 7 })
        ));
    }

    #[test]
    fn association_tree_figure() {
        let tree = node_arrays(&s("0,0,1,0"), &tagged("0:U0,1:U1,3:U3")).unwrap();
        assert_eq!(tree.node_count(), 14);
        let at = |path: &[Branch]| {
            path.iter()
                .try_fold(&tree, |n, &b| n.child(b))
                .map(|n| n.array.to_string())
                .unwrap()
        };
        use Branch::{Minus as M, Plus as P};
        assert_eq!(at(&[]), "0:U0,1:U1,3:U3");
        assert_eq!(at(&[P]), "0:U0,1:U1,2:U3");
        assert_eq!(at(&[P, P]), "0:U0,1:U3");
        assert_eq!(at(&[P, P, P]), "0:U3");
        assert_eq!(at(&[P, P, M]), "0:U0");
        assert_eq!(at(&[P, M]), "0:U0,1:U1");
        assert_eq!(at(&[P, M, P]), "0:U1");
        assert_eq!(at(&[P, M, M]), "0:U0");
        assert_eq!(at(&[M]), "0:U0,1:U1");
        assert_eq!(at(&[M, P]), "0:U0");
        assert_eq!(at(&[M, P, M]), "0:U0");
        assert_eq!(at(&[M, M]), "0:U0,1:U1");
        assert_eq!(at(&[M, M, P]), "0:U1");
        assert_eq!(at(&[M, M, M]), "0:U0");
        let single = node_arrays(&s("0"), &tagged("0:U0")).unwrap();
        assert_eq!(single.node_count(), 1);
    }

    #[test]
    fn association_tree_properties() {
        for t in IndexString::all_up_to(6) {
            let uu: TaggedShortArray = rwt(&t)
                .into_iter()
                .map(|k| (k, Block::new(Label::u(k))))
                .collect();
            let tree = node_arrays(&t, &uu).unwrap();
            for leaf in tree.leaves() {
                assert_eq!(leaf.array.len(), 1, "{t}");
            }
            // each node's tags are the weights of its own string
            fn walk(n: &ArrayTree) {
                assert_eq!(n.array.tags(), rwt(&n.node.string));
                for c in &n.children {
                    assert!(n.array.len() <= c.array.len() + 1);
                    assert!(c.array.len() <= n.array.len());
                    walk(c);
                }
            }
            walk(&tree);
            for leaf in 0..lf(&t) {
                let chain = origin_chain(&t, &uu, leaf).unwrap();
                for w in chain.windows(2) {
                    assert!(w[1].is_subset(&w[0]));
                    assert!(w[0].len() <= w[1].len() + 1, "{t} leaf {leaf}");
                }
                assert_eq!(chain[0], uu.tags());
                let order = acquisition_tags(&t, &uu, leaf).unwrap();
                let mut sorted = order.clone();
                sorted.sort();
                assert_eq!(
                    sorted,
                    uu.tags().into_iter().collect::<Vec<_>>(),
                    "{t} leaf {leaf}"
                );
            }
        }
    }

    #[test]
    fn array_formats() {
        assert_eq!(arr("M0, fM1,f^2U3").to_string(), "M0,fM1,f^2U3");
        assert!("".parse::<BlockArray>().is_err());
        assert!("M0,,M1".parse::<BlockArray>().is_err());
        assert_eq!(tagged("3:U3,0:U0").to_string(), "0:U0,3:U3");
        assert!("0:U0,0:U1".parse::<TaggedShortArray>().is_err());
        assert!("0U0".parse::<TaggedShortArray>().is_err());
    }
}
