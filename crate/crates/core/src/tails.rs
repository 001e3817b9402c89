//! Tails of block constructions and the uniformity conditions.
//!
//! For an array satisfying the uniformity conditions the tail of
//! `A(s)[MM]` is again a constructor chain, `A(f s)[f_s(MM)]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructor::{expand_long, expand_slice, BlockArray, ConstructorError};
use crate::strings::IndexString;
use crate::terms::{tail_candidates, tail_candidates_all, Block, ChainTerm, IsoPolicy, Label};
use crate::trees::{lf, weight_seq, WeightSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TailError {
    #[error(transparent)]
    Constructor(#[from] ConstructorError),
    #[error("uniformity condition (b) fails: blocks {0} and {1} share a weight but differ")]
    NotUniform(usize, usize),
    #[error("s⁺ is undefined for {0}")]
    NoPlus(IndexString),
}

/// Outcome of the two uniformity conditions, plus the tail oracle when run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityReport {
    /// All first tails `f M_i` isomorphic. Declared, not computed.
    pub condition_a: bool,
    /// `M_i = M_j` whenever `wt^s(i) = wt^s(j)`.
    pub condition_b: bool,
    pub witnesses: Witnesses,
    pub oracle_uniform: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Witnesses {
    pub a: Option<(usize, usize)>,
    pub b: Option<(usize, usize)>,
}

impl UniformityReport {
    pub fn holds(&self) -> bool {
        self.condition_a && self.condition_b
    }
}

fn check_len(s: &IndexString, mm: &BlockArray) -> Result<usize, ConstructorError> {
    let expected = lf(s);
    if mm.len() != expected {
        return Err(ConstructorError::LengthMismatch {
            expected,
            found: mm.len(),
        });
    }
    Ok(expected)
}

/// First pair `i < j` with equal weight but different blocks.
fn weight_conflict(wt: &WeightSeq, mm: &[Block]) -> Option<(usize, usize)> {
    (0..mm.len()).find_map(|j| {
        (0..j)
            .find(|&i| wt.get(i) == wt.get(j) && mm[i] != mm[j])
            .map(|i| (i, j))
    })
}

pub fn check_conditions(
    s: &IndexString,
    mm: &BlockArray,
    declared_tail_iso: bool,
) -> Result<UniformityReport, TailError> {
    ConditionChecker::new(s).check(mm.blocks(), declared_tail_iso)
}

/// [`check_conditions`] for a fixed `s`, with the weights computed once.
#[derive(Debug, Clone)]
pub struct ConditionChecker {
    weights: WeightSeq,
}

impl ConditionChecker {
    pub fn new(s: &IndexString) -> Self {
        ConditionChecker {
            weights: weight_seq(s),
        }
    }

    pub fn check(
        &self,
        mm: &[Block],
        declared_tail_iso: bool,
    ) -> Result<UniformityReport, TailError> {
        let n = self.weights.len();
        if mm.len() != n {
            return Err(ConstructorError::LengthMismatch {
                expected: n,
                found: mm.len(),
            }
            .into());
        }
        let witness_a = (!declared_tail_iso).then(|| (0, n.min(2) - 1));
        let witness_b = weight_conflict(&self.weights, mm);
        Ok(UniformityReport {
            condition_a: declared_tail_iso,
            condition_b: witness_b.is_none(),
            witnesses: Witnesses {
                a: witness_a,
                b: witness_b,
            },
            oracle_uniform: None,
        })
    }
}

/// Like [`check_conditions`], and also runs [`is_uniform_oracle`].
pub fn check_with_oracle(
    s: &IndexString,
    mm: &BlockArray,
    declared_tail_iso: bool,
) -> Result<UniformityReport, TailError> {
    let mut report = check_conditions(s, mm, declared_tail_iso)?;
    report.oracle_uniform = Some(is_uniform_oracle(s, mm)?);
    Ok(report)
}

/// The tail array `f_s(MM)`, by recursion over `Dom(s)`.
pub fn tail_array(s: &IndexString, mm: &BlockArray) -> Result<BlockArray, TailError> {
    check_len(s, mm)?;
    Ok(BlockArray(tail_slice(s, mm.blocks())))
}

fn tail_slice(s: &IndexString, mm: &[Block]) -> Vec<Block> {
    if s.is_base() {
        return vec![mm[0].tail()];
    }
    match s.plus() {
        Some(p) => {
            let split = lf(&p);
            let mut out = tail_slice(&p, &mm[..split]);
            out.extend_from_slice(&mm[split..]);
            out
        }
        None => {
            let mut out = tail_slice(&s.minus().expect("non-base string"), mm);
            out.extend_from_slice(mm);
            out
        }
    }
}

/// The tail array computed iteratively. Each round follows the plus chain
/// `t, t⁺, …, t^{+k}` in one step (copying the blocks outside `t^{+k}`) or,
/// when `t(n) = n`, copies the whole current segment and passes to `t⁻`.
pub fn tail_array_unrolled(s: &IndexString, mm: &BlockArray) -> Result<BlockArray, TailError> {
    check_len(s, mm)?;
    let blocks = mm.blocks();
    let mut segments: Vec<&[Block]> = Vec::new();
    let mut current = s.clone();
    let mut width = blocks.len();
    while !current.is_base() {
        match current.max_plus() {
            0 => {
                segments.push(&blocks[..width]);
                current = current.minus().expect("non-base string");
            }
            k => {
                // the whole plus chain at once: its minus sides are adjacent
                let end = current.plus_iter(k).expect("k = max_plus");
                let split = lf(&end);
                segments.push(&blocks[split..width]);
                width = split;
                current = end;
            }
        }
    }
    let mut out = vec![blocks[0].tail()];
    for seg in segments.iter().rev() {
        out.extend_from_slice(seg);
    }
    Ok(BlockArray(out))
}

/// `A(f s)[f_s(MM)]`; requires condition (b).
pub fn tail_chain(s: &IndexString, mm: &BlockArray) -> Result<ChainTerm, TailError> {
    check_len(s, mm)?;
    if let Some((i, j)) = weight_conflict(&weight_seq(s), mm.blocks()) {
        return Err(TailError::NotUniform(i, j));
    }
    let fa = tail_array(s, mm)?;
    Ok(expand_long(&s.tail_string(), &fa)?)
}

/// The tails of `A(s)[MM]` at every generic cut-off, up to strict equality.
pub fn cutoff_tails(s: &IndexString, mm: &BlockArray) -> Result<Vec<ChainTerm>, TailError> {
    let term = expand_long(s, mm)?;
    Ok(tail_candidates(&term, IsoPolicy::STRICT))
}

/// Whether all tails of `A(s)[MM]` are isomorphic, blocks having
/// isomorphic first tails.
pub fn is_uniform_oracle(s: &IndexString, mm: &BlockArray) -> Result<bool, TailError> {
    let tails = cutoff_tails(s, mm)?;
    Ok(tails.iter().all(|t| {
        t.equal_by(&tails[0], |a, b| {
            IsoPolicy::COLLAPSE_TAILS.blocks_equal(a, b)
        })
    }))
}

/// [`is_uniform_oracle`] for a fixed `s`, evaluated over many arrays.
///
/// The cut-off tails are built once over position placeholders and compared
/// with the first one. Tails collapse, so the comparison either fails on
/// shape alone or reduces to a list of positions whose blocks must agree.
#[derive(Debug, Clone)]
pub struct UniformityOracle {
    width: usize,
    satisfiable: bool,
    pairs: Vec<(usize, usize)>,
}

impl UniformityOracle {
    pub fn new(s: &IndexString) -> Self {
        let width = lf(s);
        let positions: Vec<Block> = (0..width as u32).map(|i| Block::new(Label::m(i))).collect();
        let tails = tail_candidates_all(&expand_slice(s, &positions));
        let pairs = std::cell::RefCell::new(Vec::new());
        let record = |a: &Block, b: &Block| match (a.is_tail(), b.is_tail()) {
            (true, true) => true,
            (false, false) => {
                let (i, j) = (a.label.index() as usize, b.label.index() as usize);
                if i != j {
                    pairs.borrow_mut().push((i.min(j), i.max(j)));
                }
                true
            }
            _ => false,
        };
        let satisfiable = tails[1..].iter().all(|u| u.equal_by(&tails[0], record));
        let mut pairs = pairs.into_inner();
        pairs.sort_unstable();
        pairs.dedup();
        UniformityOracle {
            width,
            satisfiable,
            pairs,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Positions that must hold equal blocks; meaningless when no array
    /// can be uniform.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_satisfiable(&self) -> bool {
        self.satisfiable
    }

    /// `mm[i]` stands for the block at position `i`.
    pub fn is_uniform<T: PartialEq>(&self, mm: &[T]) -> bool {
        assert_eq!(mm.len(), self.width, "array length must be lf(s)");
        self.satisfiable && self.pairs.iter().all(|&(i, j)| mm[i] == mm[j])
    }
}

/// Result of comparing `f_{s⁺}(MM₊)` with `f_{s⁻}(MM₋)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitComparison {
    pub plus_side: BlockArray,
    pub minus_side: BlockArray,
    /// First index where the two sides differ (tails collapsed).
    pub mismatch: Option<usize>,
}

impl SplitComparison {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn tail_split(s: &IndexString, mm: &BlockArray) -> Result<SplitComparison, TailError> {
    check_len(s, mm)?;
    let p = s.plus().ok_or_else(|| TailError::NoPlus(s.clone()))?;
    let m = s.minus().expect("s⁺ exists, so s is not the base string");
    let split = lf(&p);
    let plus_side = BlockArray(tail_slice(&p, &mm.0[..split]));
    let minus_side = BlockArray(tail_slice(&m, &mm.0[split..]));
    let policy = IsoPolicy::COLLAPSE_TAILS;
    let mismatch = if plus_side.len() != minus_side.len() {
        Some(plus_side.len().min(minus_side.len()))
    } else {
        plus_side
            .0
            .iter()
            .zip(&minus_side.0)
            .position(|(a, b)| !policy.blocks_equal(a, b))
    };
    Ok(SplitComparison {
        plus_side,
        minus_side,
        mismatch,
    })
}

/// Whether the two halves of the tail array agree.
pub fn tail_split_check(s: &IndexString, mm: &BlockArray) -> Result<bool, TailError> {
    Ok(tail_split(s, mm)?.holds())
}

/// `MM` with `M_i = U_{wt^s(i)}`: the generic array satisfying condition (b).
pub fn generic_uniform_array(s: &IndexString) -> BlockArray {
    weight_seq(s)
        .0
        .iter()
        .map(|&k| Block::new(Label::u(k)))
        .collect()
}
