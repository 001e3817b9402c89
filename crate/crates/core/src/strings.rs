//! Index strings and the strings derived from them.
//!
//! An index string is a finite sequence `s` with `s(0) = 0` and `s(i) <= i`.
//! It drives the recursive constructor: `s⁻` indexes the repeated (minus)
//! sub-component and `s⁺`, when defined, the initial (plus) one.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringError {
    #[error("malformed index string {0:?}")]
    Parse(String),
    #[error("index string must be nonempty")]
    Empty,
    #[error("entry {index} is {value}, but must be at most {index}")]
    EntryTooLarge { index: usize, value: u32 },
    #[error("first entry is {0}, but must be 0")]
    NonZeroStart(u32),
    #[error("s⁻ is undefined for strings of length 1")]
    MinusOfBase,
}

/// A validated index string. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct IndexString(Vec<u32>);

impl IndexString {
    pub fn new(entries: Vec<u32>) -> Result<Self, StringError> {
        let first = *entries.first().ok_or(StringError::Empty)?;
        if first != 0 {
            return Err(StringError::NonZeroStart(first));
        }
        for (index, &value) in entries.iter().enumerate() {
            if value as usize > index {
                return Err(StringError::EntryTooLarge { index, value });
            }
        }
        Ok(IndexString(entries))
    }

    /// The base string `⟨0⟩`.
    pub fn base() -> Self {
        IndexString(vec![0])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_base(&self) -> bool {
        self.0.len() == 1
    }

    /// `|s| - 1`, the finite rank of the pure chain `A(s)`.
    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    /// True when `s(n) = n` for `n = |s| - 1`, the case where `A(s)` is a
    /// ℤ-product and `s⁺` does not exist.
    pub fn is_zeta_case(&self) -> bool {
        self.last() as usize == self.rank()
    }

    /// `s⁻`: drop the last entry.
    pub fn minus(&self) -> Result<IndexString, StringError> {
        if self.is_base() {
            return Err(StringError::MinusOfBase);
        }
        Ok(IndexString(self.0[..self.0.len() - 1].to_vec()))
    }

    /// `s⁺`: delete the entry at position `n - 1`. Defined iff `|s| >= 2`
    /// and `s(n) < n`.
    pub fn plus(&self) -> Option<IndexString> {
        let n = self.rank();
        if n == 0 || self.is_zeta_case() {
            return None;
        }
        let mut entries = self.0.clone();
        entries.remove(n - 1);
        Some(IndexString(entries))
    }

    /// `n - s(n)`, the largest `k` with `s^{+k}` defined.
    pub fn max_plus(&self) -> usize {
        self.rank() - self.last() as usize
    }

    /// `s^{+k}`, i.e. `plus` applied `k` times.
    pub fn plus_iter(&self, k: usize) -> Option<IndexString> {
        if k > self.max_plus() {
            return None;
        }
        let keep = self.len() - 1 - k;
        let mut entries = self.0[..keep].to_vec();
        entries.push(self.last());
        Some(IndexString(entries))
    }

    /// `f s`: the index string of the tail chain. `f⟨0⟩ = ⟨0⟩`, otherwise
    /// `s⁻⌢⟨0⟩`.
    pub fn tail_string(&self) -> IndexString {
        let mut entries = self.0.clone();
        let last = entries.len() - 1;
        entries[last] = 0;
        IndexString(entries)
    }

    /// `Dom(s)`: the closure of `{s}` under `t ↦ t⁺` and `t ↦ t⁻`.
    pub fn domain(&self) -> StringSet {
        let mut elements = BTreeSet::new();
        let mut pending = vec![self.clone()];
        while let Some(t) = pending.pop() {
            if !elements.insert(t.clone()) || t.is_base() {
                continue;
            }
            if let Some(p) = t.plus() {
                pending.push(p);
            }
            pending.push(t.minus().expect("non-base string"));
        }
        StringSet { elements }
    }

    /// Every valid index string of length `len`, in lexicographic order.
    pub fn all_of_len(len: usize) -> Vec<IndexString> {
        if len == 0 {
            return Vec::new();
        }
        let mut out = vec![vec![0u32]];
        for i in 1..len {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=i as u32).map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(IndexString).collect()
    }

    /// Every valid index string of length `1..=max_len`.
    pub fn all_up_to(max_len: usize) -> Vec<IndexString> {
        (1..=max_len).flat_map(IndexString::all_of_len).collect()
    }
}

impl TryFrom<Vec<u32>> for IndexString {
    type Error = StringError;

    fn try_from(entries: Vec<u32>) -> Result<Self, Self::Error> {
        IndexString::new(entries)
    }
}

impl From<IndexString> for Vec<u32> {
    fn from(s: IndexString) -> Self {
        s.0
    }
}

impl FromStr for IndexString {
    type Err = StringError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Err(StringError::Empty);
        }
        let entries = text
            .split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| StringError::Parse(text.to_string()))?;
        IndexString::new(entries)
    }
}

impl fmt::Display for IndexString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A finite set of index strings, such as `Dom(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StringSet {
    elements: BTreeSet<IndexString>,
}

impl StringSet {
    pub fn contains(&self, s: &IndexString) -> bool {
        self.elements.contains(s)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IndexString> {
        self.elements.iter()
    }

    /// Whether the set is closed under `t ↦ t⁺` and `t ↦ t⁻`.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|t| {
            t.is_base()
                || (self.contains(&t.minus().expect("non-base string"))
                    && t.plus().is_none_or(|p| self.contains(&p)))
        })
    }
}

impl FromIterator<IndexString> for StringSet {
    fn from_iter<I: IntoIterator<Item = IndexString>>(iter: I) -> Self {
        StringSet {
            elements: iter.into_iter().collect(),
        }
    }
}
