//! Exhaustive and sampled property suites over small index strings.
//!
//! Each suite stops at its first counterexample.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructor::{
    expand_long, expand_short, expand_short_array, BlockArray, TaggedShortArray,
};
use crate::semantics::{
    compare, embed_at, enumerate_elements, leaf_of, succ_rank, weight_of, ElementAddress, Side,
};
use crate::strings::IndexString;
use crate::tails::{
    check_conditions, cutoff_tails, generic_uniform_array, is_uniform_oracle, tail_array,
    tail_array_unrolled, tail_chain, tail_split, ConditionChecker, UniformityOracle,
};
use crate::terms::{iso_equal, Block, IsoPolicy, Label};
use crate::trees::{build_tree, lf, rwt, weight_seq, weight_seq_from_tree};

/// Environment variable seeding the sampled suites.
pub const SEED_VAR: &str = "CHAINFORGE_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_len: usize,
    /// Coordinate bound for element enumeration.
    pub bound: u32,
    /// Number of block classes in assignment sweeps.
    pub classes: u32,
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_len: 5,
            bound: 2,
            classes: 3,
            seed: 0,
            samples: 200,
        }
    }
}

impl VerifyConfig {
    /// Reads the seed from `CHAINFORGE_SEED` when it is set and valid.
    pub fn with_env_seed(mut self) -> Self {
        if let Some(seed) = std::env::var(SEED_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            self.seed = seed;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

type SuiteFn = fn(&VerifyConfig) -> Result<u64, String>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("tree_recurrences", tree_recurrences),
    ("domain_is_tree_labels", domain_is_tree_labels),
    ("short_long_agreement", short_long_agreement),
    ("tail_array_unrolled", unrolled_agreement),
    ("tail_chain_identity", tail_chain_identity),
    ("tail_split", split_identity),
    ("oracle_equivalence", oracle_equivalence),
    ("oracle_sampled_direct", oracle_sampled_direct),
    ("weight_is_successor_rank", weight_is_successor_rank),
    ("embedding_dichotomy", embedding_dichotomy),
    ("embedding_order", embedding_order),
    ("least_element", least_element),
    ("leaf_coverage", leaf_coverage),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(name, _)| *name)
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Option<SuiteOutcome> {
    SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, f)| outcome(n, f(cfg)))
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteOutcome> {
    SUITES.iter().map(|(n, f)| outcome(n, f(cfg))).collect()
}

fn outcome(name: &'static str, result: Result<u64, String>) -> SuiteOutcome {
    match result {
        Ok(checked) => SuiteOutcome {
            name,
            checked,
            counterexample: None,
        },
        Err(cx) => SuiteOutcome {
            name,
            checked: 0,
            counterexample: Some(cx),
        },
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn strings(cfg: &VerifyConfig) -> Vec<IndexString> {
    IndexString::all_up_to(cfg.max_len)
}

/// The short array tagging weight `k` with `U_k`.
pub fn distinct_short(s: &IndexString) -> TaggedShortArray {
    rwt(s)
        .into_iter()
        .map(|k| (k, Block::new(Label::u(k))))
        .collect()
}

fn tree_recurrences(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let tree = build_tree(&s);
        ensure(tree.leaves().len() == lf(&s), || format!("lf({s})"))?;
        ensure(weight_seq_from_tree(&tree) == weight_seq(&s), || {
            format!("wt({s})")
        })?;
        n += 1;
    }
    Ok(n)
}

fn domain_is_tree_labels(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let dom = s.domain();
        let tree = build_tree(&s);
        let labels: std::collections::BTreeSet<_> = tree
            .labels()
            .into_iter()
            .map(|l| l.string.clone())
            .collect();
        ensure(
            dom.len() == labels.len() && labels.iter().all(|t| dom.contains(t)),
            || format!("Dom({s})"),
        )?;
        n += 1;
    }
    Ok(n)
}

fn short_long_agreement(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let uu = distinct_short(&s);
        let long = expand_short_array(&s, &uu).and_then(|mm| expand_long(&s, &mm));
        let short = expand_short(&s, &uu);
        ensure(long.is_ok() && long == short, || format!("{s} with {uu}"))?;
        n += 1;
    }
    Ok(n)
}

fn unrolled_agreement(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let mm = BlockArray::distinct(lf(&s));
        let a = tail_array(&s, &mm).map_err(|e| e.to_string())?;
        let b = tail_array_unrolled(&s, &mm).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{s}: {a} vs {b}"))?;
        n += 1;
    }
    Ok(n)
}

fn tail_chain_identity(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let mm = generic_uniform_array(&s);
        let chain = tail_chain(&s, &mm).map_err(|e| format!("{s}: {e}"))?;
        for u in cutoff_tails(&s, &mm).map_err(|e| e.to_string())? {
            ensure(iso_equal(&chain, &u, IsoPolicy::COLLAPSE_TAILS), || {
                format!("{s} with {mm}: {chain} vs tail {u}")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn split_identity(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg).into_iter().filter(|s| s.plus().is_some()) {
        let mm = generic_uniform_array(&s);
        let cmp = tail_split(&s, &mm).map_err(|e| e.to_string())?;
        ensure(cmp.holds(), || {
            format!("{s} with {mm}: {} vs {}", cmp.plus_side, cmp.minus_side)
        })?;
        n += 1;
    }
    Ok(n)
}

/// Restricted growth strings of length `n` over at most `classes` values:
/// one representative per partition of the positions into classes.
pub struct ClassAssignments {
    current: Vec<u32>,
    classes: u32,
    done: bool,
}

impl ClassAssignments {
    pub fn new(n: usize, classes: u32) -> Self {
        ClassAssignments {
            current: vec![0; n],
            classes,
            done: n == 0 || classes == 0,
        }
    }
}

impl Iterator for ClassAssignments {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let a = &mut self.current;
        let mut i = a.len();
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] <= prefix_max && a[i] + 1 < self.classes {
                a[i] += 1;
                a[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
        Some(out)
    }
}

fn blocks_of(assignment: &[u32]) -> BlockArray {
    assignment
        .iter()
        .map(|&c| Block::new(Label::m(c)))
        .collect()
}

fn oracle_equivalence(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let oracle = UniformityOracle::new(&s);
        let checker = ConditionChecker::new(&s);
        let mut mm = vec![Block::new(Label::m(0)); lf(&s)];
        for assignment in ClassAssignments::new(lf(&s), cfg.classes) {
            for (slot, &c) in mm.iter_mut().zip(&assignment) {
                *slot = Block::new(Label::m(c));
            }
            let report = checker.check(&mm, true).map_err(|e| e.to_string())?;
            let uniform = oracle.is_uniform(&assignment);
            ensure(report.holds() == uniform, || {
                format!(
                    "{s} with {}: conditions {} but oracle {uniform}",
                    blocks_of(&assignment),
                    report.holds()
                )
            })?;
            n += 1;
        }
    }
    Ok(n)
}

/// The direct oracle against the precomputed one and the conditions, on
/// random assignments.
fn oracle_sampled_direct(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let all = strings(cfg);
    let classes = cfg.classes.max(1);
    for _ in 0..cfg.samples {
        let s = &all[rng.gen_range(0..all.len())];
        let width = lf(s);
        // bias towards weight-consistent arrays, which are otherwise rare
        let assignment: Vec<u32> = if rng.gen_bool(0.5) {
            let wt = weight_seq(s);
            let colour: Vec<u32> = (0..=s.rank()).map(|_| rng.gen_range(0..classes)).collect();
            wt.0.iter().map(|&k| colour[k as usize]).collect()
        } else {
            (0..width).map(|_| rng.gen_range(0..classes)).collect()
        };
        let mm = blocks_of(&assignment);
        let direct = is_uniform_oracle(s, &mm).map_err(|e| e.to_string())?;
        let fast = UniformityOracle::new(s).is_uniform(&assignment);
        let conditions = check_conditions(s, &mm, true)
            .map_err(|e| e.to_string())?
            .holds();
        ensure(direct == fast && direct == conditions, || {
            format!(
                "{s} with {mm} (seed {}): direct {direct}, fast {fast}, conditions {conditions}",
                cfg.seed
            )
        })?;
    }
    Ok(cfg.samples as u64)
}

fn elements(s: &IndexString, bound: u32) -> Result<Vec<ElementAddress>, String> {
    enumerate_elements(s, bound.max(1)).map_err(|e| e.to_string())
}

fn weight_is_successor_rank(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        for x in elements(&s, cfg.bound)? {
            let w = weight_of(&s, &x).map_err(|e| e.to_string())?;
            let r = succ_rank(&s, &x).map_err(|e| e.to_string())?;
            ensure(w as usize == r, || {
                format!("{s} at {x}: weight {w}, successor rank {r}")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn embedding_dichotomy(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg).into_iter().filter(|s| !s.is_base()) {
        let mut sides = vec![(Side::Minus, s.minus().expect("non-base"))];
        if let Some(p) = s.plus() {
            sides.push((Side::Plus, p));
        }
        for (side, t) in sides {
            for x in elements(&t, cfg.bound)? {
                let m = succ_rank(&t, &x).map_err(|e| e.to_string())?;
                let expected = if side == Side::Plus && m == t.len() - 1 {
                    m + 1
                } else {
                    m
                };
                for copy in 0..=cfg.bound {
                    let y = embed_at(&s, side, copy, &x).map_err(|e| e.to_string())?;
                    let r = succ_rank(&s, &y).map_err(|e| e.to_string())?;
                    let w = weight_of(&s, &y).map_err(|e| e.to_string())? as usize;
                    ensure(r == expected && w == expected, || {
                        format!(
                            "{s} {side:?} {x} -> {y}: rank {r}, weight {w}, expected {expected}"
                        )
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn embedding_order(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg).into_iter().filter(|s| !s.is_base()) {
        let mut sides = vec![(Side::Minus, s.minus().expect("non-base"))];
        if let Some(p) = s.plus() {
            sides.push((Side::Plus, p));
        }
        for (side, t) in sides {
            let xs = elements(&t, cfg.bound)?;
            let images: Vec<_> = xs
                .iter()
                .map(|x| embed_at(&s, side, 0, x))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in xs.iter().enumerate() {
                    let before = compare(&t, x, y).map_err(|e| e.to_string())?;
                    let after = compare(&s, &images[i], &images[j]).map_err(|e| e.to_string())?;
                    ensure(before == after, || format!("{s} {side:?}: {x} vs {y}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn has_z(x: &ElementAddress) -> bool {
    matches!(x, ElementAddress::ZCopy(..)) || x.inner().is_some_and(has_z)
}

fn least_element(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let xs = elements(&s, cfg.bound)?;
        let min = xs
            .iter()
            .min_by(|a, b| compare(&s, a, b).unwrap_or(Ordering::Equal))
            .expect("non-empty enumeration")
            .clone();
        for x in &xs {
            let top = succ_rank(&s, x).map_err(|e| e.to_string())? == s.len() - 1;
            // with a ℤ index below the bound exists, so x is not least in A(s)
            let least = *x == min && !has_z(x);
            ensure(top == least, || {
                format!("{s} at {x}: top rank {top}, least {least}")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn leaf_coverage(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut n = 0;
    for s in strings(cfg) {
        let wt = weight_seq(&s);
        let mut hit = vec![false; lf(&s)];
        for x in elements(&s, cfg.bound)? {
            let leaf = leaf_of(&s, &x).map_err(|e| e.to_string())?;
            let w = weight_of(&s, &x).map_err(|e| e.to_string())?;
            ensure(wt.get(leaf) == w, || format!("{s} at {x}: leaf {leaf}"))?;
            hit[leaf] = true;
            n += 1;
        }
        ensure(hit.iter().all(|&h| h), || {
            format!("{s}: some leaf has no element")
        })?;
    }
    Ok(n)
}
