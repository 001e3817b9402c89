//! The binary tree `Tree(s)`, its ordered leaves and their weights.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strings::IndexString;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree position {0} does not exist")]
    NoSuchPosition(TreePath),
}

/// A node `⟨t;k⟩` of `Tree(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeLabel {
    pub string: IndexString,
    pub weight: u32,
}

impl NodeLabel {
    pub fn new(string: IndexString, weight: u32) -> Self {
        NodeLabel { string, weight }
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<<{}>;{}>", self.string, self.weight)
    }
}

/// Which extension of a node to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `σ¹ = ⟨t⁺;k+1⟩`, ordered first.
    Plus,
    /// `σ⁰ = ⟨t⁻;0⟩`.
    Minus,
}

/// A node position, as the sequence of branches taken from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TreePath(pub Vec<Branch>);

impl TreePath {
    pub fn root() -> Self {
        TreePath(Vec::new())
    }

    pub fn child(&self, branch: Branch) -> Self {
        let mut steps = self.0.clone();
        steps.push(branch);
        TreePath(steps)
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for b in &self.0 {
            f.write_str(match b {
                Branch::Plus => "+",
                Branch::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// `Tree(s)`. Children are ordered plus child first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct STree {
    #[serde(flatten)]
    pub label: NodeLabel,
    pub children: Vec<STree>,
}

impl STree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn plus_child(&self) -> Option<&STree> {
        (self.children.len() == 2).then(|| &self.children[0])
    }

    pub fn minus_child(&self) -> Option<&STree> {
        self.children.last()
    }

    pub fn child(&self, branch: Branch) -> Option<&STree> {
        match branch {
            Branch::Plus => self.plus_child(),
            Branch::Minus => self.minus_child(),
        }
    }

    pub fn node_at(&self, path: &TreePath) -> Option<&STree> {
        path.0.iter().try_fold(self, |node, &b| node.child(b))
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(STree::node_count).sum::<usize>()
    }

    /// Leaves in tree order.
    pub fn leaves(&self) -> Vec<&NodeLabel> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a NodeLabel>) {
        if self.is_leaf() {
            out.push(&self.label);
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    /// All labels, preorder.
    pub fn labels(&self) -> Vec<&NodeLabel> {
        let mut out = vec![&self.label];
        for c in &self.children {
            out.extend(c.labels());
        }
        out
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(STree::depth).max().unwrap_or(0)
    }

    /// Every position in preorder, paired with its node.
    pub fn positions(&self) -> Vec<(TreePath, &STree)> {
        let mut out = Vec::new();
        let mut stack = vec![(TreePath::root(), self)];
        while let Some((path, node)) = stack.pop() {
            if let Some(m) = node.minus_child() {
                stack.push((path.child(Branch::Minus), m));
            }
            if let Some(p) = node.plus_child() {
                stack.push((path.child(Branch::Plus), p));
            }
            out.push((path, node));
        }
        out
    }
}

pub fn build_tree(s: &IndexString) -> STree {
    build_node(s.clone(), 0)
}

fn build_node(t: IndexString, weight: u32) -> STree {
    let mut children = Vec::new();
    if !t.is_base() {
        if let Some(p) = t.plus() {
            children.push(build_node(p, weight + 1));
        }
        children.push(build_node(t.minus().expect("non-base string"), 0));
    }
    STree {
        label: NodeLabel::new(t, weight),
        children,
    }
}

/// `lf(s)` via `lf(s) = lf(s⁺) + lf(s⁻)`, without building the tree.
pub fn lf(s: &IndexString) -> usize {
    if s.is_base() {
        return 1;
    }
    let minus = lf(&s.minus().expect("non-base string"));
    match s.plus() {
        Some(p) => lf(&p) + minus,
        None => minus,
    }
}

/// The weights `wt^s(i)` of the leaves, in leaf order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightSeq(pub Vec<u32>);

impl WeightSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn range(&self) -> BTreeSet<u32> {
        self.0.iter().copied().collect()
    }
}

impl fmt::Display for WeightSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `wt^s`, computed by the leaf-weight recurrence.
pub fn weight_seq(s: &IndexString) -> WeightSeq {
    if s.is_base() {
        return WeightSeq(vec![0]);
    }
    let minus = weight_seq(&s.minus().expect("non-base string"));
    let Some(p) = s.plus() else {
        return minus;
    };
    let mut weights = weight_seq(&p).0;
    if s.last() == 0 {
        weights[0] += 1;
    }
    weights.extend(minus.0);
    WeightSeq(weights)
}

/// `wt^s`, read off the leaf labels of `Tree(s)`.
pub fn weight_seq_from_tree(tree: &STree) -> WeightSeq {
    WeightSeq(tree.leaves().iter().map(|l| l.weight).collect())
}

/// `rwt^s`, the set of weights that occur.
pub fn rwt(s: &IndexString) -> BTreeSet<u32> {
    weight_seq(s).range()
}

/// A half-open interval `[lo, hi)` of leaf indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeafInterval {
    pub lo: usize,
    pub hi: usize,
}

impl LeafInterval {
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo <= i && i < self.hi
    }
}

impl fmt::Display for LeafInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.lo, self.hi)
    }
}

/// `Lf_{t,k}` for the node at `path` in `Tree(s)`.
pub fn leaf_interval(s: &IndexString, path: &TreePath) -> Result<LeafInterval, TreeError> {
    let mut t = s.clone();
    let mut interval = LeafInterval { lo: 0, hi: lf(s) };
    for &step in &path.0 {
        if t.is_base() {
            return Err(TreeError::NoSuchPosition(path.clone()));
        }
        let plus = t.plus();
        match (step, plus) {
            (Branch::Plus, Some(p)) => {
                interval.hi = interval.lo + lf(&p);
                t = p;
            }
            (Branch::Plus, None) => return Err(TreeError::NoSuchPosition(path.clone())),
            (Branch::Minus, plus) => {
                if let Some(p) = plus {
                    interval.lo += lf(&p);
                }
                t = t.minus().expect("non-base string");
            }
        }
    }
    Ok(interval)
}

/// One node per line, plus child above minus child.
pub fn render_ascii(tree: &STree) -> String {
    let mut out = String::new();
    out.push_str(&tree.label.to_string());
    out.push('\n');
    render_children(tree, "", &mut out);
    out
}

fn render_children(tree: &STree, prefix: &str, out: &mut String) {
    let count = tree.children.len();
    for (i, child) in tree.children.iter().enumerate() {
        let last = i + 1 == count;
        out.push_str(prefix);
        out.push_str(if last { "`- " } else { "+- " });
        out.push_str(&child.label.to_string());
        out.push('\n');
        let nested = format!("{prefix}{}", if last { "   " } else { "|  " });
        render_children(child, &nested, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> IndexString {
        text.parse().unwrap()
    }

    fn node(t: &str, k: u32) -> NodeLabel {
        NodeLabel::new(s(t), k)
    }

    #[test]
    fn small_trees_match_figures() {
        let t = build_tree(&s("0,0"));
        assert_eq!(t.label, node("0,0", 0));
        assert_eq!(t.children[0].label, node("0", 1));
        assert_eq!(t.children[1].label, node("0", 0));

        let t = build_tree(&s("0,1"));
        assert_eq!(t.children.len(), 1);
        assert_eq!(t.children[0].label, node("0", 0));
    }

    #[test]
    fn fully_expanded_tree_of_0010() {
        let t = build_tree(&s("0,0,1,0"));
        let leaves: Vec<_> = t.leaves().into_iter().cloned().collect();
        assert_eq!(leaves.len(), 7);
        assert!(leaves.iter().all(|l| l.string.is_base()));
        let plus = t.plus_child().unwrap();
        assert_eq!(plus.label, node("0,0,0", 1));
        assert_eq!(plus.plus_child().unwrap().label, node("0,0", 2));
        assert_eq!(
            plus.plus_child().unwrap().plus_child().unwrap().label,
            node("0", 3)
        );
        let minus = t.minus_child().unwrap();
        assert_eq!(minus.label, node("0,0,1", 0));
        assert_eq!(minus.plus_child().unwrap().label, node("0,1", 1));
        assert_eq!(t.node_count(), 14);
    }

    #[test]
    fn leaf_counts() {
        assert_eq!(lf(&s("0,0,0")), 4);
        assert_eq!(lf(&s("0,0,1")), 3);
        assert_eq!(lf(&s("0,1,2")), 1);
        assert_eq!(lf(&s("0,1,1,1,1")), 8);
    }

    #[test]
    fn weight_sequences() {
        assert_eq!(weight_seq(&s("0,0,1,0")).0, vec![3, 0, 1, 0, 0, 1, 0]);
        assert_eq!(weight_seq(&s("0,0,1")).0, vec![0, 1, 0]);
        assert_eq!(weight_seq(&s("0,0,1,2")).0, vec![1, 0, 0, 1, 0]);
        assert_eq!(weight_seq(&s("0,1,0")).0, vec![2, 0, 0]);
    }

    #[test]
    fn weight_ranges() {
        assert_eq!(rwt(&s("0,0,1,0")), [0, 1, 3].into_iter().collect());
        assert_eq!(rwt(&s("0,1,1,1")), [0].into_iter().collect());
        assert_eq!(rwt(&s("0,0,0")), [0, 1, 2].into_iter().collect());
    }

    #[test]
    fn recurrences_agree_with_tree() {
        for t in IndexString::all_up_to(6) {
            let tree = build_tree(&t);
            assert_eq!(lf(&t), tree.leaves().len(), "{t}");
            assert_eq!(weight_seq(&t), weight_seq_from_tree(&tree), "{t}");
            assert_eq!(tree.depth(), t.len(), "{t}");
        }
    }

    #[test]
    fn tree_labels_are_the_domain() {
        for t in IndexString::all_up_to(6) {
            let tree = build_tree(&t);
            let labels: BTreeSet<_> = tree
                .labels()
                .into_iter()
                .map(|l| l.string.clone())
                .collect();
            let dom: BTreeSet<_> = t.domain().iter().cloned().collect();
            assert_eq!(labels, dom, "{t}");
        }
    }

    #[test]
    fn first_weight_counts_leftmost_plus_run() {
        for t in IndexString::all_up_to(6) {
            let wt = weight_seq(&t);
            // leftmost path: plus when available, and a minus step resets the run
            let mut run = 0;
            let mut node = build_tree(&t);
            while !node.is_leaf() {
                match node.plus_child() {
                    Some(p) => {
                        run += 1;
                        node = p.clone();
                    }
                    None => {
                        run = 0;
                        node = node.minus_child().unwrap().clone();
                    }
                }
            }
            assert_eq!(wt.get(0), run, "{t}");
            assert_eq!(wt.get(0) as usize == t.rank(), t.last() == 0 || t.is_base());
        }
    }

    #[test]
    fn minus_subtree_is_tree_of_minus() {
        for t in IndexString::all_up_to(6)
            .into_iter()
            .filter(|t| !t.is_base())
        {
            let tree = build_tree(&t);
            assert_eq!(
                *tree.minus_child().unwrap(),
                build_tree(&t.minus().unwrap()),
                "{t}"
            );
        }
    }

    #[test]
    fn leaf_interval_examples() {
        let t = s("0,0,1,2");
        let root = TreePath::root();
        assert_eq!(
            leaf_interval(&t, &root).unwrap(),
            LeafInterval { lo: 0, hi: 5 }
        );
        let plus = root.child(Branch::Plus);
        assert_eq!(
            leaf_interval(&t, &plus).unwrap(),
            LeafInterval { lo: 0, hi: 2 }
        );
        let minus = root.child(Branch::Minus);
        assert_eq!(
            leaf_interval(&t, &minus).unwrap(),
            LeafInterval { lo: 2, hi: 5 }
        );
        let bad = plus.child(Branch::Plus);
        assert_eq!(
            leaf_interval(&t, &bad),
            Err(TreeError::NoSuchPosition(bad.clone()))
        );
        let too_deep = TreePath(vec![Branch::Minus; 4]);
        assert!(leaf_interval(&t, &too_deep).is_err());
    }

    #[test]
    fn leaf_intervals_partition_parents() {
        for t in IndexString::all_up_to(6) {
            let tree = build_tree(&t);
            for (path, node) in tree.positions() {
                let iv = leaf_interval(&t, &path).unwrap();
                assert_eq!(iv.len(), lf(&node.label.string));
                if node.is_leaf() {
                    assert_eq!(iv.len(), 1);
                    continue;
                }
                let m = leaf_interval(&t, &path.child(Branch::Minus)).unwrap();
                assert_eq!(m.hi, iv.hi);
                match node.plus_child() {
                    Some(_) => {
                        let p = leaf_interval(&t, &path.child(Branch::Plus)).unwrap();
                        assert_eq!((p.lo, p.hi), (iv.lo, m.lo));
                    }
                    None => assert_eq!(m, iv),
                }
            }
            // leaves at the bottom level partition [0, lf)
            let mut leaf_ivs: Vec<_> = tree
                .positions()
                .into_iter()
                .filter(|(_, n)| n.is_leaf())
                .map(|(p, _)| leaf_interval(&t, &p).unwrap())
                .collect();
            leaf_ivs.sort_by_key(|iv| iv.lo);
            for (i, iv) in leaf_ivs.iter().enumerate() {
                assert_eq!(*iv, LeafInterval { lo: i, hi: i + 1 });
            }
        }
    }

    #[test]
    fn render_shapes() {
        assert_eq!(render_ascii(&build_tree(&s("0"))), "<<0>;0>\n");
        assert_eq!(
            render_ascii(&build_tree(&s("0,1"))),
            "<<0,1>;0>\n`- <<0>;0>\n"
        );
        let text = render_ascii(&build_tree(&s("0,0,1,0")));
        assert_eq!(text.lines().count(), 14);
        assert_eq!(
            render_ascii(&build_tree(&s("0,0,0"))),
            "\
<<0,0,0>;0>
+- <<0,0>;1>
|  +- <<0>;2>
|  `- <<0>;0>
`- <<0,0>;0>
   +- <<0>;1>
   `- <<0>;0>
"
        );
    }
}
