//! Two String Families LCP: for pair sets `P` and `Q` over the terminals of
//! one errata trie, maximise `LCP(P1, Q1) + LCP(P2, Q2)`.
//!
//! Each pair becomes a labelled leaf in two copies of the trie (blue for `P`,
//! red for `Q`) hung under its first and second terminal respectively. An
//! LCP is then the weight of an LCA, which turns the task into the Colored
//! Trees Problem. The copies are pruned to the auxiliary tree spanned by the
//! attachment points, so their size depends on `|P| + |Q|` only.

use crate::coloredtrees::{self, Color, ColoredTreeInstance, Tree};
use crate::errata::{ErrataTrie, NodeId};
use crate::lcf::Source;
use crate::Error;

/// Where a pair came from: the string, the 1-based cut position, and the
/// edit budgets its two components consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairOrigin {
    pub source: Source,
    pub cut: usize,
    pub ham: u8,
    pub adj2: u8,
}

impl Default for PairOrigin {
    fn default() -> Self {
        PairOrigin {
            source: Source::X,
            cut: 0,
            ham: 0,
            adj2: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyPair {
    pub first: NodeId,
    pub second: NodeId,
    pub origin: PairOrigin,
}

/// A set of terminal pairs bound to one trie.
#[derive(Debug, Clone)]
pub struct PairFamily {
    trie: u64,
    pairs: Vec<FamilyPair>,
}

impl PairFamily {
    pub fn new(trie: &ErrataTrie) -> Self {
        PairFamily {
            trie: trie.id(),
            pairs: Vec::new(),
        }
    }

    pub fn push(&mut self, first: NodeId, second: NodeId, origin: PairOrigin) {
        self.pairs.push(FamilyPair {
            first,
            second,
            origin,
        });
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[FamilyPair] {
        &self.pairs
    }

    pub fn get(&self, i: usize) -> &FamilyPair {
        &self.pairs[i]
    }

    fn check(&self, trie: &ErrataTrie) -> Result<(), Error> {
        if self.trie != trie.id() {
            return Err(Error::ForeignTrie);
        }
        if let Some(p) = self
            .pairs
            .iter()
            .find(|p| p.first as usize >= trie.node_count() || p.second as usize >= trie.node_count())
        {
            return Err(Error::InvalidNode(p.first.max(p.second)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxPairResult {
    pub value: usize,
    /// Index of the winning pair in `P`.
    pub p_index: usize,
    /// Index of the winning pair in `Q`.
    pub q_index: usize,
    /// `(LCP(P1, Q1), LCP(P2, Q2))`.
    pub components: (usize, usize),
}

/// How the two trie copies are reduced before solving.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compaction {
    /// Drop nodes without colored leaves below; keep unary nodes.
    PruneOnly,
    /// Prune, then dissolve every non-root node with one child.
    Dissolve,
}

pub fn max_pair_lcp(
    trie: &ErrataTrie,
    p: &PairFamily,
    q: &PairFamily,
) -> Result<Option<MaxPairResult>, Error> {
    p.check(trie)?;
    q.check(trie)?;
    if p.is_empty() || q.is_empty() {
        return Ok(None);
    }
    let instance = build_instance(trie, p, q, Compaction::Dissolve)?;
    let Some(answer) = coloredtrees::solve_valid(&instance) else {
        return Ok(None);
    };
    let (pi, qi) = (answer.blue as usize, answer.red as usize);
    let (a, b) = (p.get(pi), q.get(qi));
    let components = (
        trie.lcp_terminals(a.first, b.first),
        trie.lcp_terminals(a.second, b.second),
    );
    debug_assert_eq!(components.0 + components.1, answer.value as usize);
    Ok(Some(MaxPairResult {
        value: components.0 + components.1,
        p_index: pi,
        q_index: qi,
        components,
    }))
}

/// The quadratic definition, for checking.
pub fn max_pair_lcp_brute(
    trie: &ErrataTrie,
    p: &PairFamily,
    q: &PairFamily,
) -> Result<Option<MaxPairResult>, Error> {
    p.check(trie)?;
    q.check(trie)?;
    let mut best: Option<MaxPairResult> = None;
    for (pi, a) in p.pairs.iter().enumerate() {
        for (qi, b) in q.pairs.iter().enumerate() {
            let components = (
                trie.lcp_terminals(a.first, b.first),
                trie.lcp_terminals(a.second, b.second),
            );
            let value = components.0 + components.1;
            if best.is_none_or(|r| value > r.value) {
                best = Some(MaxPairResult {
                    value,
                    p_index: pi,
                    q_index: qi,
                    components,
                });
            }
        }
    }
    Ok(best)
}

/// The colored-trees instance for `(P, Q)`: blue leaf `i` for `P[i]`, red
/// leaf `j` for `Q[j]`.
pub fn build_instance(
    trie: &ErrataTrie,
    p: &PairFamily,
    q: &PairFamily,
    compaction: Compaction,
) -> Result<ColoredTreeInstance, Error> {
    p.check(trie)?;
    q.check(trie)?;
    let attach = |pick: fn(&FamilyPair) -> NodeId| {
        let mut v: Vec<(NodeId, Color, u32)> = Vec::with_capacity(p.len() + q.len());
        v.extend(
            p.pairs
                .iter()
                .enumerate()
                .map(|(i, x)| (pick(x), Color::Blue, i as u32)),
        );
        v.extend(
            q.pairs
                .iter()
                .enumerate()
                .map(|(i, x)| (pick(x), Color::Red, i as u32)),
        );
        v
    };
    let first = attach(|x| x.first);
    let second = attach(|x| x.second);
    let build = |leaves: &[(NodeId, Color, u32)]| match compaction {
        Compaction::PruneOnly => pruned_copy(trie, leaves),
        Compaction::Dissolve => auxiliary_copy(trie, leaves).dissolve_unary().0,
    };
    Ok(ColoredTreeInstance::new(build(&first), build(&second)))
}

fn hang_leaves(trie: &ErrataTrie, tree: &mut Tree, slot: &[u32], leaves: &[(NodeId, Color, u32)]) {
    for &(node, color, label) in leaves {
        let w = trie.weight(node) as u64;
        tree.add_leaf(slot[node as usize], w, color, label);
    }
}

/// Every trie node with an attachment below it, unary ones included.
fn pruned_copy(trie: &ErrataTrie, leaves: &[(NodeId, Color, u32)]) -> Tree {
    let n = trie.node_count();
    let mut keep = vec![false; n];
    keep[0] = true;
    for &(node, _, _) in leaves {
        keep[node as usize] = true;
    }
    for v in (1..n).rev() {
        if keep[v] {
            keep[trie.parent(v as NodeId) as usize] = true;
        }
    }
    let mut slot = vec![u32::MAX; n];
    let mut tree = Tree::new(0);
    slot[0] = 0;
    for v in 1..n {
        if keep[v] {
            let parent = slot[trie.parent(v as NodeId) as usize];
            slot[v] = tree.add_node(parent, trie.weight(v as NodeId) as u64);
        }
    }
    hang_leaves(trie, &mut tree, &slot, leaves);
    tree
}

/// The root, the attachment nodes and the LCAs of preorder neighbours.
fn auxiliary_copy(trie: &ErrataTrie, leaves: &[(NodeId, Color, u32)]) -> Tree {
    // Node ids are preorder numbers, so a scan over marks yields keys in
    // preorder without sorting.
    let n = trie.node_count();
    let mut mark = vec![false; n];
    mark[0] = true;
    for &(node, _, _) in leaves {
        mark[node as usize] = true;
    }
    let keys: Vec<NodeId> = (0..n as NodeId).filter(|&v| mark[v as usize]).collect();
    for w in keys.windows(2) {
        mark[trie.lca(w[0], w[1]) as usize] = true;
    }

    let mut slot = vec![0u32; n];
    let mut tree = Tree::new(0);
    let mut stack: Vec<NodeId> = vec![0];
    for v in (1..n as NodeId).filter(|&v| mark[v as usize]) {
        while trie.lca(*stack.last().unwrap(), v) != *stack.last().unwrap() {
            stack.pop();
        }
        slot[v as usize] = tree.add_node(slot[*stack.last().unwrap() as usize], trie.weight(v) as u64);
        stack.push(v);
    }
    for &(node, color, label) in leaves {
        tree.add_leaf(slot[node as usize], trie.weight(node) as u64, color, label);
    }
    tree
}
