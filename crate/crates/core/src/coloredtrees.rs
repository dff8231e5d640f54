//! Colored Trees Problem: two weighted trees whose leaves are blue or red
//! and carry numbers. Find `v1` in the first tree and `v2` in the second,
//! of maximum total weight, whose subtrees share a blue number and a red
//! number.
//!
//! Since weights never decrease downwards, an optimal `(v1, v2)` is the pair
//! of LCAs of some blue leaf `b` and red leaf `r` present in both trees.
//! [`solve`] merges per-node ordered sets bottom-up over the first tree,
//! smaller into larger. Set elements are positions of the corresponding
//! leaves in the second tree's preorder; for an element moving across, only
//! its predecessor and successor among the opposite color can maximise the
//! LCA weight in the second tree.

use std::collections::{BTreeSet, HashMap};
use std::ops::Bound;

use crate::lca::PreorderLca;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf {
    pub color: Color,
    pub label: u32,
}

/// A rooted tree built by appending nodes under existing ones. Node 0 is the
/// root, and every node's id exceeds its parent's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<u32>,
    weight: Vec<u64>,
    leaf: Vec<Option<Leaf>>,
}

impl Tree {
    pub fn new(root_weight: u64) -> Self {
        Tree {
            parent: vec![0],
            weight: vec![root_weight],
            leaf: vec![None],
        }
    }

    pub fn add_node(&mut self, parent: u32, weight: u64) -> u32 {
        assert!((parent as usize) < self.len(), "unknown parent {parent}");
        self.parent.push(parent);
        self.weight.push(weight);
        self.leaf.push(None);
        (self.len() - 1) as u32
    }

    pub fn add_leaf(&mut self, parent: u32, weight: u64, color: Color, label: u32) -> u32 {
        let id = self.add_node(parent, weight);
        self.leaf[id as usize] = Some(Leaf { color, label });
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        (v != 0).then(|| self.parent[v as usize])
    }

    pub fn weight(&self, v: u32) -> u64 {
        self.weight[v as usize]
    }

    pub fn leaf(&self, v: u32) -> Option<Leaf> {
        self.leaf[v as usize]
    }

    pub fn child_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.len()];
        for v in 1..self.len() {
            counts[self.parent[v] as usize] += 1;
        }
        counts
    }

    /// Node carrying a given colored leaf.
    pub fn leaf_index(&self) -> HashMap<Leaf, u32> {
        self.leaf
            .iter()
            .enumerate()
            .filter_map(|(v, l)| l.map(|l| (l, v as u32)))
            .collect()
    }

    pub fn depth(&self, mut v: u32) -> usize {
        let mut d = 0;
        while v != 0 {
            v = self.parent[v as usize];
            d += 1;
        }
        d
    }

    /// LCA by walking parent pointers.
    pub fn naive_lca(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        while da > db {
            a = self.parent[a as usize];
            da -= 1;
        }
        while db > da {
            b = self.parent[b as usize];
            db -= 1;
        }
        while a != b {
            a = self.parent[a as usize];
            b = self.parent[b as usize];
        }
        a
    }

    /// Colored leaves with their nodes, sorted by leaf.
    fn sorted_leaves(&self) -> Vec<(Leaf, u32)> {
        let mut v: Vec<(Leaf, u32)> = self
            .leaf
            .iter()
            .enumerate()
            .filter_map(|(v, l)| l.map(|l| (l, v as u32)))
            .collect();
        v.sort_unstable();
        v
    }

    fn validate(&self, name: &str) -> Result<(), Error> {
        let counts = self.child_counts();
        for v in 0..self.len() {
            if v > 0 && self.weight[v] < self.weight[self.parent[v] as usize] {
                return Err(Error::MalformedTree(format!(
                    "{name}: node {v} is lighter than its parent"
                )));
            }
            if self.leaf[v].is_some() && counts[v] > 0 {
                return Err(Error::MalformedTree(format!(
                    "{name}: colored node {v} has children"
                )));
            }
        }
        if let Some(w) = self.sorted_leaves().windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::MalformedTree(format!(
                "{name}: duplicate {:?} leaf {}",
                w[0].0.color, w[0].0.label
            )));
        }
        Ok(())
    }

    /// Preorder numbering with children visited by increasing id, as
    /// `(node -> position, position -> node)`.
    fn preorder(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.len();
        let mut size = vec![1u32; n];
        for v in (1..n).rev() {
            size[self.parent[v] as usize] += size[v];
        }
        let mut pos = vec![0u32; n];
        let mut next = vec![1u32; n];
        for v in 1..n {
            let p = self.parent[v] as usize;
            pos[v] = next[p];
            next[p] += size[v];
            next[v] = pos[v] + 1;
        }
        let mut order = vec![0u32; n];
        for (v, &p) in pos.iter().enumerate() {
            order[p as usize] = v as u32;
        }
        (pos, order)
    }

    /// Every non-root internal node has at least two children.
    pub fn is_branching(&self) -> bool {
        self.child_counts()
            .iter()
            .enumerate()
            .skip(1)
            .all(|(_, &c)| c != 1)
    }

    /// Removes every non-root node with exactly one child; the child takes
    /// its place. Returns the compacted tree and the old-to-new id map.
    pub fn dissolve_unary(&self) -> (Tree, Vec<Option<u32>>) {
        let counts = self.child_counts();
        let mut map = vec![None; self.len()];
        let mut out = Tree::new(self.weight[0]);
        map[0] = Some(0);
        for v in 1..self.len() {
            if counts[v] == 1 {
                continue;
            }
            let mut p = self.parent[v] as usize;
            while p != 0 && counts[p] == 1 {
                p = self.parent[p] as usize;
            }
            let parent = map[p].expect("ancestor kept");
            let id = out.add_node(parent, self.weight[v]);
            out.leaf[id as usize] = self.leaf[v];
            map[v] = Some(id);
        }
        (out, map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTreeInstance {
    pub first: Tree,
    pub second: Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoredAnswer {
    pub v1: u32,
    pub v2: u32,
    pub value: u64,
    pub blue: u32,
    pub red: u32,
}

impl ColoredTreeInstance {
    pub fn new(first: Tree, second: Tree) -> Self {
        ColoredTreeInstance { first, second }
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.first.validate("first tree")?;
        self.second.validate("second tree")
    }

    /// Checks that `answer` is a legal pair and that its value adds up.
    pub fn check_answer(&self, answer: &ColoredAnswer) -> bool {
        let under = |t: &Tree, top: u32, leaf: Leaf| {
            t.leaf_index()
                .get(&leaf)
                .is_some_and(|&v| t.naive_lca(top, v) == top)
        };
        let blue = Leaf {
            color: Color::Blue,
            label: answer.blue,
        };
        let red = Leaf {
            color: Color::Red,
            label: answer.red,
        };
        answer.value == self.first.weight(answer.v1) + self.second.weight(answer.v2)
            && under(&self.first, answer.v1, blue)
            && under(&self.first, answer.v1, red)
            && under(&self.second, answer.v2, blue)
            && under(&self.second, answer.v2, red)
    }
}

/// Evaluates every blue/red label pair present in both trees.
pub fn brute_solve(instance: &ColoredTreeInstance) -> Result<Option<ColoredAnswer>, Error> {
    instance.validate()?;
    let (t1, t2) = (&instance.first, &instance.second);
    let (i1, i2) = (t1.leaf_index(), t2.leaf_index());
    let shared = |color: Color| {
        let mut v: Vec<(u32, u32, u32)> = i1
            .iter()
            .filter(|(l, _)| l.color == color)
            .filter_map(|(l, &a)| i2.get(l).map(|&b| (l.label, a, b)))
            .collect();
        v.sort_unstable();
        v
    };
    let blues = shared(Color::Blue);
    let reds = shared(Color::Red);

    let mut best: Option<ColoredAnswer> = None;
    for &(b, b1, b2) in &blues {
        for &(r, r1, r2) in &reds {
            let v1 = t1.naive_lca(b1, r1);
            let v2 = t2.naive_lca(b2, r2);
            let value = t1.weight(v1) + t2.weight(v2);
            if best.is_none_or(|a| value > a.value) {
                best = Some(ColoredAnswer {
                    v1,
                    v2,
                    value,
                    blue: b,
                    red: r,
                });
            }
        }
    }
    Ok(best)
}

#[derive(Default)]
struct Sets {
    blue: BTreeSet<u32>,
    red: BTreeSet<u32>,
}

impl Sets {
    fn len(&self) -> usize {
        self.blue.len() + self.red.len()
    }
}

fn neighbours(set: &BTreeSet<u32>, p: u32) -> impl Iterator<Item = u32> + '_ {
    let below = set.range(..p).next_back();
    let above = set.range((Bound::Excluded(p), Bound::Unbounded)).next();
    below.into_iter().chain(above).copied()
}

/// Small-to-large solution, O(m log^2 m).
pub fn solve(instance: &ColoredTreeInstance) -> Result<Option<ColoredAnswer>, Error> {
    instance.validate()?;
    Ok(solve_valid(instance))
}

/// [`solve`] for an instance known to be valid.
pub(crate) fn solve_valid(instance: &ColoredTreeInstance) -> Option<ColoredAnswer> {
    let (t1, t2) = (&instance.first, &instance.second);

    let (node_to_pre, pre_to_node) = t2.preorder();
    let pre_parent: Vec<u32> = pre_to_node
        .iter()
        .map(|&v| node_to_pre[t2.parent[v as usize] as usize])
        .collect();
    let lca2 = PreorderLca::new(&pre_parent);
    let in_second = t2.sorted_leaves();
    let position = |l: &Leaf| {
        in_second
            .binary_search_by(|(m, _)| m.cmp(l))
            .ok()
            .map(|i| node_to_pre[in_second[i].1 as usize])
    };
    let label_at = |p: u32| {
        t2.leaf[pre_to_node[p as usize] as usize]
            .expect("set elements are leaves")
            .label
    };

    let mut sets: Vec<Sets> = (0..t1.len()).map(|_| Sets::default()).collect();
    for v in 0..t1.len() {
        if let Some(l) = t1.leaf[v] {
            if let Some(p) = position(&l) {
                match l.color {
                    Color::Blue => sets[v].blue.insert(p),
                    Color::Red => sets[v].red.insert(p),
                };
            }
        }
    }

    let mut best: Option<ColoredAnswer> = None;
    for v in (1..t1.len()).rev() {
        let parent = t1.parent[v] as usize;
        let mut small = std::mem::take(&mut sets[v]);
        if small.len() == 0 {
            continue;
        }
        let mut big = std::mem::take(&mut sets[parent]);
        if small.len() > big.len() {
            std::mem::swap(&mut small, &mut big);
        }
        let w1 = t1.weight[parent];
        let mut consider = |b: u32, r: u32| {
            let v2 = lca2.lca(b, r);
            let node2 = pre_to_node[v2 as usize];
            let value = w1 + t2.weight[node2 as usize];
            if best.is_none_or(|a| value > a.value) {
                best = Some(ColoredAnswer {
                    v1: parent as u32,
                    v2: node2,
                    value,
                    blue: label_at(b),
                    red: label_at(r),
                });
            }
        };
        for &b in &small.blue {
            for r in neighbours(&big.red, b) {
                consider(b, r);
            }
        }
        for &r in &small.red {
            for b in neighbours(&big.blue, r) {
                consider(b, r);
            }
        }
        big.blue.extend(small.blue);
        big.red.extend(small.red);
        sets[parent] = big;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn figure_instance() {
        let inst = gen::figure_two();
        let fast = solve(&inst).unwrap().unwrap();
        let slow = brute_solve(&inst).unwrap().unwrap();
        assert_eq!(fast.value, 3);
        assert_eq!(slow.value, 3);
        assert_eq!((fast.blue, fast.red), (4, 2));
        assert!(inst.check_answer(&fast));
        assert_eq!(inst.first.depth(fast.v1), 1);
        assert_eq!(inst.second.depth(fast.v2), 2);
    }

    #[test]
    fn single_root_pair() {
        let mut t = Tree::new(0);
        t.add_leaf(0, 0, Color::Blue, 1);
        t.add_leaf(0, 0, Color::Red, 1);
        let inst = ColoredTreeInstance::new(t.clone(), t);
        let a = solve(&inst).unwrap().unwrap();
        assert_eq!(a.value, 0);
        assert_eq!((a.v1, a.v2), (0, 0));
    }

    #[test]
    fn no_red_means_no_answer() {
        let mut t = Tree::new(0);
        t.add_leaf(0, 1, Color::Blue, 1);
        t.add_leaf(0, 1, Color::Blue, 2);
        let inst = ColoredTreeInstance::new(t.clone(), t);
        assert_eq!(solve(&inst).unwrap(), None);
        assert_eq!(brute_solve(&inst).unwrap(), None);
    }

    #[test]
    fn rejects_malformed() {
        let mut t = Tree::new(5);
        t.add_leaf(0, 4, Color::Blue, 1);
        let ok = Tree::new(0);
        assert!(solve(&ColoredTreeInstance::new(t, ok.clone())).is_err());

        let mut dup = Tree::new(0);
        dup.add_leaf(0, 0, Color::Red, 3);
        dup.add_leaf(0, 0, Color::Red, 3);
        assert!(brute_solve(&ColoredTreeInstance::new(ok, dup)).is_err());
    }

    #[test]
    fn random_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rng.gen_range(1..40);
            let inst = gen::colored_instance(&mut rng, m);
            let fast = solve(&inst).unwrap();
            let slow = brute_solve(&inst).unwrap();
            assert_eq!(fast.map(|a| a.value), slow.map(|a| a.value));
            if let Some(a) = fast {
                assert!(inst.check_answer(&a));
            }
        }
    }

    #[test]
    fn heaviest_common_ancestor_is_lca() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let inst = gen::colored_instance(&mut rng, 20);
            let t = &inst.first;
            for a in 0..t.len() as u32 {
                for b in 0..t.len() as u32 {
                    let lca = t.naive_lca(a, b);
                    let best = (0..t.len() as u32)
                        .filter(|&v| t.naive_lca(v, a) == v && t.naive_lca(v, b) == v)
                        .map(|v| t.weight(v))
                        .max()
                        .unwrap();
                    assert_eq!(t.weight(lca), best);
                }
            }
        }
    }

    #[test]
    fn predecessor_or_successor_suffices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let inst = gen::colored_instance(&mut rng, 30);
            let t = &inst.second;
            // Leaves in preorder: ids are not preorder, so sort by a DFS.
            let mut children = vec![Vec::new(); t.len()];
            for v in 1..t.len() as u32 {
                children[t.parent(v).unwrap() as usize].push(v);
            }
            let mut order = Vec::new();
            let mut stack = vec![0u32];
            while let Some(v) = stack.pop() {
                if t.leaf(v).is_some() {
                    order.push(v);
                }
                stack.extend(children[v as usize].iter().rev());
            }
            if order.len() < 2 {
                continue;
            }
            let x = rng.gen_range(0..order.len());
            let set: Vec<usize> = (0..order.len())
                .filter(|&i| i != x && rng.gen_bool(0.4))
                .collect();
            if set.is_empty() {
                continue;
            }
            let w = |i: usize| t.weight(t.naive_lca(order[x], order[i]));
            let best = set.iter().map(|&i| w(i)).max().unwrap();
            let pred = set.iter().filter(|&&i| i < x).max();
            let succ = set.iter().filter(|&&i| i > x).min();
            let near = pred.into_iter().chain(succ).map(|&i| w(i)).max().unwrap();
            assert_eq!(near, best);
        }
    }

    #[test]
    fn dissolving_keeps_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let inst = gen::colored_instance(&mut rng, 15);
            // Chain an extra unary node above every leaf.
            let stretch = |t: &Tree| {
                let mut out = Tree::new(t.weight(0));
                let mut map = vec![0u32; t.len()];
                for v in 1..t.len() as u32 {
                    let p = map[t.parent(v).unwrap() as usize];
                    map[v as usize] = match t.leaf(v) {
                        Some(l) => {
                            let mid = out.add_node(p, t.weight(v));
                            out.add_leaf(mid, t.weight(v), l.color, l.label)
                        }
                        None => out.add_node(p, t.weight(v)),
                    };
                }
                out
            };
            let long = ColoredTreeInstance::new(stretch(&inst.first), stretch(&inst.second));
            assert!(!long.first.is_branching() || long.first.len() == 1);
            let short = ColoredTreeInstance::new(
                long.first.dissolve_unary().0,
                long.second.dissolve_unary().0,
            );
            assert!(short.first.is_branching() && short.second.is_branching());
            let value = |i: &ColoredTreeInstance| solve(i).unwrap().map(|a| a.value);
            assert_eq!(value(&long), value(&inst));
            assert_eq!(value(&short), value(&inst));
        }
    }
}
