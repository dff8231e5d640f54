//! Constant-time LCA for trees whose nodes are numbered in preorder.
//!
//! For preorder ids `u < v` the LCA is the smallest parent id among the
//! nodes `u+1..=v`: every such node lies strictly below the LCA and the
//! child of the LCA towards `v` is among them.

use crate::rmq::SparseTable;

#[derive(Debug, Clone)]
pub struct PreorderLca {
    parents: SparseTable<u32>,
}

impl PreorderLca {
    /// `parent[i]` is the parent of node `i`; node 0 is the root and every
    /// parent id is smaller than its child's.
    pub fn new(parent: &[u32]) -> Self {
        debug_assert!(parent.iter().enumerate().skip(1).all(|(i, &p)| (p as usize) < i));
        let mut values = parent.to_vec();
        if let Some(root) = values.first_mut() {
            *root = 0;
        }
        PreorderLca {
            parents: SparseTable::new(values),
        }
    }

    pub fn lca(&self, u: u32, v: u32) -> u32 {
        if u == v {
            return u;
        }
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        self.parents.query(lo as usize + 1, hi as usize + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(parent: &[u32], mut u: u32, mut v: u32) -> u32 {
        let depth = |mut x: u32| {
            let mut d = 0;
            while x != 0 {
                x = parent[x as usize];
                d += 1;
            }
            d
        };
        let (mut du, mut dv) = (depth(u), depth(v));
        while du > dv {
            u = parent[u as usize];
            du -= 1;
        }
        while dv > du {
            v = parent[v as usize];
            dv -= 1;
        }
        while u != v {
            u = parent[u as usize];
            v = parent[v as usize];
        }
        u
    }

    #[test]
    fn agrees_with_parent_walk() {
        // 0 -> {1 -> {2, 3 -> {4}}, 5 -> {6, 7}}
        let parent = [0, 0, 1, 1, 3, 0, 5, 5];
        let lca = PreorderLca::new(&parent);
        for u in 0..8 {
            for v in 0..8 {
                assert_eq!(lca.lca(u, v), naive(&parent, u, v), "{u} {v}");
            }
        }
    }
}
