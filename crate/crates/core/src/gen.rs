//! Seeded input generators shared by tests, the self-test and `bench`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coloredtrees::{Color, ColoredTreeInstance, Tree};

/// Uniform string over the first `sigma` lowercase letters.
pub fn random_string<R: Rng>(rng: &mut R, len: usize, sigma: u8) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// Two random strings of length `n` sharing a factor of length `planted`
/// with `mismatches` substitutions.
pub fn planted_pair<R: Rng>(
    rng: &mut R,
    n: usize,
    sigma: u8,
    planted: usize,
    mismatches: usize,
) -> (Vec<u8>, Vec<u8>) {
    let mut x = random_string(rng, n, sigma);
    let mut y = random_string(rng, n, sigma);
    let planted = planted.min(n);
    let xs = rng.gen_range(0..=n - planted);
    let ys = rng.gen_range(0..=n - planted);
    let core = random_string(rng, planted, sigma);
    x[xs..xs + planted].copy_from_slice(&core);
    y[ys..ys + planted].copy_from_slice(&core);
    if sigma > 1 && planted > 0 {
        for _ in 0..mismatches {
            let at = ys + rng.gen_range(0..planted);
            let old = y[at];
            while y[at] == old {
                y[at] = b'a' + rng.gen_range(0..sigma);
            }
        }
    }
    (x, y)
}

fn grow<R: Rng>(rng: &mut R, tree: &mut Tree, parent: u32, leaves: &[(Color, u32)]) {
    let base = tree.weight(parent);
    if leaves.len() == 1 {
        let (color, label) = leaves[0];
        tree.add_leaf(parent, base + rng.gen_range(0..3), color, label);
        return;
    }
    let parts = rng.gen_range(2..=leaves.len().min(4));
    let mut cuts: Vec<usize> = (1..leaves.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..parts - 1].to_vec();
    cuts.sort_unstable();
    let mut lo = 0;
    for hi in cuts.into_iter().chain([leaves.len()]) {
        let part = &leaves[lo..hi];
        if part.len() == 1 {
            grow(rng, tree, parent, part);
        } else {
            let node = tree.add_node(parent, base + rng.gen_range(0..3));
            grow(rng, tree, node, part);
        }
        lo = hi;
    }
}

fn random_tree<R: Rng>(rng: &mut R, m: usize) -> Tree {
    let mut leaves = Vec::new();
    for label in 1..=m as u32 {
        for color in [Color::Blue, Color::Red] {
            if rng.gen_bool(0.8) {
                leaves.push((color, label));
            }
        }
    }
    leaves.shuffle(rng);
    let mut tree = Tree::new(rng.gen_range(0..3));
    if !leaves.is_empty() {
        grow(rng, &mut tree, 0, &leaves);
    }
    tree
}

/// Random valid instance with labels in `1..=m`; each tree keeps each
/// colored label with probability 0.8.
pub fn colored_instance<R: Rng>(rng: &mut R, m: usize) -> ColoredTreeInstance {
    ColoredTreeInstance::new(random_tree(rng, m), random_tree(rng, m))
}

/// The two-tree example whose optimum pairs blue 4 with red 2 for a total
/// weight of 3 when weights equal depths.
pub fn figure_two() -> ColoredTreeInstance {
    use Color::{Blue, Red};
    let build = |shape: [[(Color, u32); 2]; 4]| {
        let mut t = Tree::new(0);
        for half in 0..2 {
            let mid = t.add_node(0, 1);
            for leaves in &shape[2 * half..2 * half + 2] {
                let low = t.add_node(mid, 2);
                for &(color, label) in leaves {
                    t.add_leaf(low, 3, color, label);
                }
            }
        }
        t
    };
    let first = build([
        [(Blue, 1), (Blue, 2)],
        [(Red, 1), (Blue, 3)],
        [(Red, 2), (Red, 3)],
        [(Blue, 4), (Red, 4)],
    ]);
    let second = build([
        [(Blue, 1), (Blue, 3)],
        [(Blue, 4), (Red, 2)],
        [(Red, 1), (Red, 3)],
        [(Red, 4), (Blue, 2)],
    ]);
    ColoredTreeInstance::new(first, second)
}
