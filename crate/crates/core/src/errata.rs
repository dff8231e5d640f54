//! k-complete families of modified strings, stored in one compacted trie.
//!
//! [`generate`] walks the family top-down. At every branching point the most
//! frequent next symbol `h` is the heavy branch; a string whose next symbol
//! differs from `h` and that still has budget also continues, one edit
//! poorer, down the `h` branch and down a wildcard branch. Every string that
//! runs out of symbols at a node is recorded there as a member of `N(F)`.
//!
//! Live strings are kept in suffix order, so a single LCE query between the
//! first and last of them yields the whole compacted edge below a node.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::lca::PreorderLca;
use crate::textindex::{SuffixRef, TextIndex};
use crate::Error;

/// A symbol of a modified string: an input byte or the wildcard `$`.
/// The wildcard orders after every byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Char(u8),
    Wildcard,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Char(b) => write!(f, "{}", b.escape_ascii()),
            Symbol::Wildcard => f.write_str("$"),
        }
    }
}

pub fn symbols(bytes: &[u8]) -> Vec<Symbol> {
    bytes.iter().map(|&b| Symbol::Char(b)).collect()
}

pub fn render_symbols(s: &[Symbol]) -> String {
    s.iter().map(|c| c.to_string()).collect()
}

pub type NodeId = u32;

const NO_LINK: u32 = u32::MAX;

/// Membership of a modified string `F'` (a terminal node) in `N(F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Member {
    /// Index of `F` in the trie's family.
    pub family: usize,
    pub node: NodeId,
    /// Hamming distance between `F` and `F'`.
    pub ham: u8,
    /// Number of wildcards in `F'`.
    pub dollars: u8,
    edits: u32,
}

impl Member {
    /// Adjusted cost `2 * ham - dollars`, i.e. twice `d_H(F, F') - #$(F') / 2`.
    pub fn adj2(&self) -> usize {
        2 * self.ham as usize - self.dollars as usize
    }
}

#[derive(Debug, Clone, Copy)]
struct EditLink {
    prev: u32,
    position: u32,
    symbol: Symbol,
}

#[derive(Debug, Clone)]
struct Node {
    parent: NodeId,
    depth: usize,
    /// First symbol of the incoming edge; `None` for the root.
    first: Option<Symbol>,
    /// The rest of the incoming edge label, read from the text.
    rest: SuffixRef,
    rest_len: usize,
    children: Vec<NodeId>,
    members: Vec<u32>,
}

/// Compacted trie of `⋃ N(F)`. Node ids are preorder numbers; the root is 0.
#[derive(Debug, Clone)]
pub struct ErrataTrie {
    id: u64,
    k: usize,
    family: Vec<SuffixRef>,
    lookup: HashMap<SuffixRef, usize>,
    nodes: Vec<Node>,
    members: Vec<Member>,
    by_family: Vec<Vec<u32>>,
    edits: Vec<EditLink>,
    lca: PreorderLca,
}

static NEXT_TRIE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy)]
struct Tuple {
    family: u32,
    budget: u8,
    edits: u32,
}

struct Task {
    parent: Option<NodeId>,
    first: Option<Symbol>,
    depth: usize,
    dollars: u8,
    tuples: Vec<Tuple>,
}

/// Largest supported mismatch budget.
pub const MAX_K: usize = 64;

/// Builds a k-complete family for `family` (duplicates are dropped, first
/// occurrence wins) as a compacted trie.
pub fn generate(family: &[SuffixRef], k: usize, index: &TextIndex) -> Result<ErrataTrie, Error> {
    if k > MAX_K {
        return Err(Error::BudgetTooLarge(k));
    }
    let mut lookup = HashMap::with_capacity(family.len());
    let mut members_in = Vec::with_capacity(family.len());
    for &f in family {
        if !index.is_valid(f) {
            return Err(Error::InvalidSuffix(f));
        }
        if !lookup.contains_key(&f) {
            lookup.insert(f, members_in.len());
            members_in.push(f);
        }
    }

    let mut builder = Builder {
        index,
        family: &members_in,
        nodes: Vec::new(),
        members: Vec::new(),
        by_family: vec![Vec::new(); members_in.len()],
        edits: Vec::new(),
    };

    let mut roots: Vec<Tuple> = (0..members_in.len() as u32)
        .map(|family| Tuple {
            family,
            budget: k as u8,
            edits: NO_LINK,
        })
        .collect();
    builder.sort_at(&mut roots, 0);

    let mut stack = vec![Task {
        parent: None,
        first: None,
        depth: 0,
        dollars: 0,
        tuples: roots,
    }];
    while let Some(task) = stack.pop() {
        builder.process(task, &mut stack, k);
    }

    let Builder {
        nodes,
        members,
        by_family,
        edits,
        ..
    } = builder;
    let parents: Vec<u32> = nodes.iter().map(|n| n.parent).collect();
    Ok(ErrataTrie {
        id: NEXT_TRIE_ID.fetch_add(1, AtomicOrdering::Relaxed),
        k,
        family: members_in,
        lookup,
        lca: PreorderLca::new(&parents),
        nodes,
        members,
        by_family,
        edits,
    })
}

struct Builder<'a> {
    index: &'a TextIndex,
    family: &'a [SuffixRef],
    nodes: Vec<Node>,
    members: Vec<Member>,
    by_family: Vec<Vec<u32>>,
    edits: Vec<EditLink>,
}

impl Builder<'_> {
    fn suffix(&self, t: &Tuple, depth: usize) -> SuffixRef {
        self.family[t.family as usize].advance(depth)
    }

    fn sort_at(&self, tuples: &mut [Tuple], depth: usize) {
        tuples.sort_by(|a, b| {
            self.index
                .compare_unchecked(self.suffix(a, depth), self.suffix(b, depth))
        });
    }

    fn edit(&mut self, prev: u32, position: usize, symbol: Symbol) -> u32 {
        self.edits.push(EditLink {
            prev,
            position: position as u32,
            symbol,
        });
        (self.edits.len() - 1) as u32
    }

    fn process(&mut self, task: Task, stack: &mut Vec<Task>, k: usize) {
        let Task {
            parent,
            first,
            depth,
            dollars,
            tuples,
        } = task;
        let index = self.index;

        let ext = match (parent, tuples.first(), tuples.last()) {
            (Some(_), Some(lo), Some(hi)) => {
                let lo = self.suffix(lo, depth);
                if index.remaining(lo) == 0 {
                    0
                } else {
                    index.lce_unchecked(lo, self.suffix(hi, depth))
                }
            }
            _ => 0,
        };
        let node_depth = depth + ext;
        let id = self.nodes.len() as NodeId;
        let rest = tuples
            .first()
            .map(|t| self.suffix(t, depth))
            .unwrap_or(self.family.first().copied().unwrap_or(SuffixRef::new(
                crate::textindex::TextId::X,
                0,
            )));
        self.nodes.push(Node {
            parent: parent.unwrap_or(0),
            depth: node_depth,
            first,
            rest,
            rest_len: ext,
            children: Vec::new(),
            members: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p as usize].children.push(id);
        }

        // Exhausted strings sort first.
        let mut split = 0;
        while split < tuples.len() && index.remaining(self.suffix(&tuples[split], node_depth)) == 0
        {
            let t = tuples[split];
            let member = self.members.len() as u32;
            self.members.push(Member {
                family: t.family as usize,
                node: id,
                ham: (k - t.budget as usize) as u8,
                dollars,
                edits: t.edits,
            });
            self.nodes[id as usize].members.push(member);
            self.by_family[t.family as usize].push(member);
            split += 1;
        }
        let live = &tuples[split..];
        if live.is_empty() {
            return;
        }

        let mut groups: Vec<(u8, usize, usize)> = Vec::new();
        for (i, t) in live.iter().enumerate() {
            let c = index
                .first_symbol(self.suffix(t, node_depth))
                .expect("live suffix is non-empty");
            match groups.last_mut() {
                Some((sym, _, end)) if *sym == c => *end = i + 1,
                _ => groups.push((c, i, i + 1)),
            }
        }
        let mut heavy = 0;
        for (g, &(_, lo, hi)) in groups.iter().enumerate() {
            if hi - lo > groups[heavy].2 - groups[heavy].1 {
                heavy = g;
            }
        }
        let h = groups[heavy].0;
        let child_depth = node_depth + 1;

        let (hlo, hhi) = (groups[heavy].1, groups[heavy].2);
        let mut heavy_tuples: Vec<Tuple> = live[hlo..hhi].to_vec();
        let mut wild: Vec<Tuple> = Vec::new();
        for (g, &(_, lo, hi)) in groups.iter().enumerate() {
            if g == heavy {
                continue;
            }
            for t in &live[lo..hi] {
                if t.budget == 0 {
                    continue;
                }
                let to_heavy = self.edit(t.edits, node_depth, Symbol::Char(h));
                let to_wild = self.edit(t.edits, node_depth, Symbol::Wildcard);
                heavy_tuples.push(Tuple {
                    family: t.family,
                    budget: t.budget - 1,
                    edits: to_heavy,
                });
                wild.push(Tuple {
                    family: t.family,
                    budget: t.budget - 1,
                    edits: to_wild,
                });
            }
        }
        if heavy_tuples.len() > hhi - hlo {
            self.sort_at(&mut heavy_tuples, child_depth);
        }
        self.sort_at(&mut wild, child_depth);

        // Popped in order: ascending bytes, then the wildcard.
        if !wild.is_empty() {
            stack.push(Task {
                parent: Some(id),
                first: Some(Symbol::Wildcard),
                depth: child_depth,
                dollars: dollars + 1,
                tuples: wild,
            });
        }
        for (g, &(c, lo, hi)) in groups.iter().enumerate().rev() {
            let tuples = if g == heavy {
                std::mem::take(&mut heavy_tuples)
            } else {
                live[lo..hi].to_vec()
            };
            stack.push(Task {
                parent: Some(id),
                first: Some(Symbol::Char(c)),
                depth: child_depth,
                dollars,
                tuples,
            });
        }
    }
}

impl ErrataTrie {
    /// Process-unique identifier, used to reject handles from other tries.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn family(&self) -> &[SuffixRef] {
        &self.family
    }

    pub fn family_index(&self, f: SuffixRef) -> Option<usize> {
        self.lookup.get(&f).copied()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of distinct modified strings.
    pub fn terminal_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.members.is_empty()).count()
    }

    /// Total number of `(F, F')` memberships.
    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    /// String depth of a node.
    pub fn weight(&self, node: NodeId) -> usize {
        self.nodes[node as usize].depth
    }

    /// Parent of a node; the root is its own parent.
    pub fn parent(&self, node: NodeId) -> NodeId {
        self.nodes[node as usize].parent
    }

    pub fn children(&self, node: NodeId) -> &[NodeId] {
        &self.nodes[node as usize].children
    }

    /// First symbol of the edge entering `node`.
    pub fn edge_first(&self, node: NodeId) -> Option<Symbol> {
        self.nodes[node as usize].first
    }

    /// Memberships recorded at `node`.
    pub fn members_at(&self, node: NodeId) -> impl Iterator<Item = &Member> + '_ {
        self.nodes[node as usize]
            .members
            .iter()
            .map(|&m| &self.members[m as usize])
    }

    /// All of `N(F)` for the family member with the given index.
    pub fn members_of(&self, family: usize) -> impl Iterator<Item = &Member> + '_ {
        self.by_family[family]
            .iter()
            .map(|&m| &self.members[m as usize])
    }

    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        self.lca.lca(a, b)
    }

    /// LCP of the modified strings ending at two terminals.
    pub fn lcp_terminals(&self, a: NodeId, b: NodeId) -> usize {
        self.weight(self.lca(a, b))
    }

    fn require(&self, f: SuffixRef) -> Result<usize, Error> {
        self.family_index(f).ok_or(Error::NotInFamily(f))
    }

    /// `N_{d,d'}(F)` with the half-integer `d'` passed doubled as `adj2`.
    pub fn n_subset(&self, f: SuffixRef, d: usize, adj2: usize) -> Result<Vec<Member>, Error> {
        let fam = self.require(f)?;
        Ok(self
            .members_of(fam)
            .filter(|m| m.ham as usize <= d && m.adj2() <= adj2)
            .copied()
            .collect())
    }

    /// `max LCP(F1', F2')` over `F_i' ∈ N_{d,d_i}(F_i)` with `d_1 + d_2 = d`.
    /// Quadratic in the set sizes; meant for verification.
    pub fn lcp_d(&self, f1: SuffixRef, f2: SuffixRef, d: usize) -> Result<usize, Error> {
        let a = self.n_subset(f1, d, 2 * d)?;
        let b = self.n_subset(f2, d, 2 * d)?;
        let mut best = 0;
        for x in &a {
            for y in &b {
                if x.adj2() + y.adj2() <= 2 * d {
                    best = best.max(self.lcp_terminals(x.node, y.node));
                }
            }
        }
        Ok(best)
    }

    /// Edits turning `F` into `F'`, by increasing position.
    pub fn edits(&self, member: &Member) -> Vec<(usize, Symbol)> {
        let mut out = Vec::new();
        let mut link = member.edits;
        while link != NO_LINK {
            let e = self.edits[link as usize];
            out.push((e.position as usize, e.symbol));
            link = e.prev;
        }
        out.reverse();
        out
    }

    /// The modified string `F'` itself.
    pub fn materialize(&self, member: &Member, index: &TextIndex) -> Vec<Symbol> {
        let mut s = symbols(index.suffix(self.family[member.family]));
        for (pos, sym) in self.edits(member) {
            s[pos] = sym;
        }
        s
    }

    /// Deterministic text dump: one line per node in preorder, indented by
    /// tree level, with the edge label, string depth and memberships.
    pub fn render(&self, index: &TextIndex) -> String {
        let mut out = String::new();
        let mut level = vec![0usize; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if id > 0 {
                level[id] = level[node.parent as usize] + 1;
            }
            let mut label = String::new();
            if let Some(first) = node.first {
                label.push_str(&first.to_string());
                let text = index.text(node.rest.text);
                for &b in &text[node.rest.start..node.rest.start + node.rest_len] {
                    label.push_str(&b.escape_ascii().to_string());
                }
            } else {
                label.push('ε');
            }
            let _ = write!(
                out,
                "{:indent$}{} [{}]",
                "",
                label,
                node.depth,
                indent = 2 * level[id]
            );
            for m in node.members.iter().map(|&m| &self.members[m as usize]) {
                let _ = write!(
                    out,
                    " {}:{}/{}",
                    self.family[m.family], m.ham, m.dollars
                );
            }
            out.push('\n');
        }
        out
    }
}

/// `ceil(log2(m))`, with `ceil(log2(1)) = 0`.
pub fn ceil_log2(m: usize) -> u32 {
    if m <= 1 {
        0
    } else {
        usize::BITS - (m - 1).leading_zeros()
    }
}

pub fn binomial(n: u64, r: u64) -> u128 {
    let r = r.min(n.saturating_sub(r));
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Upper bound on `|N_d(F)|` for a family of `m` strings:
/// `2^d * binom(ceil(log2 m) + d, d)`.
pub fn size_bound(m: usize, d: usize) -> u128 {
    (1u128 << d) * binomial(ceil_log2(m) as u64 + d as u64, d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textindex::TextId;

    fn suffixes(text: &str) -> (TextIndex, Vec<SuffixRef>) {
        let idx = TextIndex::build(text.as_bytes(), b"").unwrap();
        let fam = (0..text.len())
            .map(|i| SuffixRef::new(TextId::X, i))
            .collect();
        (idx, fam)
    }

    fn strings_of(trie: &ErrataTrie, idx: &TextIndex, f: SuffixRef) -> Vec<String> {
        let fam = trie.family_index(f).unwrap();
        let mut v: Vec<String> = trie
            .members_of(fam)
            .map(|m| render_symbols(&trie.materialize(m, idx)))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn zero_budget_is_plain_trie() {
        let (idx, fam) = suffixes("abacb");
        let trie = generate(&fam, 0, &idx).unwrap();
        for (i, &f) in fam.iter().enumerate() {
            let got: Vec<&Member> = trie.members_of(i).collect();
            assert_eq!(got.len(), 1);
            assert_eq!(got[0].ham, 0);
            assert_eq!(trie.weight(got[0].node), idx.remaining(f));
        }
        // root, "a" branch, "abacb", "acb", "b" (terminal + branch), "bacb", "cb"
        assert_eq!(trie.node_count(), 7);
        assert_eq!(trie.terminal_count(), 5);
    }

    #[test]
    fn table_family_is_contained() {
        let (idx, fam) = suffixes("abacb");
        let trie = generate(&fam, 1, &idx).unwrap();
        let expect: [(usize, &[&str]); 5] = [
            (4, &["a", "b", "$"]),
            (3, &["ab", "cb", "$b"]),
            (2, &["abb", "acb"]),
            (1, &["aacb", "bacb", "$acb"]),
            (0, &["abacb"]),
        ];
        for (start, wanted) in expect {
            let got = strings_of(&trie, &idx, fam[start]);
            for w in wanted {
                assert!(got.contains(&w.to_string()), "{w} missing from {got:?}");
            }
        }
    }

    #[test]
    fn subset_budgets() {
        let (idx, fam) = suffixes("abacb");
        let trie = generate(&fam, 1, &idx).unwrap();
        let cb = fam[3];
        let names = |ms: Vec<Member>| {
            let mut v: Vec<String> = ms
                .iter()
                .map(|m| render_symbols(&trie.materialize(m, &idx)))
                .collect();
            v.sort();
            v
        };
        assert_eq!(names(trie.n_subset(cb, 0, 0).unwrap()), vec!["cb"]);
        let half = names(trie.n_subset(cb, 1, 1).unwrap());
        assert!(half.contains(&"$b".to_string()));
        assert!(!half.contains(&"ab".to_string()));
        let full = names(trie.n_subset(cb, 1, 2).unwrap());
        assert!(full.contains(&"ab".to_string()));
        assert!(trie
            .n_subset(SuffixRef::new(TextId::Y, 0), 0, 0)
            .is_err());
    }

    #[test]
    fn lcp_examples_from_table() {
        let (idx, fam) = suffixes("abacb");
        let trie = generate(&fam, 1, &idx).unwrap();
        let acb = fam[2];
        let cb = fam[3];
        assert_eq!(trie.lcp_d(acb, cb, 1).unwrap(), 1);
        for &f in &fam {
            assert_eq!(trie.lcp_d(f, f, 0).unwrap(), idx.remaining(f));
        }
        // LCP(abb, ab) = 2 inside the trie even though LCP_1(acb, cb) = 1.
        let find = |f: SuffixRef, s: &str| {
            trie.members_of(trie.family_index(f).unwrap())
                .find(|m| render_symbols(&trie.materialize(m, &idx)) == s)
                .copied()
                .unwrap()
        };
        let abb = find(acb, "abb");
        let ab = find(cb, "ab");
        assert_eq!(trie.lcp_terminals(abb.node, ab.node), 2);
        assert_eq!(trie.lcp_terminals(abb.node, abb.node), 3);
    }

    #[test]
    fn stored_counts_match_materialized() {
        let (idx, fam) = suffixes("abracadabra");
        let trie = generate(&fam, 2, &idx).unwrap();
        for (i, &f) in fam.iter().enumerate() {
            let orig = symbols(idx.suffix(f));
            for m in trie.members_of(i) {
                let s = trie.materialize(m, &idx);
                let ham = s.iter().zip(&orig).filter(|(a, b)| a != b).count();
                let dollars = s.iter().filter(|&&c| c == Symbol::Wildcard).count();
                assert_eq!(ham, m.ham as usize);
                assert_eq!(dollars, m.dollars as usize);
                assert_eq!(trie.edits(m).len(), ham);
                assert_eq!(trie.weight(m.node), s.len());
            }
        }
    }

    #[test]
    fn render_is_stable() {
        let (idx, fam) = suffixes("abacb");
        let trie = generate(&fam, 0, &idx).unwrap();
        let dump = trie.render(&idx);
        assert_eq!(dump, generate(&fam, 0, &idx).unwrap().render(&idx));
        assert_eq!(
            dump,
            "ε [0]\n  a [1]\n    bacb [5] X@0:0/0\n    cb [3] X@2:0/0\n  b [1] X@4:0/0\n    acb [4] X@1:0/0\n  cb [2] X@3:0/0\n"
        );
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(256), 8);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(size_bound(5, 1), 2 * 4);
        assert_eq!(size_bound(256, 3), 8 * 165);
    }

    #[test]
    fn empty_and_invalid_families() {
        let idx = TextIndex::build(b"ab", b"").unwrap();
        let trie = generate(&[], 2, &idx).unwrap();
        assert_eq!(trie.node_count(), 1);
        assert!(generate(&[SuffixRef::new(TextId::X, 3)], 1, &idx).is_err());
        let empty = SuffixRef::new(TextId::X, 2);
        let trie = generate(&[empty, empty], 1, &idx).unwrap();
        assert_eq!(trie.family().len(), 1);
        let m: Vec<&Member> = trie.members_of(0).collect();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].node, 0);
    }
}
