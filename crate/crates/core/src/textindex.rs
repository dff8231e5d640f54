//! Joint suffix index over `X`, `X^R`, `Y` and `Y^R`.
//!
//! The four texts are concatenated, each followed by its own separator.
//! Separators are out-of-band values ordered below every byte, so every
//! byte value except the wildcard is a legal input symbol. Longest common
//! extensions come from the suffix array, the LCP array and a sparse table.

use std::cmp::Ordering;
use std::fmt;

use crate::rmq::SparseTable;
use crate::{Error, WILDCARD};

/// One of the four indexed texts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TextId {
    X,
    XRev,
    Y,
    YRev,
}

impl TextId {
    pub const ALL: [TextId; 4] = [TextId::X, TextId::XRev, TextId::Y, TextId::YRev];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for TextId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TextId::X => "X",
            TextId::XRev => "X^R",
            TextId::Y => "Y",
            TextId::YRev => "Y^R",
        })
    }
}

/// A suffix of one of the indexed texts. `start == len` is the empty suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuffixRef {
    pub text: TextId,
    pub start: usize,
}

impl SuffixRef {
    pub fn new(text: TextId, start: usize) -> Self {
        SuffixRef { text, start }
    }

    /// The same text, `by` symbols further in.
    pub fn advance(self, by: usize) -> Self {
        SuffixRef {
            text: self.text,
            start: self.start + by,
        }
    }
}

impl fmt::Display for SuffixRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.text, self.start)
    }
}

/// Rejects inputs containing the wildcard symbol.
pub fn check_alphabet(name: &'static str, bytes: &[u8]) -> Result<(), Error> {
    match bytes.iter().position(|&b| b == WILDCARD) {
        Some(position) => Err(Error::ReservedSymbol {
            text: name,
            position,
            symbol: WILDCARD,
        }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone)]
pub struct TextIndex {
    texts: [Vec<u8>; 4],
    offsets: [usize; 4],
    rank: Vec<u32>,
    lcp: SparseTable<u32>,
}

impl TextIndex {
    pub fn build(x: &[u8], y: &[u8]) -> Result<Self, Error> {
        check_alphabet("X", x)?;
        check_alphabet("Y", y)?;
        let texts = [
            x.to_vec(),
            x.iter().rev().copied().collect(),
            y.to_vec(),
            y.iter().rev().copied().collect(),
        ];

        let total: usize = texts.iter().map(|t| t.len() + 1).sum();
        let mut joint = Vec::with_capacity(total);
        let mut offsets = [0; 4];
        for (slot, text) in texts.iter().enumerate() {
            offsets[slot] = joint.len();
            joint.extend(text.iter().map(|&b| b as u16 + 4));
            joint.push(slot as u16);
        }

        let sa = suffix_array(&joint);
        let mut rank = vec![0u32; joint.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = lcp_array(&joint, &sa, &rank);

        Ok(TextIndex {
            texts,
            offsets,
            rank,
            lcp: SparseTable::new(lcp),
        })
    }

    pub fn text(&self, id: TextId) -> &[u8] {
        &self.texts[id.slot()]
    }

    pub fn len(&self, id: TextId) -> usize {
        self.texts[id.slot()].len()
    }

    pub fn is_valid(&self, p: SuffixRef) -> bool {
        p.start <= self.len(p.text)
    }

    fn check(&self, p: SuffixRef) -> Result<(), Error> {
        if self.is_valid(p) {
            Ok(())
        } else {
            Err(Error::InvalidSuffix(p))
        }
    }

    /// Number of symbols left in the suffix.
    pub fn remaining(&self, p: SuffixRef) -> usize {
        self.len(p.text) - p.start
    }

    pub fn suffix(&self, p: SuffixRef) -> &[u8] {
        &self.text(p.text)[p.start..]
    }

    /// First symbol of a non-empty suffix.
    pub fn first_symbol(&self, p: SuffixRef) -> Option<u8> {
        self.text(p.text).get(p.start).copied()
    }

    fn global(&self, p: SuffixRef) -> usize {
        self.offsets[p.text.slot()] + p.start
    }

    pub fn lce(&self, p: SuffixRef, q: SuffixRef) -> Result<usize, Error> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.lce_unchecked(p, q))
    }

    pub fn compare_suffixes(&self, p: SuffixRef, q: SuffixRef) -> Result<Ordering, Error> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.compare_unchecked(p, q))
    }

    pub(crate) fn lce_unchecked(&self, p: SuffixRef, q: SuffixRef) -> usize {
        let (gp, gq) = (self.global(p), self.global(q));
        if gp == gq {
            return self.remaining(p);
        }
        let (rp, rq) = (self.rank[gp] as usize, self.rank[gq] as usize);
        let (lo, hi) = if rp < rq { (rp, rq) } else { (rq, rp) };
        self.lcp.query(lo + 1, hi + 1) as usize
    }

    pub(crate) fn compare_unchecked(&self, p: SuffixRef, q: SuffixRef) -> Ordering {
        self.rank[self.global(p)].cmp(&self.rank[self.global(q)])
    }
}

/// Suffix array of a text over `0..=u16::MAX`, by SA-IS.
fn suffix_array(s: &[u16]) -> Vec<u32> {
    if s.is_empty() {
        return Vec::new();
    }
    libsais::SuffixArrayConstruction::for_text(s)
        .in_owned_buffer32()
        .single_threaded()
        .run()
        .expect("joint text fits in 32-bit indices")
        .into_vec()
        .into_iter()
        .map(|p| p as u32)
        .collect()
}

/// Kasai's algorithm; `lcp[r]` is the LCP of the suffixes ranked `r - 1` and `r`.
fn lcp_array(s: &[u16], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
