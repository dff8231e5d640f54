//! Difference covers: sets `S(d)` of positive integers such that for any
//! `i, j` some shift `0 <= h < d` lands both `i + h` and `j + h` in the set.
//!
//! Membership is periodic: `p` belongs to the cover iff `p mod d` is one of
//! the cover's residues. The default construction uses `t = ceil(sqrt(d))`
//! and the residues `{0} ∪ {t, 2t, ..} ∪ {d-1, .., d-t+1}`, which has at
//! most `2t` elements and realises every difference modulo `d`.

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceCover {
    period: usize,
    member: Vec<bool>,
    residues: Vec<usize>,
    // For every difference `delta`, the sorted residues `a` with
    // `a + delta (mod d)` also in the cover, stored back to back.
    pair_offsets: Vec<usize>,
    pair_starts: Vec<u32>,
}

impl DifferenceCover {
    /// The default cover with period `d`.
    pub fn new(d: usize) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::InvalidCover("period must be positive".into()));
        }
        let t = ceil_sqrt(d);
        let mut residues = vec![0];
        residues.extend((1..).map(|q| q * t).take_while(|&r| r < d));
        residues.extend((1..t).map(|r| (d - r) % d));
        Self::from_residues(d, &residues)
    }

    /// A cover with an explicit residue set; fails unless every difference
    /// modulo `d` is realised by two residues.
    pub fn from_residues(d: usize, residues: &[usize]) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::InvalidCover("period must be positive".into()));
        }
        let mut member = vec![false; d];
        for &r in residues {
            if r >= d {
                return Err(Error::InvalidCover(format!(
                    "residue {r} out of range for period {d}"
                )));
            }
            member[r] = true;
        }
        let residues: Vec<usize> = (0..d).filter(|&r| member[r]).collect();

        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); d];
        for &a in &residues {
            for &b in &residues {
                buckets[(b + d - a) % d].push(a as u32);
            }
        }
        if let Some(delta) = buckets.iter().position(Vec::is_empty) {
            return Err(Error::InvalidCover(format!(
                "difference {delta} is not realised modulo {d}"
            )));
        }
        let mut pair_offsets = Vec::with_capacity(d + 1);
        let mut pair_starts = Vec::with_capacity(residues.len() * residues.len());
        pair_offsets.push(0);
        for mut bucket in buckets {
            bucket.sort_unstable();
            pair_starts.extend(bucket);
            pair_offsets.push(pair_starts.len());
        }

        Ok(DifferenceCover {
            period: d,
            member,
            residues,
            pair_offsets,
            pair_starts,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn contains(&self, p: usize) -> bool {
        p > 0 && self.member[p % self.period]
    }

    /// Smallest `h` in `0..d` with `i + h` and `j + h` both in the cover.
    /// Runs in O(log d).
    pub fn shift(&self, i: usize, j: usize) -> usize {
        let d = self.period;
        let x = i % d;
        let delta = (j % d + d - x) % d;
        let starts = &self.pair_starts[self.pair_offsets[delta]..self.pair_offsets[delta + 1]];
        let at = starts.partition_point(|&a| (a as usize) < x);
        match starts.get(at) {
            Some(&a) => a as usize - x,
            None => starts[0] as usize + d - x,
        }
    }

    /// `S(d) ∩ [1..n]` in increasing order.
    pub fn enumerate(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut base = 0;
        while base <= n {
            for &r in &self.residues {
                let p = base + r;
                if p > n {
                    break;
                }
                if p > 0 {
                    out.push(p);
                }
            }
            base += self.period;
        }
        out
    }
}

fn ceil_sqrt(d: usize) -> usize {
    let mut t = (d as f64).sqrt() as usize;
    while t * t > d {
        t -= 1;
    }
    while t * t < d {
        t += 1;
    }
    t
}
