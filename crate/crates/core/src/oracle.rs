//! Brute-force references.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub length: usize,
    pub x_start: usize,
    pub y_start: usize,
}

pub fn hamming<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Exact `LCF_k(X, Y)` by a sliding window along every diagonal, O(|X| |Y|)
/// time and O(1) extra space. Among longest answers the smallest
/// `(x_start, y_start)` is reported.
pub fn lcf_k_brute(x: &[u8], y: &[u8], k: usize) -> OracleResult {
    let mut best = OracleResult {
        length: 0,
        x_start: 0,
        y_start: 0,
    };
    let (n, m) = (x.len() as isize, y.len() as isize);
    for diag in -(m - 1).max(0)..n {
        let (i0, j0) = if diag >= 0 {
            (diag as usize, 0)
        } else {
            (0, (-diag) as usize)
        };
        let len = (x.len() - i0).min(y.len() - j0);
        let mut lo = 0;
        let mut mism = 0;
        for hi in 0..len {
            if x[i0 + hi] != y[j0 + hi] {
                mism += 1;
            }
            while mism > k {
                if x[i0 + lo] != y[j0 + lo] {
                    mism -= 1;
                }
                lo += 1;
            }
            let cand = OracleResult {
                length: hi + 1 - lo,
                x_start: i0 + lo,
                y_start: j0 + lo,
            };
            if cand.length > best.length
                || (cand.length == best.length
                    && (cand.x_start, cand.y_start) < (best.x_start, best.y_start))
            {
                best = cand;
            }
        }
    }
    best
}

/// Extends from every start pair until the budget is exceeded; cubic.
pub fn lcf_k_naive(x: &[u8], y: &[u8], k: usize) -> usize {
    let mut best = 0;
    for i in 0..x.len() {
        for j in 0..y.len() {
            let mut mism = 0;
            let mut len = 0;
            while i + len < x.len() && j + len < y.len() {
                if x[i + len] != y[j + len] {
                    if mism == k {
                        break;
                    }
                    mism += 1;
                }
                len += 1;
            }
            best = best.max(len);
        }
    }
    best
}

/// `LCP_d(U, V)`: the longest prefix length with at most `d` mismatches.
pub fn lcp_d_brute<T: PartialEq>(u: &[T], v: &[T], d: usize) -> usize {
    let mut mism = 0;
    for (p, (a, b)) in u.iter().zip(v).enumerate() {
        if a != b {
            if mism == d {
                return p;
            }
            mism += 1;
        }
    }
    u.len().min(v.len())
}
