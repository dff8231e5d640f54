//! Sparse-table range minimum.

/// Static range-minimum structure answering `min(values[l..r])` in O(1)
/// after O(n log n) preprocessing.
#[derive(Debug, Clone)]
pub struct SparseTable<T> {
    levels: Vec<Vec<T>>,
}

impl<T: Copy + Ord> SparseTable<T> {
    pub fn new(values: Vec<T>) -> Self {
        let n = values.len();
        let mut levels = vec![values];
        let mut width = 1;
        while 2 * width <= n {
            let prev = levels.last().unwrap();
            let next: Vec<T> = (0..=n - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels }
    }

    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    #[allow(dead_code)]
    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    /// Minimum over the half-open range `lo..hi`. Panics on an empty range.
    pub fn query(&self, lo: usize, hi: usize) -> T {
        assert!(lo < hi && hi <= self.len(), "bad range {lo}..{hi}");
        let level = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi - (1 << level)])
    }
}
