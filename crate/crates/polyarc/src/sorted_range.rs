//! Retained mergesort levels with sorted extraction from any subarray.
//!
//! A range decomposes into at most two sorted runs per size class. The
//! runs are chained into a winner tree, shortest first, so large runs sit
//! near the root and most pops touch only a few nodes.

use std::cmp::Ordering;

/// Append-only mergesort tree. Runs hold indices into the value log, so
/// appends never move earlier elements.
#[derive(Debug, Clone)]
pub struct MergeTree<T> {
    values: Vec<T>,
    /// Identity runs for level 0.
    singles: Vec<u32>,
    /// levels[q − 1][k]: sorted indices of block k at level q ≥ 1.
    levels: Vec<Vec<Vec<u32>>>,
}

impl<T: Ord> Default for MergeTree<T> {
    fn default() -> Self {
        MergeTree::new()
    }
}

impl<T: Ord> MergeTree<T> {
    pub fn new() -> Self {
        MergeTree { values: Vec::new(), singles: Vec::new(), levels: Vec::new() }
    }

    pub fn from_values(values: impl IntoIterator<Item = T>) -> Self {
        let mut t = MergeTree::new();
        for v in values {
            t.append(v);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, index: usize) -> &T {
        &self.values[index]
    }

    fn key_cmp(&self, a: u32, b: u32) -> Ordering {
        self.values[a as usize].cmp(&self.values[b as usize]).then(a.cmp(&b))
    }

    /// Adds one element, merging every dyadic block it completes.
    pub fn append(&mut self, value: T) {
        let idx = self.values.len() as u32;
        self.values.push(value);
        self.singles.push(idx);
        let n = self.values.len();
        let mut q = 0usize;
        while n.is_multiple_of(1 << (q + 1)) {
            let k = n / (1 << (q + 1)) - 1;
            let merged = {
                let left = self.run(q, 2 * k);
                let right = self.run(q, 2 * k + 1);
                let mut out = Vec::with_capacity(left.len() + right.len());
                let (mut i, mut j) = (0, 0);
                while i < left.len() && j < right.len() {
                    if self.key_cmp(left[i], right[j]) != Ordering::Greater {
                        out.push(left[i]);
                        i += 1;
                    } else {
                        out.push(right[j]);
                        j += 1;
                    }
                }
                out.extend_from_slice(&left[i..]);
                out.extend_from_slice(&right[j..]);
                out
            };
            if self.levels.len() <= q {
                self.levels.push(Vec::new());
            }
            self.levels[q].push(merged);
            q += 1;
        }
    }

    /// Sorted run of block `k` at level `q`.
    pub fn run(&self, q: usize, k: usize) -> &[u32] {
        if q == 0 {
            &self.singles[k..k + 1]
        } else {
            &self.levels[q - 1][k]
        }
    }

    /// Complete blocks per level, bottom up.
    pub fn level_sizes(&self) -> Vec<usize> {
        std::iter::once(self.values.len()).chain(self.levels.iter().map(Vec::len)).collect()
    }

    /// Dyadic cover of [i, j] as (level, block), left to right.
    pub fn cover(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        assert!(i <= j && j < self.values.len(), "invalid range");
        let mut out = Vec::new();
        let mut at = i;
        while at <= j {
            let mut q = 0;
            while at.is_multiple_of(1 << (q + 1)) && at + (1 << (q + 1)) - 1 <= j {
                q += 1;
            }
            out.push((q, at >> q));
            at += 1 << q;
        }
        out
    }

    /// Heap over [i, j] popping in ascending (value, index) order.
    pub fn open_range(&self, i: usize, j: usize) -> RangeHeap<'_, T> {
        let mut runs: Vec<(&[u32], usize)> =
            self.cover(i, j).into_iter().map(|(q, k)| (self.run(q, k), 0usize)).collect();
        runs.sort_by_key(|r| r.0.len());
        RangeHeap::new(self, runs)
    }
}

/// Winner tree over run cursors. Internal node `k` plays the winner of
/// node `k − 1` (or run 0) against run `k + 1`; the last node is the root.
#[derive(Debug)]
pub struct RangeHeap<'a, T> {
    tree: &'a MergeTree<T>,
    runs: Vec<(&'a [u32], usize)>,
    winners: Vec<Option<usize>>,
    comparisons: usize,
}

impl<'a, T: Ord> RangeHeap<'a, T> {
    fn new(tree: &'a MergeTree<T>, runs: Vec<(&'a [u32], usize)>) -> Self {
        let internal = runs.len().saturating_sub(1);
        let mut heap = RangeHeap { tree, runs, winners: vec![None; internal], comparisons: 0 };
        for k in 0..internal {
            heap.replay(k);
        }
        heap
    }

    fn head(&self, run: usize) -> Option<u32> {
        let (r, pos) = self.runs[run];
        r.get(pos).copied()
    }

    fn left_winner(&self, k: usize) -> Option<usize> {
        if k == 0 {
            self.head(0).map(|_| 0)
        } else {
            self.winners[k - 1]
        }
    }

    fn replay(&mut self, k: usize) {
        let left = self.left_winner(k);
        let right = self.head(k + 1).map(|_| k + 1);
        self.winners[k] = match (left, right) {
            (Some(a), Some(b)) => {
                self.comparisons += 1;
                let (x, y) = (self.head(a).unwrap(), self.head(b).unwrap());
                if self.tree.key_cmp(x, y) != Ordering::Greater {
                    Some(a)
                } else {
                    Some(b)
                }
            }
            (a, b) => a.or(b),
        };
    }

    fn root(&self) -> Option<usize> {
        match self.winners.last() {
            Some(w) => *w,
            None if !self.runs.is_empty() => self.head(0).map(|_| 0),
            None => None,
        }
    }

    /// Smallest remaining element as (index, value).
    pub fn pop_min(&mut self) -> Option<(usize, &'a T)> {
        let run = self.root()?;
        let idx = self.head(run).expect("winner has a head");
        self.runs[run].1 += 1;
        for k in run.saturating_sub(1)..self.winners.len() {
            self.replay(k);
        }
        Some((idx as usize, &self.tree.values[idx as usize]))
    }

    /// Smallest remaining element without removing it.
    pub fn peek(&self) -> Option<(usize, &'a T)> {
        let run = self.root()?;
        let idx = self.head(run)? as usize;
        Some((idx, &self.tree.values[idx]))
    }

    /// Key comparisons performed so far, including construction.
    pub fn comparisons(&self) -> usize {
        self.comparisons
    }
}

impl<'a, T: Ord> Iterator for RangeHeap<'a, T> {
    type Item = (usize, &'a T);

    fn next(&mut self) -> Option<Self::Item> {
        self.pop_min()
    }
}
