use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Vertex weights `w_0, ..., w_d` of a path graph with `d` edges.
///
/// Only `w_0` may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSequence(Vec<i64>);

impl WeightSequence {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return domain("a weight sequence needs at least w_0");
        }
        if let Some(pos) = weights.iter().skip(1).position(|&w| w < 0) {
            return domain(format!("only w_0 may be negative (w_{} < 0)", pos + 1));
        }
        Ok(WeightSequence(weights))
    }

    /// `(w_0, 1, ..., 1)` with `d` ones.
    pub fn hook(w0: i64, d: usize) -> Self {
        let mut w = vec![1; d + 1];
        w[0] = w0;
        WeightSequence(w)
    }

    pub fn all_ones(d: usize) -> Self {
        WeightSequence(vec![1; d + 1])
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parsed: std::result::Result<Vec<i64>, _> =
            text.split(',').map(|s| s.trim().parse::<i64>()).collect();
        match parsed {
            Ok(w) => WeightSequence::new(w),
            Err(e) => domain(format!("bad weight list {text:?}: {e}")),
        }
    }

    /// Number of edges `d`.
    pub fn len_edges(&self) -> usize {
        self.0.len() - 1
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn w0(&self) -> i64 {
        self.0[0]
    }

    /// `w_1 + ... + w_d`.
    pub fn tail_sum(&self) -> i64 {
        self.0[1..].iter().sum()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn with_w0(&self, w0: i64) -> Self {
        let mut w = self.0.clone();
        w[0] = w0;
        WeightSequence(w)
    }

    /// `(w_0..=w_i)` and `(w_{i+1}..=w_d)`.
    pub fn split(&self, i: usize) -> (Self, Self) {
        (
            WeightSequence(self.0[..=i].to_vec()),
            WeightSequence(self.0[i + 1..].to_vec()),
        )
    }

    /// Merge vertices `i` and `i + 1`.
    pub fn merge(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        let right = w.remove(i + 1);
        w[i] += right;
        WeightSequence(w)
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Bitmask of edges: bit `j - 1` set means edge `j` is in the subset.
pub type EdgeSet = u64;

/// The interval broken up by removing edge `j` from `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalSplit {
    /// Weight of the whole interval.
    pub total: i64,
    /// Weight of the piece containing the smaller vertices.
    pub left: i64,
    /// Weight of the piece away from vertex 0; the lower binomial index.
    pub right: i64,
    /// Number of edges `i < j` not in `J`.
    pub sign_exponent: u32,
}

pub fn interval_data(w: &WeightSequence, set: EdgeSet, j: usize) -> Result<IntervalSplit> {
    let d = w.len_edges();
    if j == 0 || j > d {
        return domain(format!("edge {j} outside 1..={d}"));
    }
    if set >> d != 0 {
        return domain(format!("edge set {set:#b} has edges beyond {d}"));
    }
    if set & (1 << (j - 1)) == 0 {
        return domain(format!("edge {j} not in the edge set"));
    }
    let has = |e: usize| set & (1 << (e - 1)) != 0;
    // edge e joins vertices e-1 and e
    let mut start = j - 1;
    while start > 0 && has(start) {
        start -= 1;
    }
    let mut end = j;
    while end < d && has(end + 1) {
        end += 1;
    }
    let ws = w.weights();
    let left: i64 = ws[start..j].iter().sum();
    let right: i64 = ws[j..=end].iter().sum();
    let below = (set & ((1u64 << (j - 1)) - 1)).count_ones();
    Ok(IntervalSplit {
        total: left + right,
        left,
        right,
        sign_exponent: (j as u32 - 1) - below,
    })
}

/// Ranks `k`-subsets of `{0..d}` in increasing bitmask order (colex).
#[derive(Debug, Clone)]
pub struct SubsetIndexer {
    d: usize,
    table: Vec<Vec<usize>>,
}

impl SubsetIndexer {
    pub fn new(d: usize) -> Self {
        let mut table = vec![vec![0usize; d + 2]; d + 1];
        for n in 0..=d {
            table[n][0] = 1;
            for k in 1..=n {
                table[n][k] = table[n - 1][k - 1] + if k < n { table[n - 1][k] } else { 0 };
            }
        }
        SubsetIndexer { d, table }
    }

    pub fn count(&self, k: usize) -> usize {
        if k > self.d {
            0
        } else {
            self.table[self.d][k]
        }
    }

    pub fn rank(&self, mut set: EdgeSet) -> usize {
        let mut r = 0;
        let mut i = 1;
        while set != 0 {
            let c = set.trailing_zeros() as usize;
            if i <= c {
                r += self.table[c][i];
            }
            set &= set - 1;
            i += 1;
        }
        r
    }

    /// All `k`-subsets in increasing numeric order.
    pub fn subsets(&self, k: usize) -> Vec<EdgeSet> {
        k_subsets(self.d, k)
    }
}

pub fn k_subsets(d: usize, k: usize) -> Vec<EdgeSet> {
    if k > d {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u64 = 1 << d;
    let mut out = Vec::new();
    let mut x: u64 = (1 << k) - 1;
    while x < limit {
        out.push(x);
        // Gosper's hack: next integer with the same popcount
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}
