use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

use super::WeightSequence;

/// A connected skew shape `outer / inner` with no 2x2 square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonShape {
    outer: Vec<usize>,
    inner: Vec<usize>,
}

impl RibbonShape {
    pub fn new(outer: Vec<usize>, mut inner: Vec<usize>) -> Result<Self> {
        let outer = strip_zeros(outer);
        inner = strip_zeros(inner);
        if outer.is_empty() {
            return domain("empty skew shape");
        }
        if !is_partition(&outer) || !is_partition(&inner) {
            return domain("outer and inner must be partitions");
        }
        if inner.len() > outer.len() || inner.iter().zip(&outer).any(|(m, l)| m > l) {
            return domain("inner shape is not contained in the outer shape");
        }
        inner.resize(outer.len(), 0);
        for r in 0..outer.len() {
            if inner[r] == outer[r] {
                return domain(format!("row {} of the skew shape is empty", r + 1));
            }
            if r + 1 < outer.len() {
                // rows r and r+1 must share exactly one column
                let overlap_lo = inner[r];
                let overlap_hi = outer[r + 1];
                if overlap_hi <= overlap_lo {
                    return domain("skew shape is disconnected");
                }
                if overlap_hi - overlap_lo >= 2 {
                    return domain("skew shape contains a 2x2 square");
                }
            }
        }
        Ok(RibbonShape {
            outer,
            inner: strip_zeros(inner),
        })
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    fn inner_at(&self, r: usize) -> usize {
        self.inner.get(r).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.outer.iter().sum::<usize>() - self.inner.iter().sum::<usize>()
    }
}

fn strip_zeros(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn is_partition(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Column sizes of the ribbon read left to right.
pub fn ribbon_to_columns(r: &RibbonShape) -> WeightSequence {
    let first = r.inner_at(r.outer.len() - 1);
    let last = r.outer[0];
    let sizes = (first..last)
        .map(|c| {
            (0..r.outer.len())
                .filter(|&row| r.inner_at(row) <= c && c < r.outer[row])
                .count() as i64
        })
        .collect();
    WeightSequence::new(sizes).expect("column sizes are positive")
}

/// Inverse of [`ribbon_to_columns`]; needs every column size at least 1.
pub fn columns_to_ribbon(w: &WeightSequence) -> Result<RibbonShape> {
    let cols = w.weights();
    if cols.iter().any(|&c| c < 1) {
        return domain("every column of a ribbon has at least one box");
    }
    // rows occupied by each column, filled right to left starting at row 0
    let mut spans = vec![(0usize, 0usize); cols.len()];
    let mut top = 0usize;
    for (c, &size) in cols.iter().enumerate().rev() {
        let bottom = top + size as usize - 1;
        spans[c] = (top, bottom);
        top = bottom;
    }
    let height = spans[0].1 + 1;
    let mut outer = vec![0usize; height];
    let mut inner = vec![usize::MAX; height];
    for (c, &(t, b)) in spans.iter().enumerate() {
        for row in t..=b {
            outer[row] = outer[row].max(c + 1);
            inner[row] = inner[row].min(c);
        }
    }
    RibbonShape::new(outer, inner)
}
