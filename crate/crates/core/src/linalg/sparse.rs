//! Sparse elimination with a Markowitz-style pivot choice.
//!
//! The next pivot row is the shortest active row; within it the pivot column
//! is the one currently appearing in the fewest active rows. Column
//! occupancy lists are kept lazily and may hold stale row ids, which are
//! filtered by a membership check.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::prime::Prime;

type SparseRow = Vec<(u32, u32)>;

/// `target - factor * pivot`, both sorted by column.
fn axpy(p: Prime, target: &[(u32, u32)], factor: u32, pivot: &[(u32, u32)]) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ct = target.get(i).map_or(u32::MAX, |e| e.0);
        let cp = pivot.get(j).map_or(u32::MAX, |e| e.0);
        if ct < cp {
            out.push(target[i]);
            i += 1;
        } else if cp < ct {
            out.push((cp, p.neg(p.mul(factor, pivot[j].1))));
            j += 1;
        } else {
            let v = p.sub(target[i].1, p.mul(factor, pivot[j].1));
            if v != 0 {
                out.push((ct, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn contains(row: &[(u32, u32)], col: u32) -> Option<u32> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| row[i].1)
}

pub(crate) fn rank(p: Prime, cols: usize, mut rows: Vec<SparseRow>) -> usize {
    let mut active = vec![true; rows.len()];
    let mut col_count = vec![0usize; cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    let mut heap = BinaryHeap::new();
    for (id, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(id as u32);
        }
        heap.push(Reverse((row.len(), id)));
    }

    let mut rank = 0;
    while let Some(Reverse((len, id))) = heap.pop() {
        if !active[id] || rows[id].len() != len {
            continue;
        }
        active[id] = false;
        if len == 0 {
            continue;
        }
        let pivot_row = std::mem::take(&mut rows[id]);
        let &(pc, pv) = pivot_row
            .iter()
            .min_by_key(|&&(c, _)| (col_count[c as usize], c))
            .expect("nonempty row");
        for &(c, _) in &pivot_row {
            col_count[c as usize] -= 1;
        }
        let inv = p.inv(pv);
        let candidates = std::mem::take(&mut col_rows[pc as usize]);
        for other in candidates {
            let other = other as usize;
            if !active[other] {
                continue;
            }
            let Some(x) = contains(&rows[other], pc) else {
                continue;
            };
            let factor = p.mul(x, inv);
            let updated = axpy(p, &rows[other], factor, &pivot_row);
            for &(c, _) in &rows[other] {
                col_count[c as usize] -= 1;
            }
            for &(c, _) in &updated {
                col_count[c as usize] += 1;
                if contains(&rows[other], c).is_none() {
                    col_rows[c as usize].push(other as u32);
                }
            }
            rows[other] = updated;
            heap.push(Reverse((rows[other].len(), other)));
        }
        rank += 1;
    }
    rank
}
