//! Dense Gaussian elimination over F_p on row-major `Vec<Vec<u32>>`.

use super::prime::Prime;

fn eliminate_below(p: Prime, m: &mut [Vec<u32>], pivot_row: usize, col: usize) {
    let inv = p.inv(m[pivot_row][col]);
    let (head, tail) = m.split_at_mut(pivot_row + 1);
    let pivot = &head[pivot_row];
    for row in tail.iter_mut() {
        let x = row[col];
        if x == 0 {
            continue;
        }
        let factor = p.mul(x, inv);
        for c in col..pivot.len() {
            if pivot[c] != 0 {
                row[c] = p.sub(row[c], p.mul(factor, pivot[c]));
            }
        }
    }
}

pub(crate) fn rank(p: Prime, mut m: Vec<Vec<u32>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, found);
        eliminate_below(p, &mut m, r, c);
        r += 1;
    }
    r
}

pub(crate) fn rref_with_order(
    p: Prime,
    mut m: Vec<Vec<u32>>,
    order: &[usize],
) -> (Vec<Vec<u32>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, found);
        let inv = p.inv(m[r][c]);
        for v in m[r].iter_mut() {
            *v = p.mul(*v, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                if y != 0 {
                    *x = p.sub(*x, p.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}
