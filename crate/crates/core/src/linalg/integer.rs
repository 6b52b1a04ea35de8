use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

use super::matrix::PrimeFieldMatrix;
use super::prime::Prime;

/// Largest dimension accepted by [`IntegerMatrix::smith_invariants`].
pub const SMITH_LIMIT: usize = 200;

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    pub fn reduce_mod(&self, p: Prime) -> PrimeFieldMatrix {
        let modulus = BigInt::from(p.get());
        let triplets = self.data.iter().enumerate().filter_map(|(i, v)| {
            let r = v.mod_floor(&modulus);
            (!r.is_zero()).then(|| {
                let small: u32 = r.try_into().expect("residue below p");
                (i / self.cols, i % self.cols, small)
            })
        });
        PrimeFieldMatrix::from_triplets(p, self.rows, self.cols, triplets)
            .expect("indices in range")
    }

    /// Diagonal of the Smith normal form: non-negative, each entry divides the
    /// next, zeros last. Length is `min(rows, cols)`.
    pub fn smith_invariants(&self) -> Result<Vec<BigInt>> {
        if self.rows > SMITH_LIMIT || self.cols > SMITH_LIMIT {
            return Err(Error::SmithTooLarge {
                rows: self.rows,
                cols: self.cols,
                limit: SMITH_LIMIT,
            });
        }
        let mut m: Vec<Vec<BigInt>> = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut diag = Vec::with_capacity(rows.min(cols));
        for t in 0..rows.min(cols) {
            // smallest nonzero entry of the trailing block becomes the pivot
            let Some((pr, pc)) = smallest_nonzero(&m, t) else {
                break;
            };
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if m[i][t].is_zero() {
                        continue;
                    }
                    let q = m[i][t].div_floor(&m[t][t]);
                    let pivot_row = m[t].clone();
                    for (x, y) in m[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= &q * y;
                    }
                    if !m[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if m[t][j].is_zero() {
                        continue;
                    }
                    let q = m[t][j].div_floor(&m[t][t]);
                    for row in m[t..].iter_mut() {
                        let y = row[t].clone();
                        row[j] -= &q * y;
                    }
                    if !m[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    // the pivot must divide the rest of the block
                    let bad = (t + 1..rows).find(|&i| {
                        (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t]))
                    });
                    match bad {
                        Some(i) => {
                            let src = m[i].clone();
                            for (x, y) in m[t][t..].iter_mut().zip(&src[t..]) {
                                *x += y;
                            }
                        }
                        None => break,
                    }
                }
                if let Some((pr, pc)) = smallest_nonzero_cross(&m, t) {
                    m.swap(t, pr);
                    for row in m.iter_mut() {
                        row.swap(t, pc);
                    }
                }
            }
            diag.push(m[t][t].abs());
        }
        diag.resize(rows.min(cols), BigInt::zero());
        Ok(diag)
    }
}

fn smallest_nonzero(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` of the trailing block.
fn smallest_nonzero_cross(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best = (t, t);
    let mut best_abs = m[t][t].abs();
    let mut consider = |i: usize, j: usize| {
        let v = m[i][j].abs();
        if !v.is_zero() && (best_abs.is_zero() || v < best_abs) {
            best_abs = v;
            best = (i, j);
        }
    };
    for j in t..m[t].len() {
        consider(t, j);
    }
    for i in t..m.len() {
        consider(i, t);
    }
    (!best_abs.is_zero()).then_some(best)
}
