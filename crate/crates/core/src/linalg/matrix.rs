use std::fmt;

use crate::error::{Error, Result};

use super::dense;
use super::prime::Prime;
use super::sparse;

/// Column count above which [`PrimeFieldMatrix::rank`] switches from dense
/// row reduction to sparse Markowitz elimination.
pub const DEFAULT_SPARSE_THRESHOLD: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankConfig {
    pub sparse_threshold: usize,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            sparse_threshold: DEFAULT_SPARSE_THRESHOLD,
        }
    }
}

/// A matrix over F_p stored as sorted sparse rows.
///
/// Entries are canonical residues in `[0, p)`; zeros are never stored. The
/// shape is fixed at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, u32)>>,
}

impl PrimeFieldMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        PrimeFieldMatrix {
            p,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i as u32, 1)]).collect();
        PrimeFieldMatrix {
            p,
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds from signed integer rows, reducing every entry mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter_map(|(c, &x)| {
                        let v = p.reduce(x);
                        (v != 0).then_some((c as u32, v))
                    })
                    .collect()
            })
            .collect();
        Ok(PrimeFieldMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds from `(row, col, residue)` triplets; repeated positions are summed.
    pub fn from_triplets(
        p: Prime,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let mut data: Vec<Vec<(u32, u32)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            data[r].push((c as u32, v % p.get()));
        }
        for row in &mut data {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(u32, u32)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 = p.add(last.1, v),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *row = merged;
        }
        Ok(PrimeFieldMatrix {
            p,
            rows,
            cols,
            data,
        })
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        let r = &self.data[row];
        match r.binary_search_by_key(&(col as u32), |&(c, _)| c) {
            Ok(i) => r[i].1,
            Err(_) => 0,
        }
    }

    pub fn row_entries(&self, row: usize) -> &[(u32, u32)] {
        &self.data[row]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                out[r][c as usize] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                data[c as usize].push((r as u32, v));
            }
        }
        PrimeFieldMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols || self.p != other.p {
            return Err(Error::Shape("vstack needs equal column count and prime".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(PrimeFieldMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let mut acc = vec![0u32; other.cols];
        let mut touched: Vec<u32> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for &(k, a) in row {
                for &(c, b) in &other.data[k as usize] {
                    let slot = &mut acc[c as usize];
                    if *slot == 0 {
                        touched.push(c);
                    }
                    *slot = p.add(*slot, p.mul(a, b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &c in &touched {
                let v = std::mem::take(&mut acc[c as usize]);
                if v != 0 {
                    out.push((c, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Ok(PrimeFieldMatrix {
            p,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank_with(RankConfig::default())
    }

    pub fn rank_with(&self, config: RankConfig) -> usize {
        if self.is_zero() {
            return 0;
        }
        if self.cols > config.sparse_threshold {
            sparse::rank(self.p, self.cols, self.data.clone())
        } else {
            dense::rank(self.p, self.to_dense())
        }
    }

    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn cokernel_dimension(&self) -> usize {
        self.rows - self.rank()
    }

    /// Reduced row echelon form where pivot columns are chosen greedily in
    /// `column_order`. Returns the reduced matrix (zero rows last) and the
    /// pivot columns in the order they were found.
    pub fn rref_with_order(&self, column_order: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut seen = vec![false; self.cols];
        if column_order.len() != self.cols {
            return Err(Error::Domain("column order is not a permutation".into()));
        }
        for &c in column_order {
            if c >= self.cols || std::mem::replace(&mut seen[c], true) {
                return Err(Error::Domain("column order is not a permutation".into()));
            }
        }
        let (reduced, pivots) = dense::rref_with_order(self.p, self.to_dense(), column_order);
        let data = reduced
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|&(_, v)| v != 0)
                    .map(|(c, v)| (c as u32, v))
                    .collect()
            })
            .collect();
        Ok((
            PrimeFieldMatrix {
                p: self.p,
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        ))
    }
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PrimeFieldMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                writeln!(f, "  {row:?}")?;
            }
        }
        Ok(())
    }
}
