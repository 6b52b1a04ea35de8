use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::Prime;

/// A filling of the two-row shape `(a, b)` with entries in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoRowTableau {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl TwoRowTableau {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>, n: usize) -> Result<Self> {
        if bottom.len() > top.len() {
            return domain("second row longer than the first");
        }
        if top.iter().chain(&bottom).any(|&x| x == 0 || x > n) {
            return domain(format!("entries must lie in 1..={n}"));
        }
        Ok(TwoRowTableau { top, bottom })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.top.len(), self.bottom.len())
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    /// Exponent vector of `t^T`: how often each of `1..=n` appears.
    pub fn content(&self, n: usize) -> Vec<u32> {
        let mut c = vec![0u32; n];
        for &x in self.top.iter().chain(&self.bottom) {
            c[x - 1] += 1;
        }
        c
    }

    /// Exponents of `M_T = x_{u_1}...x_{u_a} y_{v_1}...y_{v_b}` as `(x part, y part)`.
    pub fn leading_monomial(&self, n: usize) -> (Vec<u32>, Vec<u32>) {
        let mut u = vec![0u32; n];
        let mut v = vec![0u32; n];
        for &x in &self.top {
            u[x - 1] += 1;
        }
        for &y in &self.bottom {
            v[y - 1] += 1;
        }
        (u, v)
    }

    pub fn is_semistandard(&self) -> bool {
        weakly_increasing(&self.top)
            && weakly_increasing(&self.bottom)
            && self.bottom.iter().zip(&self.top).all(|(v, u)| u < v)
    }

    /// Weakly increasing rows and columns, row runs of length at most `p - 1`,
    /// and every column with `u_j = v_j` sees at least `p` equal entries
    /// counting `u_j..` rightwards in the top row and `..v_j` leftwards in the
    /// bottom row.
    pub fn is_p_semistandard(&self, p: Prime) -> bool {
        let p = p.get() as usize;
        if !weakly_increasing(&self.top) || !weakly_increasing(&self.bottom) {
            return false;
        }
        if self.bottom.iter().zip(&self.top).any(|(v, u)| u > v) {
            return false;
        }
        if max_run(&self.top) > p - 1 || max_run(&self.bottom) > p - 1 {
            return false;
        }
        (0..self.bottom.len()).all(|j| {
            let x = self.top[j];
            if x != self.bottom[j] {
                return true;
            }
            let right = self.top[j..].iter().take_while(|&&u| u == x).count();
            let left = self.bottom[..=j].iter().rev().take_while(|&&v| v == x).count();
            right + left >= p
        })
    }
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[usize]| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "[{} / {}]", row(&self.top), row(&self.bottom))
    }
}

fn weakly_increasing(r: &[usize]) -> bool {
    r.windows(2).all(|w| w[0] <= w[1])
}

fn max_run(r: &[usize]) -> usize {
    let mut best = 0;
    let mut i = 0;
    while i < r.len() {
        let j = r[i..].iter().take_while(|&&x| x == r[i]).count();
        best = best.max(j);
        i += j;
    }
    best
}

/// Weakly increasing words of length `len` over `1..=n`, lexicographic,
/// with constant runs no longer than `max_run`.
fn words(n: usize, len: usize, max_run: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, len: usize, max_run: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for x in lo..=n {
            if cur.len() >= max_run && cur[cur.len() - max_run..].iter().all(|&y| y == x) {
                continue;
            }
            cur.push(x);
            go(n, len, max_run, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_run == 0 && len > 0 {
        return out;
    }
    go(n, len, max_run, &mut Vec::with_capacity(len), &mut out);
    out
}

fn check_shape(n: usize, a: usize, b: usize) -> Result<()> {
    if n == 0 {
        return domain("need at least one variable");
    }
    if a < b {
        return domain(format!("shape ({a},{b}) is not a partition"));
    }
    Ok(())
}

/// Semi-standard tableaux of shape `(a, b)`, lexicographic on (top, bottom).
pub fn enumerate_ssyt(n: usize, a: usize, b: usize) -> Result<Vec<TwoRowTableau>> {
    check_shape(n, a, b)?;
    let bottoms = words(n, b, usize::MAX);
    let mut out = Vec::new();
    for top in words(n, a, usize::MAX) {
        for bottom in &bottoms {
            let t = TwoRowTableau {
                top: top.clone(),
                bottom: bottom.clone(),
            };
            if t.is_semistandard() {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// p-semi-standard tableaux of shape `(a, b)`, lexicographic on (top, bottom).
pub fn enumerate_pssyt(n: usize, a: usize, b: usize, p: Prime) -> Result<Vec<TwoRowTableau>> {
    check_shape(n, a, b)?;
    let run = p.get() as usize - 1;
    let bottoms = words(n, b, run);
    let mut out = Vec::new();
    for top in words(n, a, run) {
        for bottom in &bottoms {
            let t = TwoRowTableau {
                top: top.clone(),
                bottom: bottom.clone(),
            };
            if t.is_p_semistandard(p) {
                out.push(t);
            }
        }
    }
    Ok(out)
}
