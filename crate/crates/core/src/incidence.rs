//! Cohomology characters of divided powers `D^d R(e)` on projective space,
//! read off from multiplication by `ω = x_1 y_1 + ... + x_n y_n` on the
//! local cohomology module `M = H^n_{(y)}(k[x, y])`.
//!
//! `M_{d,e}` has basis `x^b / y^{1+a}` with `|a| = d`, `|b| = e`. The map
//! `M_{d,e} -> M_{d-1,e+1}` preserves the multidegree `a + b + 1`, so it
//! splits into independent blocks. Kernels give `H^0`, cokernels `H^1`;
//! characters are shifted by `-(1, ..., 1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::character::{self, LaurentPolynomial};
use crate::error::{domain, Error, Result};
use crate::exec::{map_ordered, Exec};
use crate::linalg::{Prime, PrimeFieldMatrix};

/// `x^b / y^{1+a}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LocalCohElement {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl LocalCohElement {
    pub fn multidegree(&self) -> Vec<u32> {
        self.a.iter().zip(&self.b).map(|(x, y)| x + y + 1).collect()
    }
}

/// Vectors `a` with `0 <= a_i <= bound_i` and `|a| = total`, lexicographic.
fn bounded_vectors(bound: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(bound: &[u32], rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == bound.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let capacity: u32 = bound[i + 1..].iter().sum();
        for x in 0..=bound[i].min(rest) {
            if rest - x > capacity {
                continue;
            }
            cur.push(x);
            go(bound, rest - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, total, &mut Vec::with_capacity(bound.len()), &mut out);
    out
}

fn check_block(n: usize, d: i64, e: i64, m: &[u32]) -> Result<()> {
    if m.len() != n {
        return Err(Error::VariableCount {
            left: n,
            right: m.len(),
        });
    }
    if m.contains(&0) {
        return domain("every multidegree entry must be at least 1");
    }
    let total: i64 = m.iter().map(|&x| x as i64).sum();
    if total != d + e + n as i64 {
        return domain(format!("multidegree sums to {total}, expected d + e + n"));
    }
    Ok(())
}

/// Basis of the multidegree-`m` block of `M_{d,e}`; empty if `d < 0` or `e < 0`.
pub fn block_basis(n: usize, d: i64, e: i64, m: &[u32]) -> Result<Vec<LocalCohElement>> {
    check_block(n, d, e, m)?;
    if d < 0 || e < 0 {
        return Ok(Vec::new());
    }
    let bound: Vec<u32> = m.iter().map(|x| x - 1).collect();
    Ok(bounded_vectors(&bound, d as u32)
        .into_iter()
        .map(|a| {
            let b = bound.iter().zip(&a).map(|(t, x)| t - x).collect();
            LocalCohElement { a, b }
        })
        .collect())
}

/// Matrix of `·ω` from block `(d, e, m)` to block `(d-1, e+1, m)`; columns
/// follow the domain basis, rows the codomain basis.
pub fn omega_block(n: usize, d: i64, e: i64, m: &[u32], p: Prime) -> Result<PrimeFieldMatrix> {
    let domain_basis = block_basis(n, d, e, m)?;
    let codomain = block_basis(n, d - 1, e + 1, m)?;
    let index: BTreeMap<&Vec<u32>, usize> =
        codomain.iter().enumerate().map(|(i, el)| (&el.a, i)).collect();
    let mut triplets = Vec::new();
    for (col, el) in domain_basis.iter().enumerate() {
        for i in 0..n {
            if el.a[i] == 0 {
                // y_i^0 in the denominator: the class vanishes
                continue;
            }
            let mut a = el.a.clone();
            a[i] -= 1;
            let row = index[&a];
            triplets.push((row, col, 1));
        }
    }
    PrimeFieldMatrix::from_triplets(p, codomain.len(), domain_basis.len(), triplets)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDims {
    pub multidegree: Vec<u32>,
    pub domain: usize,
    pub codomain: usize,
    pub kernel: usize,
    pub cokernel: usize,
    /// Number of multidegrees this block stands for after symmetry expansion.
    pub orbit: usize,
}

impl BlockDims {
    pub fn euler_holds(&self) -> bool {
        self.domain as i64 - self.codomain as i64 == self.kernel as i64 - self.cokernel as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncidenceOptions {
    pub exec: Exec,
    /// Only compute weakly decreasing multidegrees and expand by orbit.
    pub symmetry_reduction: bool,
}

impl Default for IncidenceOptions {
    fn default() -> Self {
        IncidenceOptions {
            exec: Exec::Parallel,
            symmetry_reduction: true,
        }
    }
}

/// Characters of `H^0` and `H^1` of `D^d R(e)` together with the block table.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyCharacterPair {
    pub n: usize,
    pub d: i64,
    pub e: i64,
    pub p: Prime,
    pub h0: LaurentPolynomial,
    pub h1: LaurentPolynomial,
    pub blocks: Vec<BlockDims>,
}

impl CohomologyCharacterPair {
    /// Every block satisfies `dim dom - dim cod = ker - coker`.
    pub fn blockwise_euler_holds(&self) -> bool {
        self.blocks.iter().all(BlockDims::euler_holds)
    }

    /// `dim h0 - dim h1 = dim M_{d,e} - dim M_{d-1,e+1}`.
    pub fn global_euler_holds(&self) -> bool {
        let lhs = self.h0.dim_eval() - self.h1.dim_eval();
        lhs == module_dimension(self.n, self.d, self.e)
            - module_dimension(self.n, self.d - 1, self.e + 1)
    }
}

fn module_dimension(n: usize, d: i64, e: i64) -> BigInt {
    character::h(d, n).dim_eval() * character::h(e, n).dim_eval()
}

/// `[M_{d,e}] = h_d h_e t_1...t_n`.
pub fn module_character(n: usize, d: i64, e: i64) -> LaurentPolynomial {
    &(&character::h(d, n) * &character::h(e, n)) * &character::top_monomial(n)
}

/// Multidegrees `m` with all entries at least 1 summing to `total`; if
/// `sorted`, only weakly decreasing ones.
fn multidegrees(n: usize, total: i64, sorted: bool) -> Vec<Vec<u32>> {
    fn go(n: usize, rest: i64, max: i64, sorted: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let slots = n - cur.len();
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = if sorted { max.min(rest) } else { rest };
        // descending, so sorted output is canonical largest-first
        for x in (1..=hi).rev() {
            let remaining = slots as i64 - 1;
            if rest - x < remaining {
                continue;
            }
            if sorted && rest - x > remaining * x {
                continue;
            }
            cur.push(x as u32);
            go(n, rest - x, x, sorted, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= n as i64 {
        go(n, total, total, sorted, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Distinct permutations of `m`.
fn orbit(m: &[u32]) -> Vec<Vec<u32>> {
    let mut v = m.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) {
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

fn block_dims(n: usize, d: i64, e: i64, m: &[u32], p: Prime) -> Result<BlockDims> {
    let mat = omega_block(n, d, e, m, p)?;
    let rank = mat.rank();
    Ok(BlockDims {
        multidegree: m.to_vec(),
        domain: mat.cols(),
        codomain: mat.rows(),
        kernel: mat.cols() - rank,
        cokernel: mat.rows() - rank,
        orbit: 1,
    })
}

/// Characters of `H^0(P^{n-1}, D^d R(e))` and `H^1(P^{n-1}, D^d R(e))` in
/// characteristic `p`, valid for `e >= -1`.
pub fn h_characters(n: usize, d: i64, e: i64, p: Prime, opts: IncidenceOptions) -> Result<CohomologyCharacterPair> {
    if n < 2 {
        return domain("need n >= 2");
    }
    if d < 0 {
        return domain("need d >= 0");
    }
    if e <= -2 {
        return Err(Error::UnsupportedRegime(format!(
            "e = {e}: only e >= -1 is handled by the four-term sequence"
        )));
    }
    let total = d + e + n as i64;
    let ms = multidegrees(n, total, opts.symmetry_reduction);
    let computed: Vec<Result<BlockDims>> =
        map_ordered(opts.exec, &ms, |m| block_dims(n, d, e, m, p));
    let mut blocks = Vec::with_capacity(computed.len());
    let mut h0 = LaurentPolynomial::zero(n);
    let mut h1 = LaurentPolynomial::zero(n);
    for block in computed {
        let mut block = block?;
        let members = if opts.symmetry_reduction {
            orbit(&block.multidegree)
        } else {
            vec![block.multidegree.clone()]
        };
        block.orbit = members.len();
        for member in members {
            let shifted: Vec<i32> = member.iter().map(|&x| x as i32 - 1).collect();
            h0.add_term(shifted.clone(), BigInt::from(block.kernel));
            h1.add_term(shifted, BigInt::from(block.cokernel));
        }
        blocks.push(block);
    }
    Ok(CohomologyCharacterPair {
        n,
        d,
        e,
        p,
        h0,
        h1,
        blocks,
    })
}

/// `s^{(p)}_{(e+p, d-p)}`, the known `H^1` character for `p <= d < 2p`,
/// `e >= d - 1`.
pub fn h1_theorem_char(n: usize, d: i64, e: i64, p: Prime) -> Result<LaurentPolynomial> {
    let q = p.as_u64() as i64;
    if !(q <= d && d < 2 * q) {
        return domain(format!("need p <= d < 2p (d = {d}, p = {q})"));
    }
    if e < d - 1 {
        return domain(format!("need e >= d - 1 (e = {e}, d = {d})"));
    }
    Ok(character::schur2_trunc(e + q, d - q, p.get(), n))
}

/// Conjectured `H^1` character for `tp <= d < (t+1)p` with `1 <= t < p`:
/// `sum_{1<=b<=a<=t, 0<=j<=a-b} F^p(s_{(a-b,j)}) s^{(p)}_{(e+(b-j)p, d-ap)}`.
pub fn small_weights_conjecture_char(n: usize, d: i64, e: i64, p: Prime) -> Result<LaurentPolynomial> {
    let q = p.as_u64() as i64;
    let t = d.div_euclid(q);
    if d < 0 || t < 1 || t >= q {
        return domain(format!("need p <= d < p^2 (d = {d}, p = {q})"));
    }
    if e < d - 1 {
        return domain(format!("need e >= d - 1 (e = {e}, d = {d})"));
    }
    let mut acc = LaurentPolynomial::zero(n);
    for a in 1..=t {
        for b in 1..=a {
            for j in 0..=(a - b) {
                let outer = character::schur2(a - b, j, n).frobenius(p.get())?;
                let inner = character::schur2_trunc(e + (b - j) * q, d - a * q, p.get(), n);
                acc = acc.try_add(&outer.try_mul(&inner)?)?;
            }
        }
    }
    Ok(acc)
}

/// `(q, m)` with `q = 2^r`, `r >= 1`, `m >= 0`, `(2m+1) q <= d`.
pub fn lambda_set(d: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut q = 2i64;
    while q <= d {
        let mut m = 0;
        while (2 * m + 1) * q <= d {
            out.push((q, m));
            m += 1;
        }
        q *= 2;
    }
    out
}

/// Conjectured characteristic-2 `H^1` character:
/// `sum_{(q,m)} F^{2q}(N_m) s^{(q)}_{(e-(2m-1)q, d-(2m+1)q)}`.
pub fn char2_conjecture_char(n: usize, d: i64, e: i64) -> Result<LaurentPolynomial> {
    if e < d - 1 {
        return domain(format!("need e >= d - 1 (e = {e}, d = {d})"));
    }
    let mut acc = LaurentPolynomial::zero(n);
    for (q, m) in lambda_set(d) {
        let nim = character::nim_poly(m as u64, n).frobenius(2 * q as u32)?;
        let trunc = character::schur2_trunc(e - (2 * m - 1) * q, d - (2 * m + 1) * q, q as u32, n);
        acc = acc.try_add(&nim.try_mul(&trunc)?)?;
    }
    Ok(acc)
}
