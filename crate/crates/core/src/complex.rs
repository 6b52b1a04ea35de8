//! The binomial chain complexes `C(w_0, ..., w_d)` of a weighted path graph.
//!
//! `C_k` has one basis vector per `k`-subset `J` of the edges, ordered by
//! increasing bitmask. The differential sends `e_J` to
//! `sum_{j in J} (-1)^{s(J,j)} C(w(J,j), w'(J,j)) e_{J - j}`, where `w'` is the
//! weight of the piece away from vertex 0, so the binomial stays a polynomial
//! in `w_0` when `w_0` is negative.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{
    binom_mod_p, enumerate_a, generalized_binomial, interval_data, k_subsets, tuple_p_index,
    SubsetIndexer, WeightSequence,
};
use crate::error::{domain, Result};
use crate::exec::{map_ordered, Exec};
use crate::linalg::{IntegerMatrix, Prime, PrimeFieldMatrix};

/// Largest supported number of edges.
pub const MAX_EDGES: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Integers,
    Field(Prime),
}

#[derive(Debug, Clone)]
pub enum Differential {
    Field(PrimeFieldMatrix),
    Integer(IntegerMatrix),
}

impl Differential {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Differential::Field(m) => (m.rows(), m.cols()),
            Differential::Integer(m) => (m.rows(), m.cols()),
        }
    }

    pub fn as_field(&self) -> Option<&PrimeFieldMatrix> {
        match self {
            Differential::Field(m) => Some(m),
            Differential::Integer(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<&IntegerMatrix> {
        match self {
            Differential::Integer(m) => Some(m),
            Differential::Field(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    weights: WeightSequence,
    coefficients: Coefficients,
    /// `differentials[k - 1]` is `∂_k : C_k -> C_{k-1}`.
    differentials: Vec<Differential>,
}

struct Entry {
    row: usize,
    col: usize,
    negative: bool,
    top: i64,
    bottom: u64,
}

fn differential_entries(w: &WeightSequence, idx: &SubsetIndexer, k: usize) -> Vec<Entry> {
    let d = w.len_edges();
    let mut out = Vec::with_capacity(idx.count(k) * k);
    for (col, set) in k_subsets(d, k).into_iter().enumerate() {
        let mut rest = set;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            let split = interval_data(w, set, j).expect("j is in the set");
            out.push(Entry {
                row: idx.rank(set & !(1 << (j - 1))),
                col,
                negative: split.sign_exponent % 2 == 1,
                top: split.total,
                bottom: split.right as u64,
            });
        }
    }
    out
}

impl ChainComplex {
    pub fn build(w: &WeightSequence, coefficients: Coefficients) -> Result<Self> {
        let d = w.len_edges();
        if d > MAX_EDGES {
            return domain(format!("at most {MAX_EDGES} edges supported, got {d}"));
        }
        let idx = SubsetIndexer::new(d);
        let mut differentials = Vec::with_capacity(d);
        for k in 1..=d {
            let (rows, cols) = (idx.count(k - 1), idx.count(k));
            let entries = differential_entries(w, &idx, k);
            let diff = match coefficients {
                Coefficients::Field(p) => {
                    let triplets = entries.into_iter().map(|e| {
                        let v = binom_mod_p(e.top, e.bottom, p);
                        (e.row, e.col, if e.negative { p.neg(v) } else { v })
                    });
                    Differential::Field(PrimeFieldMatrix::from_triplets(p, rows, cols, triplets)?)
                }
                Coefficients::Integers => {
                    let mut m = IntegerMatrix::zeros(rows, cols);
                    for e in entries {
                        let v = generalized_binomial(e.top, e.bottom);
                        m.set(e.row, e.col, if e.negative { -v } else { v });
                    }
                    Differential::Integer(m)
                }
            };
            differentials.push(diff);
        }
        let complex = ChainComplex {
            weights: w.clone(),
            coefficients,
            differentials,
        };
        debug_assert!(complex.is_complex(), "d∘d != 0 for {w}");
        Ok(complex)
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn length(&self) -> usize {
        self.weights.len_edges()
    }

    pub fn dim(&self, k: usize) -> usize {
        SubsetIndexer::new(self.length()).count(k)
    }

    /// `∂_k` for `1 <= k <= d`.
    pub fn differential(&self, k: usize) -> Option<&Differential> {
        k.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    /// Checks that every composite `∂_{k-1} ∘ ∂_k` vanishes.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|pair| match (&pair[0], &pair[1]) {
            (Differential::Field(a), Differential::Field(b)) => {
                a.matmul(b).map(|m| m.is_zero()).unwrap_or(false)
            }
            (Differential::Integer(a), Differential::Integer(b)) => integer_product_is_zero(a, b),
            _ => false,
        })
    }

    /// Ranks of `∂_1, ..., ∂_d` over the coefficient field.
    pub fn ranks(&self, exec: Exec) -> Result<Vec<usize>> {
        let mats: Vec<&PrimeFieldMatrix> = self
            .differentials
            .iter()
            .map(|d| d.as_field())
            .collect::<Option<_>>()
            .map_or_else(|| domain("ranks need a complex over a prime field"), Ok)?;
        Ok(map_ordered(exec, &mats, |m| m.rank()))
    }

    pub fn homology_dims(&self, exec: Exec) -> Result<PoincarePolynomial> {
        let ranks = self.ranks(exec)?;
        Ok(homology_from_ranks(self.length(), &ranks))
    }

    /// Smith invariants of every differential of an integral complex.
    pub fn smith_invariants(&self) -> Result<Vec<Vec<BigInt>>> {
        self.differentials
            .iter()
            .map(|d| match d {
                Differential::Integer(m) => m.smith_invariants(),
                Differential::Field(_) => domain("Smith invariants need an integral complex"),
            })
            .collect()
    }

    /// Reduces an integral complex mod p.
    pub fn reduce_mod(&self, p: Prime) -> Result<Self> {
        let differentials = self
            .differentials
            .iter()
            .map(|d| match d {
                Differential::Integer(m) => Ok(Differential::Field(m.reduce_mod(p))),
                Differential::Field(_) => domain("complex is already over a field"),
            })
            .collect::<Result<_>>()?;
        Ok(ChainComplex {
            weights: self.weights.clone(),
            coefficients: Coefficients::Field(p),
            differentials,
        })
    }
}

fn integer_product_is_zero(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    if a.cols() != b.rows() {
        return false;
    }
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = BigInt::zero();
            for k in 0..a.cols() {
                acc += a.get(i, k) * b.get(k, j);
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

fn homology_from_ranks(d: usize, ranks: &[usize]) -> PoincarePolynomial {
    let idx = SubsetIndexer::new(d);
    let rank_of = |k: usize| if k == 0 || k > d { 0 } else { ranks[k - 1] };
    let coeffs = (0..=d)
        .map(|i| idx.count(i) - rank_of(i) - rank_of(i + 1))
        .collect();
    PoincarePolynomial::new(coeffs)
}

/// `sum_i h_i t^i` with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PoincarePolynomial(Vec<usize>);

impl PoincarePolynomial {
    pub fn new(mut coeffs: Vec<usize>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincarePolynomial(coeffs)
    }

    pub fn coeff(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Product of polynomials (Künneth over a field).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PoincarePolynomial(Vec::new());
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PoincarePolynomial::new(out)
    }

    /// First degree where the two differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, usize)> {
        (0..self.0.len().max(other.0.len()))
            .find(|&i| self.coeff(i) != other.coeff(i))
            .map(|i| (i, self.coeff(i), other.coeff(i)))
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Homology of `C(w)` over `F_p`.
pub fn homology(w: &WeightSequence, p: Prime, exec: Exec) -> Result<PoincarePolynomial> {
    ChainComplex::build(w, Coefficients::Field(p))?.homology_dims(exec)
}

/// The closed form for `C(1, ..., 1)` with `d` edges:
/// `sum over alpha in A_{p,d+1} of t^{d+1-|alpha|_p}`.
pub fn poincare_formula_all_ones(d: usize, p: Prime) -> PoincarePolynomial {
    let mut coeffs = vec![0usize; d + 1];
    for alpha in enumerate_a(p, d as u64 + 1) {
        let idx = tuple_p_index(&alpha, p).expect("A_{p,d} entries are 0 or 1 mod p");
        let deg = (d as u64 + 1)
            .checked_sub(idx)
            .expect("p-index never exceeds the represented integer");
        coeffs[deg as usize] += 1;
    }
    PoincarePolynomial::new(coeffs)
}

/// Strips powers `p^r > w_1 + ... + w_d` from `w_0`, largest first.
pub fn lucas_reduce(w: &WeightSequence, p: Prime) -> Result<WeightSequence> {
    if w.w0() < 0 {
        return domain("Lucas reduction needs w_0 >= 0");
    }
    let tail = w.tail_sum();
    let q = p.as_u64() as i64;
    let mut w0 = w.w0();
    loop {
        // smallest admissible power
        let mut pr: i64 = 1;
        while pr <= tail {
            pr *= q;
        }
        if pr > w0 {
            break;
        }
        let mut largest = pr;
        while largest.checked_mul(q).is_some_and(|x| x <= w0) {
            largest *= q;
        }
        w0 -= largest;
    }
    Ok(w.with_w0(w0))
}

/// Outcome of comparing `C(w_0, 1^d)` with its conjectured partner.
#[derive(Debug, Clone, Serialize)]
pub struct InvolutionReport {
    pub w0: i64,
    pub d: usize,
    pub p: Prime,
    /// `-w_0 - 2d`
    pub partner_w0: i64,
    /// Ranks of `∂_1..∂_d` for the original and for the negative partner.
    pub ranks: Vec<usize>,
    pub partner_ranks: Vec<usize>,
    /// Smallest `r` with `p^r > w_0 + 2d` when `w_0 + 2d >= 0`, and the ranks
    /// of `C(p^r - w_0 - 2d, 1^d)`.
    pub lucas_partner: Option<(u32, i64, Vec<usize>)>,
    /// Smith invariants of both integral complexes (necessary condition only).
    pub smith: Option<SmithComparison>,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmithComparison {
    pub original: Vec<Vec<String>>,
    pub partner: Vec<Vec<String>>,
    pub agree: bool,
}

pub fn check_involution(w0: i64, d: usize, p: Prime, exec: Exec) -> Result<InvolutionReport> {
    let partner_w0 = -w0 - 2 * d as i64;
    let original = ChainComplex::build(&WeightSequence::hook(w0, d), Coefficients::Field(p))?;
    let partner =
        ChainComplex::build(&WeightSequence::hook(partner_w0, d), Coefficients::Field(p))?;
    let ranks = original.ranks(exec)?;
    let partner_ranks = partner.ranks(exec)?;
    let mut agree = ranks == partner_ranks;

    let lucas_partner = if -partner_w0 >= 0 {
        let bound = -partner_w0;
        let mut r = 0u32;
        let mut pr: i64 = 1;
        while pr <= bound {
            pr *= p.as_u64() as i64;
            r += 1;
        }
        let shifted = pr + partner_w0;
        let c = ChainComplex::build(&WeightSequence::hook(shifted, d), Coefficients::Field(p))?;
        let rk = c.ranks(exec)?;
        agree &= rk == ranks;
        Some((r, shifted, rk))
    } else {
        None
    };

    let smith = if SubsetIndexer::new(d).count(d / 2) <= crate::linalg::SMITH_LIMIT {
        let a = ChainComplex::build(&WeightSequence::hook(w0, d), Coefficients::Integers)?;
        let b = ChainComplex::build(&WeightSequence::hook(partner_w0, d), Coefficients::Integers)?;
        let to_str = |v: Vec<Vec<BigInt>>| -> Vec<Vec<String>> {
            v.into_iter()
                .map(|row| row.into_iter().map(|x| x.to_string()).collect())
                .collect()
        };
        let (sa, sb) = (a.smith_invariants()?, b.smith_invariants()?);
        let same = sa == sb;
        Some(SmithComparison {
            original: to_str(sa),
            partner: to_str(sb),
            agree: same,
        })
    } else {
        None
    };

    Ok(InvolutionReport {
        w0,
        d,
        p,
        partner_w0,
        ranks,
        partner_ranks,
        lucas_partner,
        smith,
        agree,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SesReport {
    pub weights: WeightSequence,
    pub split: usize,
    pub p: Prime,
    pub chain_dims: Vec<usize>,
    pub tensor_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub dims_ok: bool,
    pub euler: (i64, i64, i64),
    pub euler_ok: bool,
    pub homology: PoincarePolynomial,
    /// Künneth product of the two halves.
    pub sub_homology: PoincarePolynomial,
    /// Homology of the merged complex, shifted up by one.
    pub quotient_homology: PoincarePolynomial,
    pub subadditive: bool,
}

impl SesReport {
    pub fn holds(&self) -> bool {
        self.dims_ok && self.euler_ok && self.subadditive
    }
}

fn euler(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Dimension, Euler characteristic and long-exact-sequence checks for
/// `0 -> C(w_0..w_i) ⊗ C(w_{i+1}..w_d) -> C(w) -> C(merged)[-1] -> 0`.
pub fn ses_dimension_check(w: &WeightSequence, i: usize, p: Prime, exec: Exec) -> Result<SesReport> {
    let d = w.len_edges();
    if i >= d {
        return domain(format!("split index {i} must be below d = {d}"));
    }
    let (left, right) = w.split(i);
    let merged = w.merge(i);
    let (ia, ib, im, iw) = (
        SubsetIndexer::new(left.len_edges()),
        SubsetIndexer::new(right.len_edges()),
        SubsetIndexer::new(merged.len_edges()),
        SubsetIndexer::new(d),
    );
    let chain_dims: Vec<usize> = (0..=d).map(|k| iw.count(k)).collect();
    let tensor_dims: Vec<usize> = (0..=d)
        .map(|k| (0..=k).map(|k1| ia.count(k1) * ib.count(k - k1)).sum())
        .collect();
    let quotient_dims: Vec<usize> = (0..=d)
        .map(|k| if k == 0 { 0 } else { im.count(k - 1) })
        .collect();
    let dims_ok = (0..=d).all(|k| chain_dims[k] == tensor_dims[k] + quotient_dims[k]);
    let merged_dims: Vec<usize> = (0..d).map(|k| im.count(k)).collect();
    let euler_values = (euler(&chain_dims), euler(&tensor_dims), euler(&merged_dims));
    let euler_ok = euler_values.0 == euler_values.1 - euler_values.2;

    let full = homology(w, p, exec)?;
    let sub_homology = homology(&left, p, exec)?.mul(&homology(&right, p, exec)?);
    let merged_h = homology(&merged, p, exec)?;
    let mut shifted = vec![0];
    shifted.extend_from_slice(merged_h.coeffs());
    let quotient_homology = PoincarePolynomial::new(shifted);
    let subadditive = (0..=d)
        .all(|k| full.coeff(k) <= sub_homology.coeff(k) + quotient_homology.coeff(k));

    Ok(SesReport {
        weights: w.clone(),
        split: i,
        p,
        chain_dims,
        tensor_dims,
        quotient_dims,
        dims_ok,
        euler: euler_values,
        euler_ok,
        homology: full,
        sub_homology,
        quotient_homology,
        subadditive,
    })
}

/// `j -> dim H^j_st(λ)` for the hook weight attached to `(w_0, 1^d)`,
/// via `H^j_st = H_{d + w_0 - j}(C(w_0, 1^d))`. Only nonzero entries.
pub fn stable_hook_cohomology(w0: i64, d: usize, p: Prime, exec: Exec) -> Result<Vec<(i64, usize)>> {
    if w0 < 1 {
        return domain("stable hook cohomology needs w_0 >= 1");
    }
    let h = homology(&WeightSequence::hook(w0, d), p, exec)?;
    let mut out: Vec<(i64, usize)> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (d as i64 + w0 - i as i64, c))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicityReport {
    pub w0: i64,
    pub d: usize,
    pub p: Prime,
    pub q: u64,
    pub before: PoincarePolynomial,
    pub after: PoincarePolynomial,
    pub agree: bool,
}

/// Compares `C(w_0, 1^d)` with `C(w_0 + p^r, 1^d)` for `p^r > d`.
pub fn check_stable_periodicity_hook(
    w0: i64,
    d: usize,
    p: Prime,
    r: u32,
    exec: Exec,
) -> Result<PeriodicityReport> {
    let q = p
        .as_u64()
        .checked_pow(r)
        .filter(|&q| q <= i64::MAX as u64)
        .ok_or_else(|| crate::error::Error::Domain("p^r overflows".into()))?;
    if q <= d as u64 {
        return domain(format!("need p^r = {q} > d = {d}"));
    }
    let before = homology(&WeightSequence::hook(w0, d), p, exec)?;
    let after = homology(&WeightSequence::hook(w0 + q as i64, d), p, exec)?;
    Ok(PeriodicityReport {
        w0,
        d,
        p,
        q,
        agree: before == after,
        before,
        after,
    })
}

/// Integer value of an entry of an integral differential, for display.
pub fn integer_rows(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
        .collect()
}
