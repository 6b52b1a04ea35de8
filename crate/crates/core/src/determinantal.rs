//! Bigraded slices of powers of the ideal of 2x2 minors of
//!
//! ```text
//! x_1 ... x_n
//! y_1 ... y_n
//! ```
//!
//! in `k[x, y]`, optionally modulo `x_i^p, y_i^p`. Everything is computed one
//! `GL_n`-multidegree block at a time: a block collects the monomials
//! `x^u y^v` of bidegree `(a, b)` with `u + v = m`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::character::{self, bounded_compositions, CoefficientWitness, LaurentPolynomial};
use crate::combinatorics::{enumerate_pssyt, enumerate_ssyt, TwoRowTableau};
use crate::error::{domain, Result};
use crate::exec::{map_ordered, Exec};
use crate::linalg::{Prime, PrimeFieldMatrix};

/// `x^u y^v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BigradedMonomial {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

impl BigradedMonomial {
    pub fn new(u: Vec<u32>, v: Vec<u32>) -> Result<Self> {
        if u.len() != v.len() {
            return domain("x and y exponent vectors differ in length");
        }
        Ok(BigradedMonomial { u, v })
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.u.iter().sum(), self.v.iter().sum())
    }

    pub fn multidegree(&self) -> Vec<u32> {
        self.u.iter().zip(&self.v).map(|(a, b)| a + b).collect()
    }

    /// Exponents of `x_1..x_n, y_1..y_n`; comparing keys lexicographically is
    /// the monomial order within a fixed bidegree.
    pub fn key(&self) -> Vec<u32> {
        self.u.iter().chain(&self.v).copied().collect()
    }

    fn from_key(key: &[u32]) -> Self {
        let n = key.len() / 2;
        BigradedMonomial {
            u: key[..n].to_vec(),
            v: key[n..].to_vec(),
        }
    }

    /// Survives in `k[x, y] / (x_i^q, y_i^q)`.
    pub fn below(&self, q: u32) -> bool {
        self.u.iter().chain(&self.v).all(|&e| e < q)
    }
}

impl fmt::Display for BigradedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, exps) in [("x", &self.u), ("y", &self.v)] {
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{name}{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// `M_T` for a tableau with entries in `1..=n`.
pub fn tableau_monomial(t: &TwoRowTableau, n: usize) -> BigradedMonomial {
    let (u, v) = t.leading_monomial(n);
    BigradedMonomial { u, v }
}

/// A spanning element: a product of minors `x_k y_l - x_l y_k` (pairs `k < l`,
/// 0-based) times a cofactor monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub minors: Vec<(usize, usize)>,
    pub cofactor: BigradedMonomial,
}

/// Sparse polynomial keyed by [`BigradedMonomial::key`], coefficients in `F_p`.
pub type Polynomial = BTreeMap<Vec<u32>, u32>;

/// Expands `minors * cofactor`, dropping any term with an exponent `>= cap`.
pub fn expand(minors: &[(usize, usize)], cofactor: &BigradedMonomial, cap: Option<u32>, p: Prime) -> Polynomial {
    let n = cofactor.n();
    let alive = |key: &[u32]| cap.is_none_or(|q| key.iter().all(|&e| e < q));
    let mut terms: Polynomial = BTreeMap::new();
    let start = cofactor.key();
    if alive(&start) {
        terms.insert(start, 1);
    }
    for &(k, l) in minors {
        let mut next: Polynomial = BTreeMap::new();
        for (key, c) in &terms {
            // x_k y_l with +1, x_l y_k with -1
            for (xi, yi, coeff) in [(k, l, *c), (l, k, p.neg(*c))] {
                let mut t = key.clone();
                t[xi] += 1;
                t[n + yi] += 1;
                if !alive(&t) {
                    continue;
                }
                let slot = next.entry(t).or_insert(0);
                *slot = p.add(*slot, coeff);
            }
        }
        next.retain(|_, c| *c != 0);
        terms = next;
    }
    terms
}

/// `G_T` expanded over `F_p`.
pub fn tableau_polynomial(t: &TwoRowTableau, n: usize, p: Prime) -> Polynomial {
    let (a, b) = t.shape();
    let minors: Vec<(usize, usize)> = (0..b).map(|i| (t.top()[i] - 1, t.bottom()[i] - 1)).collect();
    let mut u = vec![0u32; n];
    for &x in &t.top()[b..a] {
        u[x - 1] += 1;
    }
    // a minor with u_i = v_i is zero; orient pairs as stored (k, l) may have k >= l
    let mut sign_flip = false;
    let mut oriented = Vec::with_capacity(minors.len());
    for (k, l) in minors {
        if k == l {
            return BTreeMap::new();
        }
        if k < l {
            oriented.push((k, l));
        } else {
            sign_flip = !sign_flip;
            oriented.push((l, k));
        }
    }
    let mut poly = expand(&oriented, &BigradedMonomial { u, v: vec![0; n] }, None, p);
    if sign_flip {
        for c in poly.values_mut() {
            *c = p.neg(*c);
        }
    }
    poly
}

/// Largest monomial with a nonzero coefficient.
pub fn leading_term(poly: &Polynomial) -> Option<BigradedMonomial> {
    poly.keys().next_back().map(|k| BigradedMonomial::from_key(k))
}

/// Monomials `x^u y^v` with `u + v = m`, `|u| = a` and every exponent below
/// `cap`, in increasing key order.
fn block_monomials(m: &[u32], a: u32, cap: Option<u32>) -> Vec<BigradedMonomial> {
    fn go(m: &[u32], rest: u32, top: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == m.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = m[i].saturating_sub(top);
        let hi = m[i].min(top).min(rest);
        let room: u32 = m[i + 1..].iter().map(|&x| x.min(top)).sum();
        for x in lo..=hi {
            if rest - x > room {
                continue;
            }
            cur.push(x);
            go(m, rest - x, top, cur, out);
            cur.pop();
        }
    }
    let top = cap.map_or(u32::MAX, |q| q - 1);
    let mut us = Vec::new();
    go(m, a, top, &mut Vec::with_capacity(m.len()), &mut us);
    us.into_iter()
        .map(|u| {
            let v = m.iter().zip(&u).map(|(t, x)| t - x).collect();
            BigradedMonomial { u, v }
        })
        .collect()
}

/// Multisets of `i` pairs `k < l` (lexicographic) whose content stays within `m`.
fn minor_multisets(m: &[u32], i: usize) -> Vec<Vec<(usize, usize)>> {
    let n = m.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|k| (k + 1..n).map(move |l| (k, l))).collect();
    fn go(
        pairs: &[(usize, usize)],
        from: usize,
        left: usize,
        room: &mut Vec<u32>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for idx in from..pairs.len() {
            let (k, l) = pairs[idx];
            if room[k] == 0 || room[l] == 0 {
                continue;
            }
            room[k] -= 1;
            room[l] -= 1;
            cur.push((k, l));
            go(pairs, idx, left - 1, room, cur, out);
            cur.pop();
            room[k] += 1;
            room[l] += 1;
        }
    }
    let mut out = Vec::new();
    go(&pairs, 0, i, &mut m.to_vec(), &mut Vec::with_capacity(i), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SliceParams {
    pub n: usize,
    pub a: u32,
    pub b: u32,
    pub i: u32,
    pub truncated: bool,
    pub p: Prime,
}

impl SliceParams {
    pub fn cap(&self) -> Option<u32> {
        self.truncated.then(|| self.p.get())
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return domain("need n >= 2");
        }
        Ok(())
    }

    /// Multidegrees carrying a nonzero part of the ambient bidegree.
    pub fn multidegrees(&self) -> Vec<Vec<u32>> {
        let total = (self.a + self.b) as i64;
        let cap = self.cap().map(|q| 2 * (q as i64 - 1) + 1);
        bounded_compositions(total, self.n, cap)
            .into_iter()
            .map(|e| e.into_iter().map(|x| x as u32).collect())
            .collect()
    }
}

/// Canonical spanning set of block `m`.
pub fn block_generators(params: &SliceParams, m: &[u32]) -> Vec<Generator> {
    let SliceParams { a, b, i, .. } = *params;
    if i > a || i > b {
        return Vec::new();
    }
    let mut out = Vec::new();
    for minors in minor_multisets(m, i as usize) {
        let mut rest = m.to_vec();
        for &(k, l) in &minors {
            rest[k] -= 1;
            rest[l] -= 1;
        }
        for cofactor in block_monomials(&rest, a - i, params.cap()) {
            out.push(Generator {
                minors: minors.clone(),
                cofactor,
            });
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceBlock {
    pub multidegree: Vec<u32>,
    /// Column labels, increasing in the monomial order.
    pub monomials: Vec<BigradedMonomial>,
    /// One row per generator.
    #[serde(skip)]
    pub spanning: PrimeFieldMatrix,
    pub rank: usize,
}

impl SliceBlock {
    /// Leading monomials of the row space: pivots when columns are visited
    /// from the largest monomial down.
    pub fn leading_monomials(&self) -> Vec<BigradedMonomial> {
        let order: Vec<usize> = (0..self.monomials.len()).rev().collect();
        let (_, pivots) = self
            .spanning
            .rref_with_order(&order)
            .expect("reverse order is a permutation");
        pivots.into_iter().map(|c| self.monomials[c].clone()).collect()
    }
}

/// Builds block `m` from an explicit list of generators.
pub fn block_from_generators(params: &SliceParams, m: &[u32], generators: &[Generator]) -> Result<SliceBlock> {
    let monomials = block_monomials(m, params.a, params.cap());
    let index: HashMap<Vec<u32>, usize> = monomials.iter().enumerate().map(|(c, mono)| (mono.key(), c)).collect();
    let mut triplets = Vec::new();
    for (row, g) in generators.iter().enumerate() {
        for (key, c) in expand(&g.minors, &g.cofactor, params.cap(), params.p) {
            let Some(&col) = index.get(&key) else {
                return domain(format!(
                    "generator term {} lies outside block {m:?}",
                    BigradedMonomial::from_key(&key)
                ));
            };
            triplets.push((row, col, c));
        }
    }
    let spanning = PrimeFieldMatrix::from_triplets(params.p, generators.len(), monomials.len(), triplets)?;
    let rank = spanning.rank();
    Ok(SliceBlock {
        multidegree: m.to_vec(),
        monomials,
        spanning,
        rank,
    })
}

/// `(I^i)_{(a,b)}`, or its image in the Frobenius-truncated ring.
#[derive(Debug, Clone, Serialize)]
pub struct IdealPowerSlice {
    pub params: SliceParams,
    pub blocks: Vec<SliceBlock>,
}

impl IdealPowerSlice {
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank).sum()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.monomials.len()).sum()
    }

    pub fn block(&self, m: &[u32]) -> Option<&SliceBlock> {
        self.blocks.iter().find(|b| b.multidegree == m)
    }

    /// Character of the slice itself: `sum_m rank_m t^m`.
    pub fn character(&self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.params.n);
        for block in &self.blocks {
            let e = block.multidegree.iter().map(|&x| x as i32).collect();
            out.add_term(e, BigInt::from(block.rank));
        }
        out
    }
}

pub fn ideal_power_slice(params: SliceParams, exec: Exec) -> Result<IdealPowerSlice> {
    params.validate()?;
    let ms = params.multidegrees();
    let blocks: Vec<Result<SliceBlock>> = map_ordered(exec, &ms, |m| {
        block_from_generators(&params, m, &block_generators(&params, m))
    });
    Ok(IdealPowerSlice {
        params,
        blocks: blocks.into_iter().collect::<Result<_>>()?,
    })
}

/// Leading monomials of the whole slice, sorted.
pub fn leading_monomials(slice: &IdealPowerSlice) -> BTreeSet<BigradedMonomial> {
    slice.blocks.iter().flat_map(SliceBlock::leading_monomials).collect()
}

/// `[(I^i / I^{i+1})_{(a,b)}]`, classical or truncated.
pub fn filtration_character(params: SliceParams, exec: Exec) -> Result<LaurentPolynomial> {
    let here = ideal_power_slice(params, exec)?;
    let next = ideal_power_slice(SliceParams { i: params.i + 1, ..params }, exec)?;
    Ok(&here.character() - &next.character())
}

/// `[R̄_{(a,b)}] = h^{(p)}_a h^{(p)}_b`.
pub fn rbar_character(n: usize, a: i64, b: i64, p: Prime) -> LaurentPolynomial {
    &character::h_trunc(a, p.get(), n) * &character::h_trunc(b, p.get(), n)
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationRow {
    pub i: u32,
    pub computed: LaurentPolynomial,
    pub expected: LaurentPolynomial,
    pub agree: bool,
    /// First differing coefficient; `left` is the computed side.
    pub witness: Option<CoefficientWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IadicReport {
    pub n: usize,
    pub a: u32,
    pub b: u32,
    pub p: Prime,
    pub truncated: bool,
    /// `a - b >= p - 1`; always true for the classical comparison.
    pub within_hypothesis: bool,
    pub rows: Vec<FiltrationRow>,
}

impl IadicReport {
    pub fn agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

fn filtration_rows(n: usize, a: u32, b: u32, p: Prime, truncated: bool, exec: Exec) -> Result<Vec<FiltrationRow>> {
    let mut rows = Vec::new();
    for i in 0..=a.min(b) {
        let params = SliceParams {
            n,
            a,
            b,
            i,
            truncated,
            p,
        };
        let computed = filtration_character(params, exec)?;
        let (big, small) = ((a + b - i) as i64, i as i64);
        let expected = if truncated {
            character::schur2_trunc(big, small, p.get(), n)
        } else {
            character::schur2(big, small, n)
        };
        let witness = computed.first_difference(&expected);
        rows.push(FiltrationRow {
            i,
            agree: witness.is_none(),
            computed,
            expected,
            witness,
        });
    }
    Ok(rows)
}

/// Truncated filtration characters against `s^{(p)}_{(a+b-i,i)}`, `i = 0..=b`.
/// Runs outside the hypothesis too and says so.
pub fn check_iadic_conjecture(n: usize, a: u32, b: u32, p: Prime, exec: Exec) -> Result<IadicReport> {
    Ok(IadicReport {
        n,
        a,
        b,
        p,
        truncated: true,
        within_hypothesis: a as i64 - b as i64 >= p.as_u64() as i64 - 1,
        rows: filtration_rows(n, a, b, p, true, exec)?,
    })
}

/// Classical filtration characters against `s_{(a+b-i,i)}`, computed over `F_p`.
pub fn check_classical_filtration(n: usize, a: u32, b: u32, p: Prime, exec: Exec) -> Result<IadicReport> {
    Ok(IadicReport {
        n,
        a,
        b,
        p,
        truncated: false,
        within_hypothesis: true,
        rows: filtration_rows(n, a, b, p, false, exec)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LeadTermsReport {
    pub n: usize,
    pub a: u32,
    pub b: u32,
    pub p: Prime,
    pub truncated: bool,
    pub within_hypothesis: bool,
    pub tableaux: usize,
    pub pivots: usize,
    /// Tableau monomials that are not leading monomials of the slice.
    pub missing: Vec<BigradedMonomial>,
    /// Leading monomials not coming from a tableau.
    pub extra: Vec<BigradedMonomial>,
}

impl LeadTermsReport {
    pub fn contained(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn equal(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

fn lead_terms(n: usize, a: u32, b: u32, p: Prime, truncated: bool, exec: Exec) -> Result<LeadTermsReport> {
    if b > a {
        return domain(format!("need a >= b (a = {a}, b = {b})"));
    }
    let tabs = if truncated {
        enumerate_pssyt(n, a as usize, b as usize, p)?
    } else {
        enumerate_ssyt(n, a as usize, b as usize)?
    };
    let expected: BTreeSet<BigradedMonomial> = tabs.iter().map(|t| tableau_monomial(t, n)).collect();
    let slice = ideal_power_slice(
        SliceParams {
            n,
            a,
            b,
            i: b,
            truncated,
            p,
        },
        exec,
    )?;
    let pivots = leading_monomials(&slice);
    Ok(LeadTermsReport {
        n,
        a,
        b,
        p,
        truncated,
        within_hypothesis: !truncated || a as i64 - b as i64 >= p.as_u64() as i64 - 1,
        tableaux: tabs.len(),
        pivots: pivots.len(),
        missing: expected.difference(&pivots).cloned().collect(),
        extra: pivots.difference(&expected).cloned().collect(),
    })
}

/// Is every `M_T`, `T` `p`-semistandard, a leading monomial of `(Ī^b)_{(a,b)}`?
pub fn check_lead_terms(n: usize, a: u32, b: u32, p: Prime, exec: Exec) -> Result<LeadTermsReport> {
    lead_terms(n, a, b, p, true, exec)
}

/// Leading monomials of `(I^b)_{(a,b)}` against `{M_T : T semistandard}`.
pub fn check_classical_lead_terms(n: usize, a: u32, b: u32, p: Prime, exec: Exec) -> Result<LeadTermsReport> {
    lead_terms(n, a, b, p, false, exec)
}
