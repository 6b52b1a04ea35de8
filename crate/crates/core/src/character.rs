//! The torus character ring `Z[t_1^{±1}, ..., t_n^{±1}]`.
//!
//! Polynomials carry their variable count `n`; arithmetic between different
//! `n` is an error rather than a silent coercion. By convention `h_d = 0`
//! for `d < 0`, which makes `s_{(a,b)}` well defined for any integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::combinatorics::nim_sum;
use crate::error::{Error, Result};

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    n: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(n: usize) -> Self {
        LaurentPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], 1)
    }

    pub fn monomial(exponents: Exponents, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff.into());
        p
    }

    /// `t_i` with `i` counted from 0.
    pub fn variable(i: usize, n: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::VariableCount {
                    left: n,
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exponents: Exponents, coeff: BigInt) {
        debug_assert_eq!(exponents.len(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[i32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableCount {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut acc: std::collections::HashMap<Exponents, BigInt> = Default::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        Ok(LaurentPolynomial {
            n: self.n,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i32]) -> Result<Self> {
        if shift.len() != self.n {
            return Err(Error::VariableCount {
                left: self.n,
                right: shift.len(),
            });
        }
        Ok(LaurentPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        })
    }

    /// The Frobenius endomorphism `t_i -> t_i^q`.
    pub fn frobenius(&self, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("Frobenius exponent must be at least 1".into()));
        }
        Ok(LaurentPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * q as i32).collect(), c.clone()))
                .collect(),
        })
    }

    /// Value at `t_1 = ... = t_n = 1`.
    pub fn dim_eval(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Invariance under permuting the variables: every term's coefficient
    /// equals that of each of its sorted-exponent orbit mates.
    pub fn is_symmetric(&self) -> bool {
        let mut orbit_coeff: BTreeMap<Exponents, (&BigInt, usize)> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key.sort_unstable();
            match orbit_coeff.get_mut(&key) {
                Some((c0, count)) => {
                    if *c0 != c {
                        return false;
                    }
                    *count += 1;
                }
                None => {
                    orbit_coeff.insert(key, (c, 1));
                }
            }
        }
        orbit_coeff
            .iter()
            .all(|(key, &(_, count))| count == orbit_size(key))
    }

    /// First exponent (canonical order) where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<CoefficientWitness> {
        let mut keys: Vec<&Exponents> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|e| {
            let (a, b) = (self.coeff(e), other.coeff(e));
            (a != b).then(|| CoefficientWitness {
                exponents: e.clone(),
                left: a,
                right: b,
            })
        })
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

fn orbit_size(sorted: &[i32]) -> usize {
    let mut size: u128 = (1..=sorted.len() as u128).product();
    let mut i = 0;
    while i < sorted.len() {
        let run = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
        size /= (1..=run as u128).product::<u128>();
        i += run;
    }
    size as usize
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$inner(rhs).expect("polynomials over the same torus")
            }
        }
        impl $trait for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$inner(&rhs).expect("polynomials over the same torus")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest terms first reads more naturally
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial[n={}]({})", self.n, self)
    }
}

/// A coefficient serialized as a JSON integer when it fits in `i64`, else as
/// a decimal string.
pub struct JsonInteger<'a>(pub &'a BigInt);

impl Serialize for JsonInteger<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// A monomial where two characters disagree, with both coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientWitness {
    pub exponents: Exponents,
    pub left: BigInt,
    pub right: BigInt,
}

impl Serialize for CoefficientWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CoefficientWitness", 3)?;
        st.serialize_field("exponents", &self.exponents)?;
        st.serialize_field("left", &JsonInteger(&self.left))?;
        st.serialize_field("right", &JsonInteger(&self.right))?;
        st.end()
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    exponents: &'a [i32],
    coeff: JsonInteger<'a>,
}

/// Serialized as the canonical list of `{exponents, coeff}` records.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&TermRecord {
                exponents: e,
                coeff: JsonInteger(c),
            })?;
        }
        seq.end()
    }
}

/// Compositions of `total` into `n` parts with each part below `cap`.
pub(crate) fn bounded_compositions(total: i64, n: usize, cap: Option<i64>) -> Vec<Exponents> {
    fn go(rest: i64, slots: usize, cap: i64, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if slots == 1 {
            if rest < cap {
                cur.push(rest as i32);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for x in 0..=rest.min(cap - 1) {
            // remaining slots must be able to absorb rest - x
            if rest - x > (slots as i64 - 1) * (cap - 1) {
                continue;
            }
            cur.push(x as i32);
            go(rest - x, slots - 1, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total < 0 || n == 0 {
        if total == 0 && n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let cap = cap.unwrap_or(total + 1);
    if cap <= 0 {
        return out;
    }
    go(total, n, cap, &mut Vec::with_capacity(n), &mut out);
    out
}

fn sum_of_monomials(n: usize, monomials: Vec<Exponents>) -> LaurentPolynomial {
    LaurentPolynomial {
        n,
        terms: monomials.into_iter().map(|e| (e, BigInt::one())).collect(),
    }
}

/// Complete symmetric polynomial `h_d` in `n` variables; zero for `d < 0`.
pub fn h(d: i64, n: usize) -> LaurentPolynomial {
    sum_of_monomials(n, bounded_compositions(d, n, None))
}

/// `q`-truncated complete symmetric polynomial: every exponent below `q`.
pub fn h_trunc(d: i64, q: u32, n: usize) -> LaurentPolynomial {
    sum_of_monomials(n, bounded_compositions(d, n, Some(q as i64)))
}

/// `s_{(a,b)} = h_a h_b - h_{a+1} h_{b-1}`.
pub fn schur2(a: i64, b: i64, n: usize) -> LaurentPolynomial {
    &(&h(a, n) * &h(b, n)) - &(&h(a + 1, n) * &h(b - 1, n))
}

/// `s^{(q)}_{(a,b)} = h^{(q)}_a h^{(q)}_b - h^{(q)}_{a+1} h^{(q)}_{b-1}`.
pub fn schur2_trunc(a: i64, b: i64, q: u32, n: usize) -> LaurentPolynomial {
    &(&h_trunc(a, q, n) * &h_trunc(b, q, n)) - &(&h_trunc(a + 1, q, n) * &h_trunc(b - 1, q, n))
}

/// Elementary symmetric polynomial `e_k`.
pub fn elementary(k: i64, n: usize) -> LaurentPolynomial {
    h_trunc(k, 2, n)
}

/// Nim polynomial: monomials of degree `2m` whose exponents nim-sum to zero.
pub fn nim_poly(m: u64, n: usize) -> LaurentPolynomial {
    let monomials = bounded_compositions(2 * m as i64, n, None)
        .into_iter()
        .filter(|e| {
            let vals: Vec<u64> = e.iter().map(|&x| x as u64).collect();
            nim_sum(&vals) == 0
        })
        .collect();
    sum_of_monomials(n, monomials)
}

/// `t_1 t_2 ... t_n`.
pub fn top_monomial(n: usize) -> LaurentPolynomial {
    LaurentPolynomial::monomial(vec![1; n], 1)
}
