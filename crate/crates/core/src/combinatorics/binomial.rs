//! Binomial coefficients: exact (arbitrary precision, generalized to negative
//! upper index) and modulo a prime via Lucas' theorem.

use num_bigint::BigInt;
use num_traits::One;

use crate::linalg::Prime;

/// Exact `C(m, k)` for `m >= 0`; zero when `k > m`.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::from(0);
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial `m(m-1)...(m-k+1)/k!` for any integer `m`.
pub fn generalized_binomial(m: i64, k: u64) -> BigInt {
    if m >= 0 {
        return binomial(m as u64, k);
    }
    // C(-a, k) = (-1)^k C(a + k - 1, k)
    let a = m.unsigned_abs();
    let magnitude = binomial(a + k - 1, k);
    if k.is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

fn small_binomial_mod(m: u64, k: u64, p: Prime) -> u32 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let (mut num, mut den) = (1u32, 1u32);
    for i in 0..k {
        num = p.mul(num, p.reduce((m - i) as i64));
        den = p.mul(den, p.reduce((i + 1) as i64));
    }
    p.mul(num, p.inv(den))
}

fn lucas(mut m: u64, mut k: u64, p: Prime) -> u32 {
    let q = p.as_u64();
    let mut acc = 1u32;
    while k > 0 {
        let (mi, ki) = (m % q, k % q);
        if ki > mi {
            return 0;
        }
        acc = p.mul(acc, small_binomial_mod(mi, ki, p));
        m /= q;
        k /= q;
    }
    acc
}

/// `C(m, k) mod p` for any integer `m`, using the generalized binomial when
/// `m < 0`.
pub fn binom_mod_p(m: i64, k: u64, p: Prime) -> u32 {
    if m >= 0 {
        return lucas(m as u64, k, p);
    }
    let a = m.unsigned_abs();
    let v = lucas(a + k - 1, k, p);
    if k.is_multiple_of(2) {
        v
    } else {
        p.neg(v)
    }
}
