use crate::error::{domain, Result};
use crate::linalg::Prime;

/// Position of `m` in the list `0, 1, p, p+1, 2p, 2p+1, ...`.
pub fn p_index(m: u64, p: Prime) -> Result<u64> {
    let q = p.as_u64();
    let (a, b) = (m / q, m % q);
    if b > 1 {
        return domain(format!("{m} is not congruent to 0 or 1 mod {q}"));
    }
    Ok(2 * a + b)
}

/// Sum of the p-indices of the entries of `alpha`.
pub fn tuple_p_index(alpha: &[u64], p: Prime) -> Result<u64> {
    alpha.iter().map(|&a| p_index(a, p)).sum()
}

/// All tuples `(a_0, ..., a_k)` with `sum a_i p^i = d` and every `a_i`
/// congruent to 0 or 1 mod p. Trailing zeros are stripped; the result is
/// sorted lexicographically.
pub fn enumerate_a(p: Prime, d: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_a(p.as_u64(), d, &mut prefix, &mut out);
    out.sort();
    out
}

fn extend_a(q: u64, rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rest == 0 {
        let mut t = prefix.clone();
        while t.last() == Some(&0) {
            t.pop();
        }
        out.push(t);
        return;
    }
    // the digit must match rest mod q and itself be 0 or 1 mod q
    let r = rest % q;
    if r > 1 {
        return;
    }
    let mut digit = r;
    while digit <= rest {
        prefix.push(digit);
        extend_a(q, (rest - digit) / q, prefix, out);
        prefix.pop();
        digit += q;
    }
}

pub fn nim_sum(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| acc ^ v)
}
