use crate::error::{domain, Result};

/// Base-`q` digits of `n`, least significant first; `[]` for `n = 0`.
pub fn base_digits(mut n: u64, q: u64) -> Result<Vec<u64>> {
    if q < 2 {
        return Err(domain(format!("base must be at least 2, got {q}")));
    }
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % q);
        n /= q;
    }
    Ok(out)
}

/// Number of occurrences of `digit` among the base-`q` digits of `n`.
pub fn count_digit(n: u64, q: u64, digit: u64) -> Result<usize> {
    if digit >= q {
        return Err(domain(format!("digit {digit} is not a base-{q} digit")));
    }
    Ok(base_digits(n, q)?.into_iter().filter(|&d| d == digit).count())
}

/// `(v, m)` with `n = q^v · m` and `q ∤ m`.
pub fn valuation(mut n: u64, q: u64) -> (u32, u64) {
    debug_assert!(n > 0 && q >= 2);
    let mut v = 0;
    while n.is_multiple_of(q) {
        n /= q;
        v += 1;
    }
    (v, n)
}
