use num_complex::Complex64;

use super::distance::PrimeFunction;
use crate::error::{domain, Result};
use crate::numtheory::PrimeTable;
use crate::sum::{ComplexKahanSum, KahanSum};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `∑_{p ≤ X} 1/p`.
pub fn mertens_sum(primes: &PrimeTable, x: f64) -> Result<f64> {
    if x >= (primes.limit() + 1) as f64 {
        return Err(domain(format!("X = {x} exceeds the prime table")));
    }
    let acc: KahanSum = primes.primes_up_to(x).iter().map(|&p| 1.0 / p as f64).collect();
    Ok(acc.value())
}

/// `∏_{p ≤ P} (1 − h(p)/p^s)^{-1}` with `s = 1 + 1/log X`, accumulated as a
/// compensated sum of logarithms.
pub fn singular_series(
    h: &dyn PrimeFunction,
    primes: &PrimeTable,
    x: f64,
    truncation: f64,
) -> Result<Complex64> {
    if x <= 1.0 {
        return Err(domain("X must exceed 1"));
    }
    if truncation < 2.0 {
        return Err(domain("truncation bound must be at least 2"));
    }
    if truncation >= (primes.limit() + 1) as f64 {
        return Err(domain(format!("P = {truncation} exceeds the prime table")));
    }
    let s = 1.0 + 1.0 / x.ln();
    let mut log_sum = ComplexKahanSum::new();
    for &p in primes.primes_up_to(truncation) {
        let hp = h.at_prime(p)?;
        if hp.norm() > 1.0 + 1e-9 {
            return Err(domain(format!("|h({p})| exceeds 1")));
        }
        let factor = Complex64::new(1.0, 0.0) - hp * (p as f64).powf(-s);
        assert!(factor.norm() > 0.0, "Euler factor vanished at p = {p}");
        log_sum.add(-factor.ln());
    }
    Ok(log_sum.value().exp())
}

/// `E₁(x) = ∫_x^∞ e^{-t}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 needs a positive argument");
    if x <= 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        -EULER_GAMMA - x.ln() + sum
    } else {
        // Modified Lentz evaluation of the continued fraction.
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Estimate of `∏_{p > P} (1 − p^{-s})^{-1}`, `s = 1 + 1/log X`, from the
/// prime number theorem: `log ∏ ≈ ∑_{p > P} p^{-s} ≈ ∫_P^∞ t^{-s}/log t dt
/// = E₁((s − 1) log P)`.
pub fn prime_tail_factor(x: f64, truncation: f64) -> f64 {
    let s = 1.0 + 1.0 / x.ln();
    exp_integral_e1((s - 1.0) * truncation.ln()).exp()
}

/// [`singular_series`] times [`prime_tail_factor`]: the full Euler product
/// when `h(p) = 1` for every `p > P`.
pub fn singular_series_completed(
    h: &dyn PrimeFunction,
    primes: &PrimeTable,
    x: f64,
    truncation: f64,
) -> Result<Complex64> {
    Ok(singular_series(h, primes, x, truncation)? * prime_tail_factor(x, truncation))
}
