use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::mulfun::{CompletelyMultiplicativeFn, MultiplicativeFn};
use crate::numtheory::{DirichletCharacter, PrimeTable};
use crate::sum::KahanSum;

/// Largest modulation exponent `|t|` accepted.
pub const MAX_T: f64 = 1e6;

/// A function known at primes, with `|value| ≤ 1`.
pub trait PrimeFunction {
    fn at_prime(&self, p: u64) -> Result<Complex64>;
}

impl PrimeFunction for CompletelyMultiplicativeFn {
    fn at_prime(&self, p: u64) -> Result<Complex64> {
        self.prime_value(p).map(|u| u.to_complex())
    }
}

impl PrimeFunction for MultiplicativeFn {
    fn at_prime(&self, p: u64) -> Result<Complex64> {
        self.prime_power_value(p, 1).map(|u| u.to_complex())
    }
}

impl PrimeFunction for DirichletCharacter {
    fn at_prime(&self, p: u64) -> Result<Complex64> {
        Ok(self.eval(p))
    }
}

/// Adapter for closures `p ↦ value`.
pub struct PrimeFn<F>(pub F);

impl<F: Fn(u64) -> Complex64> PrimeFunction for PrimeFn<F> {
    fn at_prime(&self, p: u64) -> Result<Complex64> {
        Ok((self.0)(p))
    }
}

/// `n ↦ χ(n)·n^{it}`.
#[derive(Debug, Clone)]
pub struct ModulatedCharacter {
    chi: DirichletCharacter,
    t: f64,
}

impl ModulatedCharacter {
    pub fn new(chi: DirichletCharacter, t: f64) -> Result<Self> {
        if !t.is_finite() || t.abs() > MAX_T {
            return Err(domain(format!("|t| must be at most {MAX_T}")));
        }
        Ok(ModulatedCharacter { chi, t })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `n^{it} = exp(i·t·ln n)`.
    pub fn twist(t: f64, n: u64) -> Complex64 {
        Complex64::from_polar(1.0, t * (n as f64).ln())
    }
}

impl PrimeFunction for ModulatedCharacter {
    fn at_prime(&self, p: u64) -> Result<Complex64> {
        Ok(self.chi.eval(p) * Self::twist(self.t, p))
    }
}

fn bounded(z: Complex64, p: u64) -> Result<Complex64> {
    if z.norm() > 1.0 + 1e-9 {
        return Err(domain(format!("value at prime {p} has modulus {} > 1", z.norm())));
    }
    Ok(z)
}

/// `∑_{p ≤ X} (1 − Re g1(p)·conj(g2(p)))/p`, summed in ascending order with
/// compensation. Returns 0 for `X < 2`.
pub fn pretentious_dist_sq(
    g1: &dyn PrimeFunction,
    g2: &dyn PrimeFunction,
    primes: &PrimeTable,
    x: f64,
) -> Result<f64> {
    if x >= (primes.limit() + 1) as f64 {
        return Err(domain(format!("X = {x} exceeds the prime table")));
    }
    let mut acc = KahanSum::new();
    for &p in primes.primes_up_to(x) {
        let a = bounded(g1.at_prime(p)?, p)?;
        let b = bounded(g2.at_prime(p)?, p)?;
        acc.add((1.0 - (a * b.conj()).re) / p as f64);
    }
    Ok(acc.value().max(0.0))
}

pub fn pretentious_dist(
    g1: &dyn PrimeFunction,
    g2: &dyn PrimeFunction,
    primes: &PrimeTable,
    x: f64,
) -> Result<f64> {
    pretentious_dist_sq(g1, g2, primes, x).map(f64::sqrt)
}

/// `D(f,h) − D(f,g) − D(g,h)`; non-positive up to rounding.
pub fn triangle_check(
    f: &dyn PrimeFunction,
    g: &dyn PrimeFunction,
    h: &dyn PrimeFunction,
    primes: &PrimeTable,
    x: f64,
) -> Result<f64> {
    Ok(pretentious_dist(f, h, primes, x)?
        - pretentious_dist(f, g, primes, x)?
        - pretentious_dist(g, h, primes, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mulfun::bcc;
    use crate::numtheory::legendre_character;
    use crate::pretentious::mertens_sum;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn identical_functions_have_zero_distance() {
        let t = Arc::new(PrimeTable::new(10_000));
        let f = bcc(t.clone());
        assert_eq!(pretentious_dist_sq(&f, &f, &t, 10_000.0).unwrap(), 0.0);
    }

    #[test]
    fn bcc_versus_character() {
        let t = Arc::new(PrimeTable::new(100_000));
        let f = bcc(t.clone());
        let chi3 = legendre_character(3).unwrap();
        for x in [3.0, 10.0, 1000.0, 100_000.0] {
            assert_eq!(pretentious_dist_sq(&f, &chi3, &t, x).unwrap(), 1.0 / 3.0);
        }
        assert_eq!(pretentious_dist_sq(&f, &chi3, &t, 2.5).unwrap(), 0.0);
        assert_eq!(pretentious_dist_sq(&f, &chi3, &t, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn opposite_signs_give_twice_mertens() {
        let t = PrimeTable::new(1_000_000);
        let one = PrimeFn(|_| Complex64::new(1.0, 0.0));
        let minus = PrimeFn(|_| Complex64::new(-1.0, 0.0));
        let d = pretentious_dist_sq(&one, &minus, &t, 1e6).unwrap();
        assert!((d - 2.0 * mertens_sum(&t, 1e6).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_and_triangle() {
        let t = PrimeTable::new(10_000);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let tables: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..=10_000).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect())
                .collect();
            let fs: Vec<_> = tables
                .iter()
                .map(|a| PrimeFn(move |p: u64| Complex64::from_polar(1.0, a[p as usize])))
                .collect();
            let ab = pretentious_dist_sq(&fs[0], &fs[1], &t, 1e4).unwrap();
            let ba = pretentious_dist_sq(&fs[1], &fs[0], &t, 1e4).unwrap();
            assert!((ab - ba).abs() < 1e-12 && ab >= 0.0);
            assert!(triangle_check(&fs[0], &fs[1], &fs[2], &t, 1e4).unwrap() <= 1e-9);
        }
        let one = PrimeFn(|_| Complex64::new(1.0, 0.0));
        let minus = PrimeFn(|_| Complex64::new(-1.0, 0.0));
        let lifted = bcc(Arc::new(PrimeTable::new(10_000)));
        assert!(triangle_check(&one, &lifted, &minus, &t, 1e4).unwrap() <= 0.0);
        assert_eq!(triangle_check(&one, &one, &one, &t, 1e4).unwrap(), 0.0);
    }

    #[test]
    fn rejects_oversized_values_and_t() {
        let t = PrimeTable::new(100);
        let big = PrimeFn(|_| Complex64::new(2.0, 0.0));
        let one = PrimeFn(|_| Complex64::new(1.0, 0.0));
        assert!(pretentious_dist_sq(&big, &one, &t, 50.0).is_err());
        assert!(pretentious_dist_sq(&one, &one, &t, 500.0).is_err());
        assert!(ModulatedCharacter::new(legendre_character(3).unwrap(), 2e6).is_err());
    }

    #[test]
    fn modulated_character_values() {
        let m = ModulatedCharacter::new(legendre_character(3).unwrap(), 2.0).unwrap();
        let v = m.at_prime(5).unwrap();
        assert!((v - (-Complex64::from_polar(1.0, 2.0 * 5f64.ln()))).norm() < 1e-15);
        assert_eq!(m.at_prime(3).unwrap(), Complex64::new(0.0, 0.0));
    }
}
