use std::collections::BTreeMap;
use std::sync::Arc;

use super::distance::{ModulatedCharacter, MAX_T};
use crate::error::{domain, Result};
use crate::mulfun::CompletelyMultiplicativeFn;
use crate::numtheory::DirichletCharacter;
use crate::unit::Unit;

/// `g(n) = χ̃(n)·n^{it}·h(n)` with `χ̃(p) = χ(p)` and
/// `h(p) = g(p)·conj(χ(p))·p^{-it}` for `p ∤ q`, while `χ̃(p) = g(p)·p^{-it}`
/// and `h(p) = 1` for `p | q`.
#[derive(Debug, Clone)]
pub struct PretentiousFactorization {
    pub chi_tilde: CompletelyMultiplicativeFn,
    pub t: f64,
    pub h: CompletelyMultiplicativeFn,
}

impl PretentiousFactorization {
    /// `max_p |g(p) − χ̃(p)·p^{it}·h(p)|` over the table's primes.
    pub fn reconstruction_error(&self, g: &CompletelyMultiplicativeFn) -> Result<f64> {
        let mut worst = 0.0f64;
        for &p in self.h.primes().primes() {
            let rebuilt = self.chi_tilde.eval(p)?
                * ModulatedCharacter::twist(self.t, p)
                * self.h.eval(p)?;
            worst = worst.max((g.eval(p)? - rebuilt).norm());
        }
        Ok(worst)
    }
}

pub fn pretentious_factorize(
    g: &CompletelyMultiplicativeFn,
    chi: &DirichletCharacter,
    t: f64,
) -> Result<PretentiousFactorization> {
    if !t.is_finite() || t.abs() > MAX_T {
        return Err(domain(format!("|t| must be at most {MAX_T}")));
    }
    let primes: Arc<_> = g.primes().clone();
    let mut chi_tilde = BTreeMap::new();
    let mut h = BTreeMap::new();
    for &p in primes.primes() {
        let gp = g.prime_value(p)?;
        let untwist = Unit::Float(ModulatedCharacter::twist(-t, p));
        match chi.value(p) {
            Some(c) => {
                chi_tilde.insert(p, Unit::Root(c));
                let hp = if t == 0.0 {
                    gp * Unit::Root(c.conj())
                } else {
                    gp * Unit::Root(c.conj()) * untwist
                };
                h.insert(p, hp);
            }
            None => {
                let v = if t == 0.0 { gp } else { gp * untwist };
                chi_tilde.insert(p, v);
                h.insert(p, Unit::ONE);
            }
        }
    }
    Ok(PretentiousFactorization {
        chi_tilde: CompletelyMultiplicativeFn::from_prime_values(primes.clone(), chi_tilde, false)?,
        t,
        h: CompletelyMultiplicativeFn::from_prime_values(primes, h, false)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mulfun::{bcc, root};
    use crate::numtheory::{enumerate_characters, legendre_character, PrimeTable};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn model_case_has_trivial_h() {
        let t = Arc::new(PrimeTable::new(10_000));
        let g = bcc(t.clone());
        let f = pretentious_factorize(&g, &legendre_character(3).unwrap(), 0.0).unwrap();
        for &p in t.primes() {
            assert_eq!(f.h.prime_value(p).unwrap(), Unit::ONE);
        }
        assert_eq!(f.reconstruction_error(&g).unwrap(), 0.0);
    }

    #[test]
    fn constant_one_against_chi3() {
        let t = Arc::new(PrimeTable::new(1000));
        let g = CompletelyMultiplicativeFn::one(t.clone());
        let chi3 = legendre_character(3).unwrap();
        let f = pretentious_factorize(&g, &chi3, 0.0).unwrap();
        for &p in t.primes() {
            let expected = if p == 3 {
                Unit::ONE
            } else {
                Unit::Root(chi3.value(p).unwrap().conj())
            };
            assert_eq!(f.h.prime_value(p).unwrap(), expected);
        }
    }

    #[test]
    fn random_round_trip() {
        let t = Arc::new(PrimeTable::new(105_000));
        assert!(t.primes().len() >= 10_000);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let values = t
                .primes()
                .iter()
                .map(|&p| (p, Unit::from_angle(rng.gen_range(0.0..std::f64::consts::TAU))))
                .collect();
            let g = CompletelyMultiplicativeFn::from_prime_values(t.clone(), values, false).unwrap();
            let q = rng.gen_range(1..30u64);
            let chars = enumerate_characters(q).unwrap();
            let chi = &chars[rng.gen_range(0..chars.len())];
            let tt = rng.gen_range(-1000.0..1000.0);
            let f = pretentious_factorize(&g, chi, tt).unwrap();
            assert!(f.reconstruction_error(&g).unwrap() <= 1e-12);
            for &p in t.primes().iter().take(200) {
                if q % p == 0 {
                    assert_eq!(f.h.prime_value(p).unwrap(), Unit::ONE);
                } else {
                    assert_eq!(f.chi_tilde.prime_value(p).unwrap(), Unit::Root(chi.value(p).unwrap()));
                }
            }
        }
        let g = CompletelyMultiplicativeFn::from_prime_values(
            t.clone(),
            BTreeMap::from([(2, root(1, 3))]),
            true,
        )
        .unwrap();
        assert!(pretentious_factorize(&g, &legendre_character(3).unwrap(), 2e6).is_err());
    }
}
