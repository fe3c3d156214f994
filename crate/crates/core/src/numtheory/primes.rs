use crate::error::{Error, Result};

/// Primes up to `limit` with a smallest-prime-factor table for fast
/// factorisation of every `n ≤ limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Linear sieve. `limit` must fit the `u32` factor table.
    pub fn new(limit: u64) -> Self {
        assert!(limit < u32::MAX as u64, "prime table limit too large");
        let size = limit as usize + 1;
        let mut spf = vec![0u32; size];
        let mut primes = Vec::new();
        for i in 2..size {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                let ip = i as u64 * p;
                if p > si || ip > limit {
                    break;
                }
                spf[ip as usize] = p as u32;
            }
        }
        if size > 1 {
            spf[1] = 1;
        }
        PrimeTable { limit, spf, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes `≤ limit`, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `≤ x` (clamped to the table).
    pub fn primes_up_to(&self, x: f64) -> &[u64] {
        if x < 2.0 {
            return &[];
        }
        let bound = if x >= self.limit as f64 {
            self.limit
        } else {
            x.floor() as u64
        };
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            n >= 2 && self.spf[n as usize] as u64 == n
        } else {
            factorize_u64(n).as_slice() == [(n, 1)]
        }
    }

    /// Smallest prime factor of `2 ≤ n ≤ limit`.
    pub fn smallest_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit {
            return None;
        }
        Some(self.spf[n as usize] as u64)
    }

    /// Prime factorisation `[(p, e)]`, ascending in `p`. Numbers above the
    /// limit are trial-divided by the table's primes and rejected if a
    /// prime factor above the limit remains.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(crate::error::domain("cannot factorize 0"));
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        if n <= self.limit {
            let mut m = n;
            while m > 1 {
                let p = self.spf[m as usize] as u64;
                let mut e = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            return Ok(out);
        }
        let mut m = n;
        for &p in &self.primes {
            if p * p > m {
                break;
            }
            if m.is_multiple_of(p) {
                let mut e = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            if m <= self.limit {
                let mut rest = self.factorize(m)?;
                out.append(&mut rest);
                return Ok(out);
            }
        }
        if m > self.limit {
            return Err(Error::BeyondTable {
                n,
                limit: self.limit,
            });
        }
        if m > 1 {
            out.push((m, 1));
        }
        Ok(out)
    }
}

/// Trial-division factorisation, ascending.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_naive(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn sieve_lists_exactly_the_primes() {
        let table = PrimeTable::new(10_000);
        let naive: Vec<u64> = (0..=10_000).filter(|&n| is_prime_naive(n)).collect();
        assert_eq!(table.primes(), naive.as_slice());
        assert!(table.primes().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn factorization_reconstructs() {
        let table = PrimeTable::new(100_000);
        for n in 1..=100_000u64 {
            let f = table.factorize(n).unwrap();
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| table.is_prime(p)));
        }
    }

    #[test]
    fn factorization_beyond_limit() {
        let table = PrimeTable::new(100);
        assert_eq!(table.factorize(2 * 97 * 97).unwrap(), vec![(2, 1), (97, 2)]);
        assert_eq!(table.factorize(1 << 40).unwrap(), vec![(2, 40)]);
        assert!(matches!(
            table.factorize(2 * 101),
            Err(Error::BeyondTable { .. })
        ));
        assert!(table.factorize(0).is_err());
    }

    #[test]
    fn primes_up_to_clamps() {
        let table = PrimeTable::new(30);
        assert_eq!(table.primes_up_to(10.5), &[2, 3, 5, 7]);
        assert_eq!(table.primes_up_to(1.0), &[] as &[u64]);
        assert_eq!(table.primes_up_to(1e9).len(), 10);
    }

    #[test]
    fn trial_division() {
        assert_eq!(factorize_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize_u64(1), vec![]);
        assert_eq!(factorize_u64(1_000_003), vec![(1_000_003, 1)]);
    }
}
