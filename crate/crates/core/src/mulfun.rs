//! Completely multiplicative and multiplicative unit-valued functions, and
//! the named constructions built from them: character lifts such as the
//! Borwein-Choi-Coons function, the random ternary model with random values
//! at powers of 3, the `χ₂·h` family with bounded partial sums, and the
//! factorial-alternating sequence.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discrepancy::SeqWindow;
use crate::error::{domain, Error, Result};
use crate::numtheory::{
    character_interval_sum, legendre_character, valuation, DirichletCharacter, PrimeTable,
};
use crate::unit::{RootOfUnity, Unit};

/// Default prime-table size for constructions.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone)]
enum PrimeValues {
    Table {
        values: BTreeMap<u64, Unit>,
        default_one: bool,
    },
    Lifted {
        chi: DirichletCharacter,
        fill: BTreeMap<u64, Unit>,
    },
}

/// A completely multiplicative function `ℕ → S¹`, determined by its values
/// at the primes of a [`PrimeTable`].
#[derive(Debug, Clone)]
pub struct CompletelyMultiplicativeFn {
    primes: Arc<PrimeTable>,
    values: PrimeValues,
}

impl CompletelyMultiplicativeFn {
    /// Values given at finitely many primes. With `default_one`, every other
    /// prime maps to 1; without it, evaluating at an unassigned prime fails.
    pub fn from_prime_values(
        primes: Arc<PrimeTable>,
        values: BTreeMap<u64, Unit>,
        default_one: bool,
    ) -> Result<Self> {
        for (&p, u) in &values {
            if !primes.is_prime(p) {
                return Err(domain(format!("{p} is not prime")));
            }
            check_unit(u)?;
        }
        Ok(CompletelyMultiplicativeFn {
            primes,
            values: PrimeValues::Table {
                values,
                default_one,
            },
        })
    }

    /// The constant function 1.
    pub fn one(primes: Arc<PrimeTable>) -> Self {
        CompletelyMultiplicativeFn {
            primes,
            values: PrimeValues::Table {
                values: BTreeMap::new(),
                default_one: true,
            },
        }
    }

    /// `±1` values at every prime `≤ bound`, chosen by `sign`.
    pub fn from_signs(
        primes: Arc<PrimeTable>,
        bound: u64,
        mut sign: impl FnMut(u64) -> i8,
    ) -> Self {
        let values = primes
            .primes()
            .iter()
            .take_while(|&&p| p <= bound)
            .map(|&p| (p, Unit::from_sign(sign(p))))
            .collect();
        CompletelyMultiplicativeFn {
            primes,
            values: PrimeValues::Table {
                values,
                default_one: false,
            },
        }
    }

    pub fn primes(&self) -> &Arc<PrimeTable> {
        &self.primes
    }

    pub fn limit(&self) -> u64 {
        self.primes.limit()
    }

    pub fn prime_value(&self, p: u64) -> Result<Unit> {
        match &self.values {
            PrimeValues::Table {
                values,
                default_one,
            } => match values.get(&p) {
                Some(u) => Ok(*u),
                None if *default_one => Ok(Unit::ONE),
                None => Err(Error::Unassigned { n: p, prime: p }),
            },
            PrimeValues::Lifted { chi, fill } => match chi.value(p) {
                Some(r) => Ok(Unit::Root(r)),
                None => fill
                    .get(&p)
                    .copied()
                    .ok_or(Error::Unassigned { n: p, prime: p }),
            },
        }
    }

    pub fn eval_unit(&self, n: u64) -> Result<Unit> {
        let mut acc = Unit::ONE;
        for (p, e) in self.primes.factorize(n)? {
            let u = self.prime_value(p).map_err(|_| Error::Unassigned { n, prime: p })?;
            acc = acc * u.pow(e);
        }
        Ok(acc)
    }

    pub fn eval(&self, n: u64) -> Result<Complex64> {
        self.eval_unit(n).map(Unit::to_complex)
    }

    /// `f(1), …, f(n)` by a sieve over smallest prime factors.
    pub fn materialize_units(&self, n: u64) -> Result<Vec<Unit>> {
        if n > self.primes.limit() {
            return Err(Error::BeyondTable {
                n,
                limit: self.primes.limit(),
            });
        }
        let mut out = Vec::with_capacity(n as usize);
        if n == 0 {
            return Ok(out);
        }
        out.push(Unit::ONE);
        for m in 2..=n {
            let p = self.primes.smallest_factor(m).expect("within table");
            let v = if p == m {
                self.prime_value(p)
                    .map_err(|_| Error::Unassigned { n: m, prime: p })?
            } else {
                out[(p - 1) as usize] * out[(m / p - 1) as usize]
            };
            out.push(v);
        }
        Ok(out)
    }

    pub fn materialize(&self, n: u64) -> Result<SeqWindow> {
        let units = self.materialize_units(n)?;
        Ok(SeqWindow::from_units(&units))
    }
}

fn check_unit(u: &Unit) -> Result<()> {
    let r = u.to_complex().norm();
    if (r - 1.0).abs() > 1e-9 {
        return Err(domain(format!("value of modulus {r} is not on the unit circle")));
    }
    Ok(())
}

/// The completely multiplicative function agreeing with `chi` at primes not
/// dividing its modulus and with `fill` at the primes that do.
pub fn lift_character(
    chi: &DirichletCharacter,
    fill: &BTreeMap<u64, Unit>,
    primes: Arc<PrimeTable>,
) -> Result<CompletelyMultiplicativeFn> {
    let q = chi.modulus();
    for (p, _) in crate::numtheory::factorize_u64(q) {
        match fill.get(&p) {
            Some(u) => check_unit(u)?,
            None => return Err(domain(format!("no fill value for prime {p} dividing {q}"))),
        }
    }
    Ok(CompletelyMultiplicativeFn {
        primes,
        values: PrimeValues::Lifted {
            chi: chi.clone(),
            fill: fill.clone(),
        },
    })
}

/// `χ̃_p`: the Legendre character mod the odd prime `p`, set to `value_at_p` at `p`.
pub fn lifted_legendre(
    p: u64,
    value_at_p: i8,
    primes: Arc<PrimeTable>,
) -> Result<CompletelyMultiplicativeFn> {
    let chi = legendre_character(p)?;
    let fill = BTreeMap::from([(p, Unit::from_sign(value_at_p))]);
    lift_character(&chi, &fill, primes)
}

/// The Borwein-Choi-Coons function `χ̃₃`, with `χ̃₃(3) = +1`.
pub fn bcc(primes: Arc<PrimeTable>) -> CompletelyMultiplicativeFn {
    lifted_legendre(3, 1, primes).expect("3 is an odd prime")
}

/// A multiplicative function `ℕ → S¹`. The value at `p^j` is, in order of
/// precedence: an explicit override for `(p, j)`, a per-prime constant for
/// all `j ≥ 1`, or `base(p)^j`.
#[derive(Debug, Clone)]
pub struct MultiplicativeFn {
    base: CompletelyMultiplicativeFn,
    per_prime: BTreeMap<u64, Unit>,
    overrides: BTreeMap<(u64, u32), Unit>,
}

impl MultiplicativeFn {
    pub fn new(
        base: CompletelyMultiplicativeFn,
        per_prime: BTreeMap<u64, Unit>,
        overrides: BTreeMap<(u64, u32), Unit>,
    ) -> Result<Self> {
        for (&p, u) in &per_prime {
            if !base.primes.is_prime(p) {
                return Err(domain(format!("{p} is not prime")));
            }
            check_unit(u)?;
        }
        for (&(p, j), u) in &overrides {
            if !base.primes.is_prime(p) || j == 0 {
                return Err(domain(format!("({p}, {j}) is not a prime power index")));
            }
            check_unit(u)?;
        }
        Ok(MultiplicativeFn {
            base,
            per_prime,
            overrides,
        })
    }

    pub fn prime_power_value(&self, p: u64, j: u32) -> Result<Unit> {
        if j == 0 {
            return Ok(Unit::ONE);
        }
        if let Some(u) = self.overrides.get(&(p, j)) {
            return Ok(*u);
        }
        if let Some(u) = self.per_prime.get(&p) {
            return Ok(*u);
        }
        Ok(self.base.prime_value(p)?.pow(j))
    }

    pub fn eval_unit(&self, n: u64) -> Result<Unit> {
        let mut acc = Unit::ONE;
        for (p, e) in self.base.primes.factorize(n)? {
            let u = self
                .prime_power_value(p, e)
                .map_err(|_| Error::Unassigned { n, prime: p })?;
            acc = acc * u;
        }
        Ok(acc)
    }

    pub fn eval(&self, n: u64) -> Result<Complex64> {
        self.eval_unit(n).map(Unit::to_complex)
    }

    pub fn materialize(&self, n: u64) -> Result<SeqWindow> {
        let units = (1..=n).map(|m| self.eval_unit(m)).collect::<Result<Vec<_>>>()?;
        Ok(SeqWindow::from_units(&units))
    }
}

/// A member `f = χ₂·h` of the family of periodic mean-zero multiplicative
/// functions, where `χ₂(n) = -1` for even `n` and `+1` for odd `n`.
#[derive(Debug, Clone)]
pub struct Chi2Family {
    pub f: MultiplicativeFn,
    /// A period of `f`: `2·∏ p^(J_p + 1)` over the odd primes `p` whose
    /// highest overridden exponent is `J_p`.
    pub period: u64,
}

/// Builds `χ₂·h` from finitely many values `h(p^j) = ±1`; unlisted prime
/// powers have `h = 1`. Overrides at powers of 2 are rejected.
pub fn chi2_family(
    h_overrides: &BTreeMap<(u64, u32), i8>,
    primes: Arc<PrimeTable>,
) -> Result<Chi2Family> {
    let mut overrides = BTreeMap::new();
    let mut top: BTreeMap<u64, u32> = BTreeMap::new();
    for (&(p, j), &s) in h_overrides {
        if p == 2 {
            return Err(domain("h must equal 1 at every power of 2"));
        }
        if s != 1 && s != -1 {
            return Err(Error::NotSign(s.to_string()));
        }
        overrides.insert((p, j), Unit::from_sign(s));
        let e = top.entry(p).or_insert(0);
        *e = (*e).max(j);
    }
    let per_prime = BTreeMap::from([(2, Unit::MINUS_ONE)]);
    let base = CompletelyMultiplicativeFn::one(primes);
    let f = MultiplicativeFn::new(base, per_prime, overrides)?;
    let period = top
        .iter()
        .try_fold(2u64, |acc, (&p, &j)| {
            p.checked_pow(j + 1).and_then(|pp| acc.checked_mul(pp))
        })
        .ok_or_else(|| domain("period overflows u64"))?;
    Ok(Chi2Family { f, period })
}

/// `f(1) = 1` and `f(j·D! + k) = (-1)^j f(k)` for `1 ≤ k ≤ D!`, `1 ≤ j ≤ D`,
/// `D = 1, 2, …`, truncated to `1..=n`.
pub fn factorial_alternating(n: usize) -> SeqWindow {
    SeqWindow::from_signs(&factorial_alternating_signs(n)).expect("values are ±1")
}

pub fn factorial_alternating_signs(n: usize) -> Vec<i8> {
    let mut f = vec![0i8; n + 1];
    if n == 0 {
        return vec![];
    }
    f[1] = 1;
    let mut fact = 1usize;
    let mut d = 1usize;
    while fact < n {
        for j in 1..=d {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for k in 1..=fact {
                let idx = j * fact + k;
                if idx > n {
                    break;
                }
                f[idx] = sign * f[k];
            }
        }
        d += 1;
        fact = match fact.checked_mul(d) {
            Some(x) => x,
            None => break,
        };
    }
    f.remove(0);
    f
}

/// The random model: `g(n) = χ(n)` for `n` coprime to the prime base `q`,
/// `g(q^j) = ε_j`, with i.i.d. uniform signs `ε_1, …, ε_k`. The function is
/// determined on `n < q^(k+1)`.
#[derive(Debug, Clone)]
pub struct StochasticBCC {
    base: u64,
    chi: DirichletCharacter,
    chi_table: Vec<Complex64>,
    signs: Vec<i8>,
    seed: u64,
}

impl StochasticBCC {
    pub fn new(chi: DirichletCharacter, signs: Vec<i8>, seed: u64) -> Result<Self> {
        let base = chi.modulus();
        if base < 2 || crate::numtheory::factorize_u64(base) != [(base, 1)] {
            return Err(domain("the model needs a character of prime modulus"));
        }
        if let Some(&s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::NotSign(s.to_string()));
        }
        let chi_table = chi.values_complex();
        Ok(StochasticBCC {
            base,
            chi,
            chi_table,
            signs,
            seed,
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    /// `ε_1, …, ε_k`.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `ε_j` with `ε_0 = 1`.
    pub fn sign(&self, j: u32) -> Option<i8> {
        if j == 0 {
            Some(1)
        } else {
            self.signs.get(j as usize - 1).copied()
        }
    }

    /// `g(n) = ε_{v_q(n)} · χ(n / q^{v_q(n)})`.
    pub fn eval(&self, n: u64) -> Result<Complex64> {
        if n == 0 {
            return Err(domain("g is defined on n ≥ 1"));
        }
        let (v, m) = valuation(n, self.base);
        let s = self
            .sign(v)
            .ok_or_else(|| domain(format!("sign ε_{v} was not drawn (k = {})", self.signs.len())))?;
        Ok(self.chi_table[(m % self.base) as usize] * s as f64)
    }

    /// `∑_{j ≤ n} g(j)`, grouping `j = q^i·m`:
    /// `∑_i ε_i ∑_{m ≤ n/q^i} χ(m)`.
    pub fn prefix_sum(&self, n: u64) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        let mut i = 0u32;
        let mut qi = 1u64;
        while qi <= n {
            let s = self
                .sign(i)
                .ok_or_else(|| domain(format!("sign ε_{i} was not drawn")))?;
            total += character_interval_sum(&self.chi, 1, n / qi) * s as f64;
            i += 1;
            qi = match qi.checked_mul(self.base) {
                Some(x) => x,
                None => break,
            };
        }
        Ok(total)
    }

    /// `∑_{j ≤ n} g(j)` term by term.
    pub fn prefix_sum_direct(&self, n: u64) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for j in 1..=n {
            total += self.eval(j)?;
        }
        Ok(total)
    }

    /// The same function as a general [`MultiplicativeFn`].
    pub fn to_multiplicative(&self, primes: Arc<PrimeTable>) -> Result<MultiplicativeFn> {
        let fill = BTreeMap::from([(self.base, Unit::ONE)]);
        let lifted = lift_character(&self.chi, &fill, primes)?;
        let overrides = self
            .signs
            .iter()
            .enumerate()
            .map(|(i, &s)| ((self.base, i as u32 + 1), Unit::from_sign(s)))
            .collect();
        MultiplicativeFn::new(lifted, BTreeMap::new(), overrides)
    }
}

/// Generator of [`StochasticBCC`] samples for a fixed character.
#[derive(Debug, Clone)]
pub struct BccModel {
    chi: DirichletCharacter,
}

impl BccModel {
    pub fn new(chi: DirichletCharacter) -> Self {
        BccModel { chi }
    }

    /// Base 3 with the non-principal character mod 3.
    pub fn ternary() -> Self {
        BccModel {
            chi: legendre_character(3).expect("3 is an odd prime"),
        }
    }

    pub fn base(&self) -> u64 {
        self.chi.modulus()
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn draw_signs<R: Rng>(&self, k: usize, rng: &mut R) -> Vec<i8> {
        (0..k).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect()
    }

    pub fn sample(&self, k: usize, seed: u64) -> Result<StochasticBCC> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let signs = self.draw_signs(k, &mut rng);
        StochasticBCC::new(self.chi.clone(), signs, seed)
    }
}

/// A base-3 sample with `k` random signs.
pub fn random_bcc(k: usize, seed: u64) -> Result<StochasticBCC> {
    if k == 0 {
        return Err(domain("k must be at least 1"));
    }
    BccModel::ternary().sample(k, seed)
}

/// `e(num/den)` as a [`Unit`].
pub fn root(num: u64, den: u64) -> Unit {
    Unit::Root(RootOfUnity::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::count_digit;
    use rand::Rng;

    fn table(limit: u64) -> Arc<PrimeTable> {
        Arc::new(PrimeTable::new(limit))
    }

    #[test]
    fn bcc_values() {
        let f = bcc(table(1000));
        assert_eq!(f.eval_unit(1).unwrap(), Unit::ONE);
        assert_eq!(f.eval_unit(9).unwrap(), Unit::ONE);
        assert_eq!(f.eval_unit(6).unwrap(), Unit::MINUS_ONE);
        assert_eq!(f.eval_unit(13).unwrap(), Unit::ONE);
        let chi3 = legendre_character(3).unwrap();
        for a in 0..5u32 {
            for m in (1..100u64).filter(|m| m % 3 != 0) {
                let n = 3u64.pow(a) * m;
                if n <= 1000 {
                    assert_eq!(f.eval(n).unwrap(), chi3.eval(m));
                }
            }
        }
    }

    #[test]
    fn missing_fill_is_rejected() {
        let chi = legendre_character(5).unwrap();
        assert!(lift_character(&chi, &BTreeMap::new(), table(100)).is_err());
    }

    #[test]
    fn unassigned_prime_without_default_fails() {
        let t = table(100);
        let f = CompletelyMultiplicativeFn::from_prime_values(
            t.clone(),
            BTreeMap::from([(2, Unit::MINUS_ONE)]),
            false,
        )
        .unwrap();
        assert_eq!(f.eval_unit(8).unwrap(), Unit::MINUS_ONE);
        assert!(matches!(f.eval(6), Err(Error::Unassigned { prime: 3, .. })));
        let g = CompletelyMultiplicativeFn::from_prime_values(
            t,
            BTreeMap::from([(2, Unit::MINUS_ONE)]),
            true,
        )
        .unwrap();
        assert_eq!(g.eval_unit(6).unwrap(), Unit::MINUS_ONE);
    }

    #[test]
    fn evaluation_beyond_table_fails() {
        let f = bcc(table(100));
        assert!(matches!(f.eval(2 * 101), Err(Error::BeyondTable { .. })));
        assert!(f.eval(1 << 20).is_ok());
    }

    #[test]
    fn complete_multiplicativity_exact() {
        let t = table(200_000);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let values = t
            .primes()
            .iter()
            .map(|&p| (p, root(rng.gen_range(0..12), 12)))
            .collect();
        let f = CompletelyMultiplicativeFn::from_prime_values(t.clone(), values, false).unwrap();
        let g = lifted_legendre(5, -1, t).unwrap();
        for _ in 0..100_000 {
            let m = rng.gen_range(1..=400u64);
            let n = rng.gen_range(1..=400u64);
            for h in [&f, &g] {
                assert_eq!(
                    h.eval_unit(m * n).unwrap(),
                    h.eval_unit(m).unwrap() * h.eval_unit(n).unwrap()
                );
            }
        }
    }

    #[test]
    fn materialize_matches_eval() {
        let f = lifted_legendre(7, -1, table(5000)).unwrap();
        let units = f.materialize_units(5000).unwrap();
        for (i, u) in units.iter().enumerate() {
            assert_eq!(*u, f.eval_unit(i as u64 + 1).unwrap());
        }
    }

    #[test]
    fn lift_restricts_to_character() {
        let t = table(1000);
        for q in [5u64, 7, 12] {
            for chi in crate::numtheory::enumerate_characters(q).unwrap() {
                let fill = crate::numtheory::factorize_u64(q)
                    .into_iter()
                    .map(|(p, _)| (p, Unit::MINUS_ONE))
                    .collect();
                let f = lift_character(&chi, &fill, t.clone()).unwrap();
                for &p in t.primes() {
                    let v = f.prime_value(p).unwrap();
                    match chi.value(p) {
                        Some(r) => assert_eq!(v, Unit::Root(r)),
                        None => assert_eq!(v, Unit::MINUS_ONE),
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_not_completely() {
        let model = BccModel::ternary();
        let g = StochasticBCC::new(model.character().clone(), vec![-1, 1, -1], 0).unwrap();
        let mf = g.to_multiplicative(table(1000)).unwrap();
        assert_eq!(mf.eval_unit(3).unwrap(), Unit::MINUS_ONE);
        assert_eq!(mf.eval_unit(9).unwrap(), Unit::ONE);
        assert_eq!(mf.eval_unit(27).unwrap(), Unit::MINUS_ONE);
        assert_eq!(mf.eval_unit(9).unwrap(), Unit::from_sign(g.sign(2).unwrap()));
        for n in 1..81u64 {
            assert_eq!(mf.eval(n).unwrap(), g.eval(n).unwrap(), "n={n}");
        }
        for m in 1..40u64 {
            for n in 1..40u64 {
                if num_integer::gcd(m, n) == 1 && m * n < 81 {
                    assert_eq!(
                        mf.eval_unit(m * n).unwrap(),
                        mf.eval_unit(m).unwrap() * mf.eval_unit(n).unwrap()
                    );
                }
            }
        }
        assert!(g.eval(81).is_err());
    }

    #[test]
    fn grouped_prefix_sum_matches_direct() {
        for seed in 0..20 {
            let g = random_bcc(6, seed).unwrap();
            for n in 1..3u64.pow(7) {
                assert!((g.prefix_sum(n).unwrap() - g.prefix_sum_direct(n).unwrap()).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn random_bcc_is_seeded() {
        let a = random_bcc(20, 42).unwrap();
        let b = random_bcc(20, 42).unwrap();
        assert_eq!(a.signs(), b.signs());
        assert!(a.signs().iter().all(|&s| s == 1 || s == -1));
        let mean: f64 = (0..10_000u64)
            .map(|s| random_bcc(1, s).unwrap().signs()[0] as f64)
            .sum::<f64>()
            / 10_000.0;
        assert!(mean.abs() < 0.05, "mean {mean}");
        let chi3 = legendre_character(3).unwrap();
        for n in (1..3u64.pow(20).min(100_000)).filter(|n| n % 3 != 0) {
            assert_eq!(a.eval(n).unwrap(), chi3.eval(n));
        }
    }

    #[test]
    fn bcc_prefix_sum_counts_ones() {
        let f = bcc(table(100_000));
        let v = f.materialize(100_000).unwrap();
        let mut s = 0.0;
        for n in 1..=100_000u64 {
            s += v.get(n as usize).re;
            assert_eq!(s as usize, count_digit(n, 3, 1).unwrap());
        }
    }

    #[test]
    fn chi2_family_plain() {
        let fam = chi2_family(&BTreeMap::new(), table(1000)).unwrap();
        assert_eq!(fam.period, 2);
        let mut s = 0.0;
        for n in 1..=1000u64 {
            s += fam.f.eval(n).unwrap().re;
            assert!(s == 0.0 || s == 1.0);
        }
    }

    #[test]
    fn chi2_family_override() {
        let t = table(200_000);
        let fam = chi2_family(&BTreeMap::from([((3, 1), -1)]), t).unwrap();
        assert_eq!(fam.period, 18);
        let v: Vec<f64> = (1..=100_000u64).map(|n| fam.f.eval(n).unwrap().re).collect();
        for n in 0..v.len() - 18 {
            assert_eq!(v[n], v[n + 18]);
        }
        assert_eq!(v[..18].iter().sum::<f64>(), 0.0);
        let mut s = 0.0f64;
        let mut sup = 0.0f64;
        for x in &v {
            s += x;
            sup = sup.max(s.abs());
        }
        assert!(sup <= 18.0);
    }

    #[test]
    fn chi2_family_random_overrides_have_zero_mean() {
        let t = table(100_000);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let odd_primes = [3u64, 5, 7, 11];
        for _ in 0..20 {
            let mut ov = BTreeMap::new();
            for _ in 0..rng.gen_range(1..4) {
                let p = odd_primes[rng.gen_range(0..odd_primes.len())];
                let j = rng.gen_range(1..3u32);
                ov.insert((p, j), if rng.gen::<bool>() { 1 } else { -1 });
            }
            let fam = chi2_family(&ov, t.clone()).unwrap();
            if fam.period > 100_000 {
                continue;
            }
            let s: f64 = (1..=fam.period).map(|n| fam.f.eval(n).unwrap().re).sum();
            assert_eq!(s, 0.0, "{ov:?}");
        }
    }

    #[test]
    fn chi2_family_rejects_bad_overrides() {
        let t = table(100);
        assert!(chi2_family(&BTreeMap::from([((2, 1), -1)]), t.clone()).is_err());
        assert!(chi2_family(&BTreeMap::from([((3, 1), 0)]), t).is_err());
    }

    #[test]
    fn factorial_alternating_prefix() {
        let expected = [1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1];
        assert_eq!(factorial_alternating_signs(18), expected);
        assert_eq!(factorial_alternating_signs(2)[1], -1);
        let long = factorial_alternating_signs(5040);
        assert_eq!(&long[..18], &expected);
    }

    #[test]
    fn factorial_alternating_blocks_vanish() {
        let f = factorial_alternating_signs(5040);
        let d = 2usize;
        let block = 24 / d;
        let terms: Vec<i32> = (1..=5040 / d).map(|j| f[j * d - 1] as i32).collect();
        for chunk in terms.chunks_exact(block) {
            assert_eq!(chunk.iter().sum::<i32>(), 0);
        }
    }
}
