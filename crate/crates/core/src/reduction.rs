//! The Fourier-analytic reduction: a unit-vector valued sequence `f` is
//! pulled back to `F(a_1, …, a_r) = f(p_1^{a_1} ⋯ p_r^{a_r})` on
//! `(Z/M)^r`, transformed, and the squared norms `‖F̂(ξ)‖²` are read as the
//! law of a random frequency `ξ`. The random completely multiplicative
//! function `g_X(p_j) = e(ξ_j/M)` then satisfies
//! `E|∑_{j ≤ n} g_X(j)|² = (1/M^r) ∑_x ‖∑_{j ≤ n} F(x + π(j))‖²`.
//!
//! Transforms are computed axis by axis with naive length-`M` DFTs, which
//! is `O(M^{r+1})` per coordinate. Swapping the inner loop for an FFT is
//! the upgrade path if larger `M` is ever needed.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::mulfun::CompletelyMultiplicativeFn;
use crate::numtheory::{DirichletCharacter, PrimeTable};
use crate::sum::KahanSum;
use crate::unit::{RootOfUnity, Unit};

const UNIT_TOL: f64 = 1e-9;

/// `π(j)`: the exponent vector of `j = p_1^{a_1} ⋯ p_r^{a_r}`, each `a_i < M`.
pub fn pi_map(j: u64, primes: &[u64], modulus: usize) -> Result<Vec<usize>> {
    if j == 0 {
        return Err(domain("π is defined on j ≥ 1"));
    }
    let mut rest = j;
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let mut a = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            a += 1;
        }
        if a as usize >= modulus {
            return Err(Error::ExponentOverflow {
                j,
                prime: p,
                exponent: a,
                modulus,
            });
        }
        out.push(a as usize);
    }
    if rest != 1 {
        return Err(Error::ForeignPrime { j });
    }
    Ok(out)
}

/// `D`-dimensional complex vectors indexed by `(Z/M)^r`, stored in
/// lexicographic order of the index (first coordinate most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupArray {
    modulus: usize,
    rank: usize,
    dim: usize,
    values: Vec<Complex64>,
}

impl GroupArray {
    pub fn zeros(modulus: usize, rank: usize, dim: usize) -> Result<Self> {
        if modulus < 2 || rank == 0 || dim == 0 {
            return Err(domain("need M ≥ 2, r ≥ 1 and D ≥ 1"));
        }
        let size = modulus
            .checked_pow(rank as u32)
            .and_then(|s| s.checked_mul(dim))
            .filter(|&s| s <= 1 << 28)
            .ok_or_else(|| domain("group array too large"))?;
        Ok(GroupArray {
            modulus,
            rank,
            dim,
            values: vec![Complex64::new(0.0, 0.0); size],
        })
    }

    pub fn from_fn(
        modulus: usize,
        rank: usize,
        dim: usize,
        mut f: impl FnMut(&[usize]) -> Result<Vec<Complex64>>,
    ) -> Result<Self> {
        let mut out = Self::zeros(modulus, rank, dim)?;
        for idx in 0..out.len() {
            let x = out.coords(idx);
            let v = f(&x)?;
            if v.len() != dim {
                return Err(domain(format!("value of dimension {} where {dim} expected", v.len())));
            }
            out.values[idx * dim..(idx + 1) * dim].copy_from_slice(&v);
        }
        Ok(out)
    }

    /// Independent uniformly random unit vectors.
    pub fn random_unit<R: Rng>(modulus: usize, rank: usize, dim: usize, rng: &mut R) -> Result<Self> {
        Self::from_fn(modulus, rank, dim, |_| {
            let v: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
            Ok(v.into_iter().map(|z| z / norm).collect())
        })
    }

    /// [`GroupArray::random_unit`] driven by a ChaCha8 stream seeded with `seed`.
    pub fn random_unit_seeded(modulus: usize, rank: usize, dim: usize, seed: u64) -> Result<Self> {
        Self::random_unit(modulus, rank, dim, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of group elements, `M^r`.
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index_of(&self, x: &[usize]) -> usize {
        x.iter().fold(0, |acc, &a| acc * self.modulus + a % self.modulus)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut x = vec![0; self.rank];
        for slot in (0..self.rank).rev() {
            x[slot] = idx % self.modulus;
            idx /= self.modulus;
        }
        x
    }

    pub fn get(&self, x: &[usize]) -> &[Complex64] {
        let i = self.index_of(x);
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn at_index(&self, idx: usize) -> &[Complex64] {
        &self.values[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn norm_sqr_at(&self, idx: usize) -> f64 {
        self.at_index(idx).iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_unit_valued(&self, tol: f64) -> bool {
        (0..self.len()).all(|i| (self.norm_sqr_at(i).sqrt() - 1.0).abs() <= tol)
    }

    /// `(1/M^r) ∑_x ‖F(x)‖²`.
    pub fn mean_norm_sqr(&self) -> f64 {
        let acc: KahanSum = (0..self.len()).map(|i| self.norm_sqr_at(i)).collect();
        acc.value() / self.len() as f64
    }

    /// One length-`M` DFT along every axis, with kernel `e(sign·k·a/M)`.
    fn transform(&self, sign: f64, scale: f64) -> GroupArray {
        let m = self.modulus;
        let twiddle: Vec<Complex64> = (0..m)
            .map(|k| Complex64::from_polar(1.0, sign * TAU * k as f64 / m as f64))
            .collect();
        let mut cur = self.values.clone();
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        let dim = self.dim;
        for axis in 0..self.rank {
            let stride = m.pow((self.rank - 1 - axis) as u32) * dim;
            let block = stride * m;
            let mut next = vec![Complex64::new(0.0, 0.0); cur.len()];
            for base in (0..cur.len()).step_by(block) {
                for off in 0..stride {
                    let start = base + off;
                    for (xi, out) in buf.iter_mut().enumerate() {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for a in 0..m {
                            acc += cur[start + a * stride] * twiddle[(a * xi) % m];
                        }
                        *out = acc;
                    }
                    for (xi, v) in buf.iter().enumerate() {
                        next[start + xi * stride] = *v;
                    }
                }
            }
            cur = next;
        }
        for v in &mut cur {
            *v *= scale;
        }
        GroupArray {
            modulus: self.modulus,
            rank: self.rank,
            dim: self.dim,
            values: cur,
        }
    }
}

/// `F̂(ξ) = (1/M^r) ∑_x F(x)·e(−x·ξ/M)`.
pub fn fourier_transform(f: &GroupArray) -> GroupArray {
    f.transform(-1.0, 1.0 / f.len() as f64)
}

/// `F(x) = ∑_ξ F̂(ξ)·e(x·ξ/M)`.
pub fn inverse_fourier_transform(fhat: &GroupArray) -> GroupArray {
    fhat.transform(1.0, 1.0)
}

/// A sequence of vectors that can be evaluated at `p_1^{a_1} ⋯ p_r^{a_r}`
/// for exponents far too large for machine integers.
pub trait FactoredSequence {
    fn dim(&self) -> usize;
    fn eval_factored(&self, primes: &[u64], exponents: &[usize]) -> Result<Vec<Complex64>>;
}

impl FactoredSequence for CompletelyMultiplicativeFn {
    fn dim(&self) -> usize {
        1
    }

    fn eval_factored(&self, primes: &[u64], exponents: &[usize]) -> Result<Vec<Complex64>> {
        let mut acc = Unit::ONE;
        for (&p, &a) in primes.iter().zip(exponents) {
            acc = acc * self.prime_value(p)?.pow(a as u32);
        }
        Ok(vec![acc.to_complex()])
    }
}

/// `f(q^a·m) = χ(m)·e_a` for `q ∤ m`, truncated to `dim` coordinates.
#[derive(Debug, Clone)]
pub struct VectorBcc {
    pub chi: DirichletCharacter,
    pub dim: usize,
}

impl FactoredSequence for VectorBcc {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval_factored(&self, primes: &[u64], exponents: &[usize]) -> Result<Vec<Complex64>> {
        let q = self.chi.modulus();
        let mut a = 0usize;
        let mut value = RootOfUnity::ONE;
        for (&p, &e) in primes.iter().zip(exponents) {
            if p == q {
                a = e;
            } else {
                let c = self
                    .chi
                    .value(p)
                    .ok_or_else(|| domain(format!("χ vanishes at {p}")))?;
                value = value * c.pow(e as u64);
            }
        }
        if a >= self.dim {
            return Err(domain(format!("coordinate {a} exceeds dimension {}", self.dim)));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        out[a] = value.to_complex();
        Ok(out)
    }
}

/// A sequence given on arbitrary-precision naturals.
pub struct BigSequence<F> {
    pub dim: usize,
    pub f: F,
}

impl<F: Fn(&BigUint) -> Result<Vec<Complex64>>> FactoredSequence for BigSequence<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval_factored(&self, primes: &[u64], exponents: &[usize]) -> Result<Vec<Complex64>> {
        let mut n = BigUint::from(1u32);
        for (&p, &a) in primes.iter().zip(exponents) {
            n *= BigUint::from(p).pow(a as u32);
        }
        (self.f)(&n)
    }
}

/// `F(a) = f(p_1^{a_1} ⋯ p_r^{a_r})`, required to be unit-vector valued.
pub fn build_f(seq: &dyn FactoredSequence, primes: &[u64], modulus: usize) -> Result<GroupArray> {
    let f = build_f_unchecked(seq, primes, modulus)?;
    for idx in 0..f.len() {
        let r = f.norm_sqr_at(idx).sqrt();
        if (r - 1.0).abs() > UNIT_TOL {
            return Err(domain(format!(
                "F({:?}) has norm {r}, not a unit vector",
                f.coords(idx)
            )));
        }
    }
    Ok(f)
}

/// As [`build_f`] without the unit-norm requirement.
pub fn build_f_unchecked(
    seq: &dyn FactoredSequence,
    primes: &[u64],
    modulus: usize,
) -> Result<GroupArray> {
    GroupArray::from_fn(modulus, primes.len(), seq.dim(), |x| seq.eval_factored(primes, x))
}

/// Law of the random frequency: `w(ξ) = ‖F̂(ξ)‖²`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreqDistribution {
    modulus: usize,
    rank: usize,
    weights: Vec<f64>,
}

impl FreqDistribution {
    pub fn from_transform(fhat: &GroupArray) -> Self {
        FreqDistribution {
            modulus: fhat.modulus,
            rank: fhat.rank,
            weights: (0..fhat.len()).map(|i| fhat.norm_sqr_at(i)).collect(),
        }
    }

    pub fn new(modulus: usize, rank: usize, weights: Vec<f64>) -> Result<Self> {
        if modulus < 2 || rank == 0 || Some(weights.len()) != modulus.checked_pow(rank as u32) {
            return Err(domain("weights do not cover (Z/M)^r"));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(domain("weights must be non-negative"));
        }
        Ok(FreqDistribution {
            modulus,
            rank,
            weights,
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().copied().collect::<KahanSum>().value()
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut x = vec![0; self.rank];
        for slot in (0..self.rank).rev() {
            x[slot] = idx % self.modulus;
            idx /= self.modulus;
        }
        x
    }

    /// Inverse-CDF draw over lexicographically ordered frequencies,
    /// normalising by the total weight.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Result<Vec<usize>> {
        let total = self.total();
        if total <= 0.0 || !total.is_finite() {
            return Err(Error::DegenerateWeights(total));
        }
        let u = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut last = 0;
        for (i, &w) in self.weights.iter().enumerate() {
            if w > 0.0 {
                last = i;
                acc += w;
                if u < acc {
                    return Ok(self.coords(i));
                }
            }
        }
        Ok(self.coords(last))
    }

    /// One draw from a ChaCha8 stream seeded with `seed`.
    pub fn sample_seeded(&self, seed: u64) -> Result<Vec<usize>> {
        self.sample(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// `∑_ξ w(ξ)·|∑_{j ≤ n} e(π(j)·ξ/M)|²`, the exact value of
    /// `E|∑_{j ≤ n} g_X(j)|²` when the weights sum to 1.
    pub fn expected_second_moment(&self, primes: &[u64], n: u64) -> Result<f64> {
        let pis = pis(primes, n, self.modulus)?;
        let mut acc = KahanSum::new();
        for (idx, &w) in self.weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let xi = self.coords(idx);
            acc.add(w * exp_sum(&pis, &xi, self.modulus).norm_sqr());
        }
        Ok(acc.value())
    }
}

fn pis(primes: &[u64], n: u64, modulus: usize) -> Result<Vec<Vec<usize>>> {
    (1..=n).map(|j| pi_map(j, primes, modulus)).collect()
}

/// `∑_j e(π(j)·ξ/M)`.
fn exp_sum(pis: &[Vec<usize>], xi: &[usize], modulus: usize) -> Complex64 {
    pis.iter()
        .map(|a| {
            let dot: usize = a.iter().zip(xi).map(|(x, y)| x * y).sum::<usize>() % modulus;
            Complex64::from_polar(1.0, TAU * dot as f64 / modulus as f64)
        })
        .sum()
}

/// Both sides of
/// `(1/M^r) ∑_x ‖∑_{j ≤ n} F(x + π(j))‖² = ∑_ξ ‖F̂(ξ)‖²·|∑_{j ≤ n} e(π(j)·ξ/M)|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl IdentityCheck {
    pub fn agrees(&self, rel_tol: f64) -> bool {
        (self.lhs - self.rhs).abs() <= rel_tol * self.lhs.abs().max(1.0)
    }
}

pub fn discrepancy_identity_check(f: &GroupArray, primes: &[u64], n: u64) -> Result<IdentityCheck> {
    if primes.len() != f.rank {
        return Err(domain("number of primes must equal the rank"));
    }
    let m = f.modulus;
    let pis = pis(primes, n, m)?;
    let mut lhs = KahanSum::new();
    let mut acc = vec![Complex64::new(0.0, 0.0); f.dim];
    for idx in 0..f.len() {
        let x = f.coords(idx);
        acc.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for a in &pis {
            let shifted: Vec<usize> = x.iter().zip(a).map(|(u, v)| (u + v) % m).collect();
            for (z, v) in acc.iter_mut().zip(f.get(&shifted)) {
                *z += v;
            }
        }
        lhs.add(acc.iter().map(|z| z.norm_sqr()).sum());
    }
    let fhat = fourier_transform(f);
    let dist = FreqDistribution::from_transform(&fhat);
    let rhs = dist.expected_second_moment(primes, n)?;
    Ok(IdentityCheck {
        lhs: lhs.value() / f.len() as f64,
        rhs,
    })
}

/// Draws `ξ` from `dist` and returns `g_X` with `g_X(p_j) = e(ξ_j/M)` and
/// `g_X(p) = 1` at every other prime.
pub fn sample_gx(
    dist: &FreqDistribution,
    primes: &[u64],
    table: Arc<PrimeTable>,
    seed: u64,
) -> Result<CompletelyMultiplicativeFn> {
    if primes.len() != dist.rank {
        return Err(domain("number of primes must equal the rank"));
    }
    let xi = dist.sample_seeded(seed)?;
    gx_from_frequency(&xi, dist.modulus, primes, table)
}

pub fn gx_from_frequency(
    xi: &[usize],
    modulus: usize,
    primes: &[u64],
    table: Arc<PrimeTable>,
) -> Result<CompletelyMultiplicativeFn> {
    let values: BTreeMap<u64, Unit> = primes
        .iter()
        .zip(xi)
        .map(|(&p, &x)| (p, Unit::Root(RootOfUnity::new(x as u64, modulus as u64))))
        .collect();
    CompletelyMultiplicativeFn::from_prime_values(table, values, true)
}
