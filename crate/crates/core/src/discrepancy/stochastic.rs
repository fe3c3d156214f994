use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::mulfun::{BccModel, StochasticBCC};
use crate::numtheory::legendre_character;

/// A prefix of the ternary random model whose partial sum is forced large.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adversary {
    /// `n < 3^(k+1)` whose base-3 digits are 1 exactly where `ε_i` is the majority sign.
    pub n: u64,
    /// `|∑_{j ≤ n} g(j)|`.
    pub value: u64,
    pub majority: i8,
}

/// Given `ε_0 = +1, ε_1, …, ε_k`, picks `n` with base-3 digit 1 exactly at
/// the positions carrying the majority sign (ties go to `+1`). Since
/// `∑_{j ≤ n} g(j) = ∑_{i : digit_i(n) = 1} ε_i`, the sum has modulus
/// `max(#{ε_i = +1}, #{ε_i = −1}) ≥ (k+1)/2`. The returned value is
/// obtained by summing `g(1), …, g(n)` term by term.
pub fn adversarial_bcc(eps: &[i8]) -> Result<Adversary> {
    match eps.first() {
        Some(1) => {}
        _ => return Err(domain("ε_0 must be +1")),
    }
    if let Some(&s) = eps.iter().find(|&&s| s != 1 && s != -1) {
        return Err(Error::NotSign(s.to_string()));
    }
    if eps.len() > 40 {
        return Err(domain("k too large for u64 arithmetic"));
    }
    let plus = eps.iter().filter(|&&s| s == 1).count();
    let minus = eps.len() - plus;
    let majority: i8 = if plus >= minus { 1 } else { -1 };
    let n: u64 = eps
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == majority)
        .map(|(i, _)| 3u64.pow(i as u32))
        .sum();
    let model = StochasticBCC::new(legendre_character(3)?, eps[1..].to_vec(), 0)?;
    let sum = model.prefix_sum_direct(n)?;
    let value = sum.norm().round() as u64;
    Ok(Adversary { n, value, majority })
}

/// Monte Carlo estimate of `E|∑_{j ≤ n} g(j)|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_dev: f64,
    pub trials: usize,
}

impl MonteCarloEstimate {
    /// `3·σ/√trials`.
    pub fn tolerance(&self) -> f64 {
        3.0 * self.std_dev / (self.trials as f64).sqrt()
    }

    pub fn contains(&self, expected: f64) -> bool {
        (self.mean - expected).abs() <= self.tolerance() + 1e-12
    }
}

/// Draws `trials` independent samples of the model with `k = ⌊log_q n⌋`
/// signs from one seeded stream and averages `|∑_{j ≤ n} g(j)|²`.
pub fn mc_second_moment(
    model: &BccModel,
    n: u64,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(domain("at least one trial is required"));
    }
    let q = model.base();
    let mut k = 0usize;
    let mut qk = q;
    while qk <= n {
        k += 1;
        qk = match qk.checked_mul(q) {
            Some(x) => x,
            None => break,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for t in 0..trials {
        let signs = model.draw_signs(k, &mut rng);
        let g = StochasticBCC::new(model.character().clone(), signs, seed)?;
        let x = g.prefix_sum(n)?.norm_sqr();
        let delta = x - mean;
        mean += delta / (t + 1) as f64;
        m2 += delta * (x - mean);
    }
    let var = if trials > 1 {
        m2 / (trials - 1) as f64
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        std_dev: var.max(0.0).sqrt(),
        trials,
    })
}
