use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::ComplexKahanSum;
use crate::unit::Unit;

const MODULUS_TOL: f64 = 1e-9;

/// `v(1), …, v(N)` with `|v(n)| ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqWindow {
    values: Vec<Complex64>,
}

impl SeqWindow {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            let r = v.norm();
            if r > 1.0 + MODULUS_TOL || !r.is_finite() {
                return Err(Error::NotBounded {
                    index: i + 1,
                    modulus: r,
                });
            }
        }
        Ok(SeqWindow { values })
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let values = signs
            .iter()
            .map(|&s| match s {
                1 | -1 => Ok(Complex64::new(s as f64, 0.0)),
                _ => Err(Error::NotSign(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeqWindow { values })
    }

    pub fn from_units(units: &[Unit]) -> Self {
        SeqWindow {
            values: units.iter().map(|u| u.to_complex()).collect(),
        }
    }

    pub fn constant(n: usize, value: Complex64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `v(n)`, 1-indexed.
    pub fn get(&self, n: usize) -> Complex64 {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// The window as `±1` signs, if every entry is exactly `±1`.
    pub fn as_signs(&self) -> Option<Vec<i8>> {
        self.values
            .iter()
            .map(|v| match (v.re, v.im) {
                (r, i) if r == 1.0 && i == 0.0 => Some(1),
                (r, i) if r == -1.0 && i == 0.0 => Some(-1),
                _ => None,
            })
            .collect()
    }

    /// True when every entry is real.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }
}

/// `out[n] = ∑_{j ≤ n} v(j)`, with `out[0] = 0`.
pub fn prefix_sums(s: &SeqWindow) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(s.len() + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    out.push(acc);
    for v in &s.values {
        acc += v;
        out.push(acc);
    }
    out
}

/// `∑_{j ≤ n} (1 − j/n) v(j)`.
pub fn cesaro_sum(s: &SeqWindow, n: usize) -> Result<Complex64> {
    if n > s.len() {
        return Err(Error::InsufficientWindow {
            len: s.len(),
            needed: n as u64,
        });
    }
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = ComplexKahanSum::new();
    let nf = n as f64;
    for j in 1..=n {
        acc.add(s.get(j) * (1.0 - j as f64 / nf));
    }
    Ok(acc.value())
}
