use num_complex::Complex64;

use crate::discrepancy::SeqWindow;
use crate::error::{Error, Result};
use crate::sum::{ComplexKahanSum, KahanSum};

fn range(x: f64) -> (usize, usize) {
    let lo = x.sqrt().ceil().max(1.0) as usize;
    (lo, x.floor() as usize)
}

fn ensure_window(g: &SeqWindow, x: f64, reach: usize) -> Result<()> {
    let needed = x.floor() as usize + reach;
    if g.len() < needed {
        return Err(Error::InsufficientWindow {
            len: g.len(),
            needed: needed as u64,
        });
    }
    Ok(())
}

/// `∑_{√X ≤ n ≤ X} 1/n`.
pub fn harmonic_range(x: f64) -> f64 {
    let (lo, hi) = range(x);
    let acc: KahanSum = (lo..=hi).map(|n| 1.0 / n as f64).collect();
    acc.value()
}

/// `∑_{√X ≤ n ≤ X} g(n + h1)·conj(g(n + h2))/n`.
pub fn log_avg_correlation(g: &SeqWindow, h1: usize, h2: usize, x: f64) -> Result<Complex64> {
    if h1 == 0 || h2 == 0 {
        return Err(crate::error::domain("shifts must be positive"));
    }
    ensure_window(g, x, h1.max(h2))?;
    let (lo, hi) = range(x);
    let mut acc = ComplexKahanSum::new();
    for n in lo..=hi {
        acc.add(g.get(n + h1) * g.get(n + h2).conj() / n as f64);
    }
    Ok(acc.value())
}

/// `∑_{√X ≤ n ≤ X} (1/n)·|∑_{h=1}^{H} g(n + h)|²`.
pub fn window_variance(g: &SeqWindow, big_h: usize, x: f64) -> Result<f64> {
    if big_h == 0 {
        return Err(crate::error::domain("H must be positive"));
    }
    ensure_window(g, x, big_h)?;
    let (lo, hi) = range(x);
    let mut acc = KahanSum::new();
    for n in lo..=hi {
        let inner: Complex64 = (1..=big_h).map(|h| g.get(n + h)).sum();
        acc.add(inner.norm_sqr() / n as f64);
    }
    Ok(acc.value())
}
