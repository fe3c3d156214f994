use num_complex::Complex64;
use rayon::prelude::*;

use super::window::{prefix_sums, SeqWindow};
use crate::error::Result;
use crate::mulfun::CompletelyMultiplicativeFn;

/// Largest `|∑_{j ≤ n} v(jd)|` over `nd ≤ N`, with the first `(d, n)`
/// attaining it (smallest `d`, then smallest `n`).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub sup: f64,
    pub witness_n: usize,
    pub witness_d: usize,
    /// `per_d[d - 1]` is the supremum along the progression of difference `d`.
    pub per_d: Option<Vec<f64>>,
}

/// Best `(|s|², n)` along the progression `d, 2d, …`.
fn scan_progression(values: &[Complex64], d: usize) -> (f64, usize) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut best = (0.0f64, 0usize);
    let mut idx = d;
    let mut n = 0;
    while idx <= values.len() {
        acc += values[idx - 1];
        n += 1;
        let m = acc.norm_sqr();
        if m > best.0 {
            best = (m, n);
        }
        idx += d;
    }
    best
}

fn scan(s: &SeqWindow, keep_table: bool) -> DiscrepancyReport {
    let values = s.values();
    let big_n = values.len();
    let per_d: Vec<(f64, usize)> = (1..=big_n)
        .into_par_iter()
        .map(|d| scan_progression(values, d))
        .collect();
    let mut best = (0.0f64, 0usize, 1usize);
    for (i, &(m, n)) in per_d.iter().enumerate() {
        if m > best.0 {
            best = (m, n, i + 1);
        }
    }
    DiscrepancyReport {
        sup: best.0.sqrt(),
        witness_n: best.1,
        witness_d: best.2,
        per_d: keep_table.then(|| per_d.iter().map(|&(m, _)| m.sqrt()).collect()),
    }
}

/// Exact discrepancy of the window in `O(N log N)`.
pub fn hap_discrepancy(s: &SeqWindow) -> DiscrepancyReport {
    scan(s, false)
}

/// As [`hap_discrepancy`], also returning the per-`d` suprema.
pub fn hap_discrepancy_table(s: &SeqWindow) -> DiscrepancyReport {
    scan(s, true)
}

/// Direct double loop over every `(n, d)`; an independent reference for
/// [`hap_discrepancy`].
pub fn hap_discrepancy_brute(s: &SeqWindow) -> DiscrepancyReport {
    let big_n = s.len();
    let mut best = (0.0f64, 0usize, 1usize);
    for d in 1..=big_n {
        for n in 1..=big_n / d {
            let sum: Complex64 = (1..=n).map(|j| s.get(j * d)).sum();
            let m = sum.norm_sqr();
            if m > best.0 {
                best = (m, n, d);
            }
        }
    }
    DiscrepancyReport {
        sup: best.0.sqrt(),
        witness_n: best.1,
        witness_d: best.2,
        per_d: None,
    }
}

/// Discrepancy of a completely multiplicative unit-valued `f` up to `N`.
/// Along `d` the partial sums are `f(d)·∑_{j ≤ n} f(j)`, so the supremum
/// along `d` is the largest prefix sum with `n ≤ N/d`.
pub fn hap_discrepancy_cm(f: &CompletelyMultiplicativeFn, big_n: u64) -> Result<DiscrepancyReport> {
    let window = f.materialize(big_n)?;
    let prefix = prefix_sums(&window);
    let mut running = Vec::with_capacity(prefix.len());
    let mut best = (0.0f64, 0usize);
    running.push(0.0);
    for (n, p) in prefix.iter().enumerate().skip(1) {
        let m = p.norm_sqr();
        if m > best.0 {
            best = (m, n);
        }
        running.push(best.0);
    }
    let nn = big_n as usize;
    let per_d = (1..=nn).map(|d| running[nn / d].sqrt()).collect();
    Ok(DiscrepancyReport {
        sup: best.0.sqrt(),
        witness_n: best.1,
        witness_d: 1,
        per_d: Some(per_d),
    })
}
