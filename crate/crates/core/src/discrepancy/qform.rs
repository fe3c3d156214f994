use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{domain, Result};

/// Largest dimension handled without an explicit opt-in.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadFormReport {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

/// The symmetric matrix of
/// `∑ c_{m,d} (x_d + x_{2d} + ⋯ + x_{md})² − ∑ b_n x_n²`.
pub fn quadratic_form_matrix(
    c: &BTreeMap<(usize, usize), f64>,
    b: &[f64],
    n: usize,
) -> Result<DMatrix<f64>> {
    if b.len() != n {
        return Err(domain(format!("b has length {}, expected {n}", b.len())));
    }
    if b.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(domain("b must be non-negative"));
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (&(m, d), &w) in c {
        if m == 0 || d == 0 || m.saturating_mul(d) > n {
            return Err(domain(format!("progression (m={m}, d={d}) leaves 1..={n}")));
        }
        if w < 0.0 || !w.is_finite() {
            return Err(domain("c must be non-negative"));
        }
        for i in 1..=m {
            for j in 1..=m {
                a[(i * d - 1, j * d - 1)] += w;
            }
        }
    }
    for (i, &x) in b.iter().enumerate() {
        a[(i, i)] -= x;
    }
    Ok(a)
}

/// Minimum eigenvalue of the form; positive semi-definite iff it is
/// `≥ −tol`. Dimensions above [`DENSE_LIMIT`] need `allow_large`.
pub fn quadratic_form_check(
    c: &BTreeMap<(usize, usize), f64>,
    b: &[f64],
    n: usize,
    tol: f64,
    allow_large: bool,
) -> Result<QuadFormReport> {
    if n > DENSE_LIMIT && !allow_large {
        return Err(domain(format!(
            "dimension {n} exceeds {DENSE_LIMIT}; pass allow_large to proceed"
        )));
    }
    if n == 0 {
        return Ok(QuadFormReport {
            is_psd: true,
            min_eigenvalue: 0.0,
        });
    }
    let a = quadratic_form_matrix(c, b, n)?;
    let eig = SymmetricEigen::new(a);
    let min_eigenvalue = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(QuadFormReport {
        is_psd: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}
