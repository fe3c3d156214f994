use crate::error::{domain, Result};
use crate::numtheory::{character_interval_sum, valuation, DirichletCharacter};
use crate::sum::KahanSum;

/// Norm of `∑_{j ≤ n} f(jd)` for the vector-valued function
/// `f(q^a·m) = χ(m)·e_a` (`q ∤ m`). Writing `d = q^l·d'`, the sum is
/// `∑_i e_{i+l} ∑_{m ≤ n/q^i} χ(m·d')`, so its squared norm is the sum of
/// the squared inner sums.
pub fn vector_bcc_norm(n: u64, d: u64, q: u64, chi: &DirichletCharacter) -> Result<f64> {
    if d == 0 {
        return Err(domain("d must be positive"));
    }
    if q < 2 {
        return Err(domain("base must be at least 2"));
    }
    if chi.modulus() != q {
        return Err(domain(format!(
            "character has modulus {}, expected {q}",
            chi.modulus()
        )));
    }
    let (_, d_rest) = valuation(d, q);
    let chi_d = chi.eval(d_rest);
    let mut acc = KahanSum::new();
    let mut qi = 1u64;
    while qi <= n {
        let inner = chi_d * character_interval_sum(chi, 1, n / qi);
        acc.add(inner.norm_sqr());
        qi = match qi.checked_mul(q) {
            Some(x) => x,
            None => break,
        };
    }
    Ok(acc.value().sqrt())
}
