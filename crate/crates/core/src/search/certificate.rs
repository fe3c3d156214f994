use super::Mode;
use crate::discrepancy::{hap_discrepancy, DiscrepancyReport, SeqWindow};
use crate::error::{Error, Result};

/// A ±1 sequence claimed to have HAP discrepancy at most `claimed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub values: Vec<i8>,
    pub claimed: u32,
    pub mode: Mode,
}

impl Certificate {
    pub fn new(values: Vec<i8>, claimed: u32, mode: Mode) -> Self {
        Certificate {
            values,
            claimed,
            mode,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First `(m, n)` with `mn ≤ N` and `v(mn) ≠ v(m)·v(n)`.
    pub fn multiplicativity_violation(&self) -> Option<(usize, usize)> {
        let v = &self.values;
        let big_n = v.len();
        if big_n >= 1 && v[0] != 1 {
            return Some((1, 1));
        }
        for m in 2..=big_n {
            for n in m..=big_n / m {
                if v[m * n - 1] != v[m - 1] * v[n - 1] {
                    return Some((m, n));
                }
            }
        }
        None
    }
}

/// Checks the claimed bound (and, in multiplicative mode, the pattern).
/// Returns whether the bound holds together with the full report.
pub fn verify_certificate(cert: &Certificate) -> Result<(bool, DiscrepancyReport)> {
    if let Some(i) = cert.values.iter().position(|&v| v != 1 && v != -1) {
        return Err(Error::NotSign(format!(
            "entry {} = {}",
            i + 1,
            cert.values[i]
        )));
    }
    if cert.mode == Mode::CompletelyMultiplicative {
        if let Some((m, n)) = cert.multiplicativity_violation() {
            return Err(Error::NotMultiplicative { m, n });
        }
    }
    let report = hap_discrepancy(&SeqWindow::from_signs(&cert.values)?);
    Ok((report.sup <= cert.claimed as f64 + 1e-9, report))
}
