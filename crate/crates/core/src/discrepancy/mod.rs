//! Partial sums and discrepancy along homogeneous arithmetic progressions,
//! plus the vector-valued, smoothed and stochastic variants and the
//! quadratic-form certificate checker.

mod hap;
mod qform;
mod stochastic;
mod vector;
mod window;

pub use hap::{
    hap_discrepancy, hap_discrepancy_brute, hap_discrepancy_cm, hap_discrepancy_table,
    DiscrepancyReport,
};
pub use qform::{quadratic_form_check, quadratic_form_matrix, QuadFormReport, DENSE_LIMIT};
pub use stochastic::{adversarial_bcc, mc_second_moment, Adversary, MonteCarloEstimate};
pub use vector::vector_bcc_norm;
pub use window::{cesaro_sum, prefix_sums, SeqWindow};
