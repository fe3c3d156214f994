//! Pretentious distance between multiplicative functions, prime sums and
//! Euler products, the factorisation `g = χ̃·n^{it}·h`, and the
//! short-window correlation diagnostics.

mod correlation;
mod distance;
mod euler;
mod factorize;

pub use correlation::{harmonic_range, log_avg_correlation, window_variance};
pub use distance::{
    pretentious_dist, pretentious_dist_sq, triangle_check, ModulatedCharacter, PrimeFn,
    PrimeFunction, MAX_T,
};
pub use euler::{exp_integral_e1, mertens_sum, prime_tail_factor, singular_series, singular_series_completed};
pub use factorize::{pretentious_factorize, PretentiousFactorization};
