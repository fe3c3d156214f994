//! Discrepancy of sequences along homogeneous arithmetic progressions
//! `{d, 2d, …, nd}`, together with the number theory needed to build the
//! classical low-discrepancy examples: Dirichlet characters, completely
//! multiplicative lifts such as the Borwein-Choi-Coons function, their
//! vector-valued and random variants, pretentious distances, the
//! Fourier-analytic reduction to random completely multiplicative
//! functions, and exact search for extremal bounded-discrepancy sequences.

pub mod discrepancy;
pub mod error;
pub mod mulfun;
pub mod numtheory;
pub mod pretentious;
pub mod reduction;
pub mod search;
pub mod sum;
pub mod unit;

pub use error::{Error, Result};
pub use num_complex::Complex64;
