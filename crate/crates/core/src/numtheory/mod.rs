//! Primes, factorisation, base-q digits and Dirichlet characters.

mod characters;
mod digits;
mod primes;

pub use characters::{
    character_interval_sum, enumerate_characters, legendre_character, principal_character,
    DirichletCharacter, UnitGroup, MAX_MODULUS,
};
pub use digits::{base_digits, count_digit, valuation};
pub use primes::{factorize_u64, PrimeTable};

/// Modular exponentiation for moduli below 2^63.
pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Euler's totient by trial division.
pub fn euler_phi(n: u64) -> u64 {
    factorize_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}
