//! Textual names for the library's functions, shared by several subcommands:
//! `one`, `bcc`, `bcc-variant`, `lifted:<p>:<±1>`, `legendre:<p>`,
//! `char:<q>:<i>` (the `i`-th character mod `q` in enumeration order),
//! `modchar:<q>:<i>:<t>` and, where vectors are accepted, `vector-bcc:<D>`.

use std::sync::Arc;

use hapdisc::mulfun::{bcc, lifted_legendre, CompletelyMultiplicativeFn};
use hapdisc::numtheory::{enumerate_characters, legendre_character, DirichletCharacter, PrimeTable};
use hapdisc::pretentious::{ModulatedCharacter, PrimeFunction};
use hapdisc::reduction::{FactoredSequence, VectorBcc};

use crate::CliError;

pub fn character(q: u64, index: usize) -> Result<DirichletCharacter, CliError> {
    let mut chars = enumerate_characters(q)?;
    if index >= chars.len() {
        return Err(CliError::Input(format!(
            "character index {index} out of range: modulus {q} has {} characters",
            chars.len()
        )));
    }
    Ok(chars.swap_remove(index))
}

fn parse<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.parse()
        .map_err(|_| CliError::Input(format!("cannot parse {what} from {s:?}")))
}

fn sign(s: &str) -> Result<i8, CliError> {
    match s {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(CliError::Input(format!("{s:?} is not a sign"))),
    }
}

/// A completely multiplicative function by name.
pub fn multiplicative(spec: &str, table: Arc<PrimeTable>) -> Result<CompletelyMultiplicativeFn, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    Ok(match parts.as_slice() {
        ["one"] => CompletelyMultiplicativeFn::one(table),
        ["bcc"] => bcc(table),
        ["bcc-variant"] => lifted_legendre(3, -1, table)?,
        ["lifted", p, s] => lifted_legendre(parse(p, "prime")?, sign(s)?, table)?,
        _ => return Err(CliError::Input(format!("unknown multiplicative function {spec:?}"))),
    })
}

/// Anything with values at primes.
pub fn prime_function(spec: &str, table: Arc<PrimeTable>) -> Result<Box<dyn PrimeFunction>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    Ok(match parts.as_slice() {
        ["legendre", p] => Box::new(legendre_character(parse(p, "prime")?)?),
        ["char", q, i] => Box::new(character(parse(q, "modulus")?, parse(i, "index")?)?),
        ["modchar", q, i, t] => Box::new(ModulatedCharacter::new(
            character(parse(q, "modulus")?, parse(i, "index")?)?,
            parse(t, "t")?,
        )?),
        _ => Box::new(multiplicative(spec, table)?),
    })
}

/// A sequence that can be pulled back to exponent space.
pub fn factored(spec: &str, table: Arc<PrimeTable>) -> Result<Box<dyn FactoredSequence>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    Ok(match parts.as_slice() {
        ["vector-bcc", dim] => Box::new(VectorBcc {
            chi: legendre_character(3)?,
            dim: parse(dim, "dimension")?,
        }),
        _ => Box::new(multiplicative(spec, table)?),
    })
}
