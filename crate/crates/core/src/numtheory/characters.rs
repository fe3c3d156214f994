use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;

use super::{factorize_u64, pow_mod};
use crate::error::{domain, Result};
use crate::unit::RootOfUnity;

/// Largest modulus accepted by [`enumerate_characters`].
pub const MAX_MODULUS: u64 = 1_000_000;

const NOT_UNIT: u32 = u32::MAX;

/// One prime-power piece `p^e` of `(Z/q)^×`, split into at most two cyclic
/// factors. Odd `p`: a single factor generated by a primitive root. `2^e`
/// with `e ≥ 3`: the sign factor `{±1}` and the factor generated by 5.
#[derive(Debug, Clone)]
struct PrimePowerPiece {
    prime: u64,
    exponent: u32,
    modulus: u64,
    orders: Vec<u64>,
    /// Discrete logarithms of every residue mod `p^e`; `NOT_UNIT` off units.
    logs: Vec<[u32; 2]>,
}

impl PrimePowerPiece {
    fn new(prime: u64, exponent: u32) -> Self {
        let modulus = prime.pow(exponent);
        let mut logs = vec![[NOT_UNIT; 2]; modulus as usize];
        let orders;
        if prime == 2 {
            match exponent {
                1 => {
                    orders = vec![];
                    logs[1] = [0, 0];
                }
                2 => {
                    orders = vec![2];
                    logs[1] = [0, 0];
                    logs[3] = [1, 0];
                }
                _ => {
                    let five_order = modulus / 4;
                    orders = vec![2, five_order];
                    let mut x = 1u64;
                    for k in 0..five_order {
                        logs[x as usize] = [0, k as u32];
                        logs[(modulus - x) as usize] = [1, k as u32];
                        x = x * 5 % modulus;
                    }
                }
            }
        } else {
            let order = modulus / prime * (prime - 1);
            let g = primitive_root_prime_power(prime);
            orders = vec![order];
            let mut x = 1u64;
            for k in 0..order {
                logs[x as usize] = [k as u32, 0];
                x = x * g % modulus;
            }
        }
        PrimePowerPiece {
            prime,
            exponent,
            modulus,
            orders,
            logs,
        }
    }

    /// Conductor exponent of the component character with the given indices.
    fn conductor(&self, idx: &[u64]) -> u64 {
        let p = self.prime;
        let e = self.exponent;
        if idx.iter().all(|&k| k == 0) {
            return 1;
        }
        if p != 2 {
            // Trivial on 1 + p^f Z (order p^(e-f)) iff p^(e-f) | k.
            let k = idx[0];
            let mut v = 0;
            let mut kk = k;
            while kk.is_multiple_of(p) && v < e - 1 {
                kk /= p;
                v += 1;
            }
            return p.pow(e - v);
        }
        if e == 2 {
            return 4;
        }
        let b = idx[1];
        if b == 0 {
            return 4;
        }
        let v = b.trailing_zeros().min(e - 2);
        1 << (e - v)
    }
}

/// A primitive root modulo `p^e` for every `e` (odd prime `p`).
fn primitive_root_prime_power(p: u64) -> u64 {
    let factors: Vec<u64> = factorize_u64(p - 1).into_iter().map(|(r, _)| r).collect();
    let g = (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .unwrap_or(1);
    let p2 = p * p;
    if pow_mod(g, p - 1, p2) == 1 {
        g + p
    } else {
        g
    }
}

/// The group `(Z/q)^×` decomposed into cyclic factors via CRT, with
/// discrete-log tables shared by every character of modulus `q`.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u64,
    pieces: Vec<PrimePowerPiece>,
    exponent: u64,
}

impl UnitGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 || q > MAX_MODULUS {
            return Err(domain(format!(
                "character modulus must lie in 1..={MAX_MODULUS}, got {q}"
            )));
        }
        let pieces: Vec<PrimePowerPiece> = factorize_u64(q)
            .into_iter()
            .map(|(p, e)| PrimePowerPiece::new(p, e))
            .collect();
        let exponent = pieces
            .iter()
            .flat_map(|pc| pc.orders.iter().copied())
            .fold(1u64, |a, b| a.lcm(&b));
        Ok(UnitGroup {
            modulus: q,
            pieces,
            exponent,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Orders of the cyclic factors, in index order.
    pub fn orders(&self) -> Vec<u64> {
        self.pieces
            .iter()
            .flat_map(|pc| pc.orders.iter().copied())
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.orders().iter().product()
    }

    /// Exponent of the group: every character value is an `exponent`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Discrete-log vector of `n`, or `None` if `gcd(n, q) > 1`.
    pub fn dlog(&self, n: u64) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(4);
        for pc in &self.pieces {
            let l = pc.logs[(n % pc.modulus) as usize];
            if l[0] == NOT_UNIT {
                return None;
            }
            for (slot, _) in pc.orders.iter().enumerate() {
                out.push(l[slot] as u64);
            }
        }
        Some(out)
    }
}

/// A Dirichlet character modulo `q`, stored as its index vector on the
/// cyclic factors of `(Z/q)^×`. Values are exact roots of unity.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    index: Vec<u64>,
    conductor: u64,
}

impl DirichletCharacter {
    /// The character `n ↦ e(Σ index_i · log_i(n) / order_i)`.
    pub fn from_index(group: Arc<UnitGroup>, index: Vec<u64>) -> Result<Self> {
        let orders = group.orders();
        if index.len() != orders.len() || index.iter().zip(&orders).any(|(k, o)| k >= o) {
            return Err(domain("character index does not match the group"));
        }
        let mut conductor = 1;
        let mut at = 0;
        for pc in &group.pieces {
            let len = pc.orders.len();
            conductor *= pc.conductor(&index[at..at + len]);
            at += len;
        }
        Ok(DirichletCharacter {
            group,
            index,
            conductor,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.index.iter().all(|&k| k == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.group.modulus
    }

    pub fn index(&self) -> &[u64] {
        &self.index
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    /// `χ(n)` as an exact root of unity, `None` where `χ(n) = 0`.
    pub fn value(&self, n: u64) -> Option<RootOfUnity> {
        let logs = self.group.dlog(n)?;
        let l = self.group.exponent;
        let orders = self.group.orders();
        let mut num: u128 = 0;
        for ((k, lg), o) in self.index.iter().zip(&logs).zip(&orders) {
            num += *k as u128 * *lg as u128 * (l / o) as u128;
        }
        Some(RootOfUnity::new((num % l as u128) as u64, l))
    }

    pub fn eval(&self, n: u64) -> Complex64 {
        self.value(n)
            .map_or(Complex64::new(0.0, 0.0), RootOfUnity::to_complex)
    }

    /// Value table indexed by `n mod q`.
    pub fn values(&self) -> Vec<Option<RootOfUnity>> {
        (0..self.modulus()).map(|n| self.value(n)).collect()
    }

    pub fn values_complex(&self) -> Vec<Complex64> {
        (0..self.modulus()).map(|n| self.eval(n)).collect()
    }

    /// Real-valued (all values in {0, ±1}).
    pub fn is_real(&self) -> bool {
        (1..self.modulus()).all(|n| self.value(n).is_none_or(|r| r.den() <= 2))
    }

    pub fn mul(&self, other: &DirichletCharacter) -> Result<DirichletCharacter> {
        if other.modulus() != self.modulus() {
            return Err(domain("characters of different moduli"));
        }
        let orders = self.group.orders();
        let index = self
            .index
            .iter()
            .zip(&other.index)
            .zip(&orders)
            .map(|((a, b), o)| (a + b) % o)
            .collect();
        DirichletCharacter::from_index(self.group.clone(), index)
    }

    pub fn conj(&self) -> DirichletCharacter {
        let orders = self.group.orders();
        let index = self
            .index
            .iter()
            .zip(&orders)
            .map(|(k, o)| (o - k) % o)
            .collect();
        DirichletCharacter::from_index(self.group.clone(), index)
            .expect("conjugate index is in range")
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.index == other.index
    }
}

impl Eq for DirichletCharacter {}

/// All `φ(q)` characters modulo `q`, principal first, then in lexicographic
/// order of the index vector.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(UnitGroup::new(q)?);
    let orders = group.orders();
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut index = vec![0u64; orders.len()];
    for _ in 0..total {
        out.push(DirichletCharacter::from_index(group.clone(), index.clone())?);
        for slot in (0..index.len()).rev() {
            index[slot] += 1;
            if index[slot] < orders[slot] {
                break;
            }
            index[slot] = 0;
        }
    }
    Ok(out)
}

pub fn principal_character(q: u64) -> Result<DirichletCharacter> {
    let group = Arc::new(UnitGroup::new(q)?);
    let index = vec![0; group.orders().len()];
    DirichletCharacter::from_index(group, index)
}

/// The Legendre symbol `(n/p)` for an odd prime `p`.
pub fn legendre_character(p: u64) -> Result<DirichletCharacter> {
    if p < 3 || factorize_u64(p) != [(p, 1)] {
        return Err(domain(format!("{p} is not an odd prime")));
    }
    let group = Arc::new(UnitGroup::new(p)?);
    DirichletCharacter::from_index(group, vec![(p - 1) / 2])
}

/// `∑_{a ≤ n ≤ b} χ(n)`, using that a full period sums to `φ(q)` for the
/// principal character and to 0 otherwise.
pub fn character_interval_sum(chi: &DirichletCharacter, a: u64, b: u64) -> Complex64 {
    if a > b {
        return Complex64::new(0.0, 0.0);
    }
    let q = chi.modulus();
    let len = b - a + 1;
    let periods = len / q;
    let mut sum = if chi.is_principal() {
        Complex64::new((periods * chi.group.order()) as f64, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let start = a + periods * q;
    for n in start..=b {
        sum += chi.eval(n);
    }
    sum
}
