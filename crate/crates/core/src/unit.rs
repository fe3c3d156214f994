//! Unit-modulus values: exact roots of unity with a floating fallback.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_integer::Integer;

/// The root of unity `e(num/den) = exp(2πi·num/den)`, kept as a reduced
/// fraction of a full turn with `0 ≤ num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero denominator");
        let num = num % den;
        let g = num.gcd(&den);
        RootOfUnity {
            num: num / g,
            den: den / g,
        }
    }

    pub fn from_sign(s: i8) -> Self {
        if s >= 0 {
            Self::ONE
        } else {
            Self::MINUS_ONE
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn conj(self) -> Self {
        RootOfUnity::new(self.den - self.num, self.den)
    }

    pub fn pow(self, e: u64) -> Self {
        let num = ((self.num as u128 * e as u128) % self.den as u128) as u64;
        RootOfUnity::new(num, self.den)
    }

    /// `Some(±1)` when the value is real.
    pub fn as_sign(&self) -> Option<i8> {
        match (self.num, self.den) {
            (0, 1) => Some(1),
            (1, 2) => Some(-1),
            _ => None,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self.as_sign() {
            Some(s) => Complex64::new(s as f64, 0.0),
            None => {
                // Quarter turns are exact.
                if self.den == 4 {
                    return if self.num == 1 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                Complex64::from_polar(1.0, TAU * self.num as f64 / self.den as f64)
            }
        }
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let den = self.den.lcm(&rhs.den);
        let a = self.num as u128 * (den / self.den) as u128;
        let b = rhs.num as u128 * (den / rhs.den) as u128;
        RootOfUnity::new(((a + b) % den as u128) as u64, den)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}

/// A point of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Unit {
    Root(RootOfUnity),
    Float(Complex64),
}

impl Unit {
    pub const ONE: Unit = Unit::Root(RootOfUnity::ONE);
    pub const MINUS_ONE: Unit = Unit::Root(RootOfUnity::MINUS_ONE);

    /// Normalises `z` onto the unit circle; `None` if `z` is too far from it.
    pub fn from_complex(z: Complex64, tol: f64) -> Option<Unit> {
        let r = z.norm();
        if (r - 1.0).abs() > tol {
            return None;
        }
        Some(Unit::Float(z / r))
    }

    /// `exp(iθ)`.
    pub fn from_angle(theta: f64) -> Unit {
        Unit::Float(Complex64::from_polar(1.0, theta))
    }

    pub fn from_sign(s: i8) -> Unit {
        Unit::Root(RootOfUnity::from_sign(s))
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Unit::Root(r) => r.to_complex(),
            Unit::Float(z) => z,
        }
    }

    pub fn conj(self) -> Unit {
        match self {
            Unit::Root(r) => Unit::Root(r.conj()),
            Unit::Float(z) => Unit::Float(z.conj()),
        }
    }

    pub fn pow(self, e: u32) -> Unit {
        match self {
            Unit::Root(r) => Unit::Root(r.pow(e as u64)),
            Unit::Float(z) => Unit::Float(z.powu(e)),
        }
    }

    pub fn as_sign(&self) -> Option<i8> {
        match self {
            Unit::Root(r) => r.as_sign(),
            Unit::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Unit::Root(_))
    }
}

impl Mul for Unit {
    type Output = Unit;

    fn mul(self, rhs: Unit) -> Unit {
        match (self, rhs) {
            (Unit::Root(a), Unit::Root(b)) => Unit::Root(a * b),
            (a, b) => Unit::Float(a.to_complex() * b.to_complex()),
        }
    }
}

impl From<RootOfUnity> for Unit {
    fn from(r: RootOfUnity) -> Unit {
        Unit::Root(r)
    }
}
