use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Base ring of every matrix and complex: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::InvalidRing(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::PrimeField(_))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Integers => None,
            Ring::PrimeField(p) => Some(*p),
        }
    }

    /// Canonical representative: identity over Z, `[0, p)` over F_p.
    pub fn reduce(&self, a: BigInt) -> BigInt {
        match self {
            Ring::Integers => a,
            Ring::PrimeField(p) => a.mod_floor(&BigInt::from(*p)),
        }
    }

    pub fn from_i64(&self, a: i64) -> BigInt {
        self.reduce(BigInt::from(a))
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        match self {
            Ring::Integers => a.abs().is_one(),
            Ring::PrimeField(_) => !a.is_zero(),
        }
    }

    /// Inverse of a unit. Panics on non-units.
    pub fn unit_inverse(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => {
                assert!(a.abs().is_one(), "{a} is not a unit in Z");
                a.clone()
            }
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                let a = a.mod_floor(&p);
                assert!(!a.is_zero(), "0 is not invertible mod {p}");
                let ext = a.extended_gcd(&p);
                ext.x.mod_floor(&p)
            }
        }
    }

    /// Size used to rank pivot candidates.
    pub(crate) fn pivot_size(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => a.abs(),
            Ring::PrimeField(_) => a.clone(),
        }
    }

    /// Quotient `q` with `a - q*b` strictly smaller than `b` (Z), or exactly
    /// zero (F_p).
    pub(crate) fn quotient(&self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            Ring::Integers => a.div_floor(b),
            Ring::PrimeField(_) => self.reduce(a * self.unit_inverse(b)),
        }
    }

    pub(crate) fn divides(&self, b: &BigInt, a: &BigInt) -> bool {
        match self {
            Ring::Integers => {
                if b.is_zero() {
                    a.is_zero()
                } else {
                    (a % b).is_zero()
                }
            }
            Ring::PrimeField(_) => !b.is_zero() || a.is_zero(),
        }
    }

    /// Exact division, assuming `b | a`.
    pub(crate) fn exact_div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            Ring::Integers => a / b,
            Ring::PrimeField(_) => self.reduce(a * self.unit_inverse(b)),
        }
    }

    /// `(-1)^k` as a ring element.
    pub fn sign(&self, k: i64) -> BigInt {
        if k.rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            self.reduce(-BigInt::one())
        }
    }

    /// Short textual name used in reports and documents.
    pub fn label(&self) -> String {
        match self {
            Ring::Integers => "Z".to_string(),
            Ring::PrimeField(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
