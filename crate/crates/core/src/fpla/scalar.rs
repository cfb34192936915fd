use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::is_prime;

/// An element of `F_p`, always reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { value: value.rem_euclid(p as i64) as u32, p })
    }

    /// Skips the primality test; `p` must already be known prime.
    pub(crate) fn raw(value: u32, p: u32) -> Self {
        debug_assert!(value < p);
        Self { value, p }
    }

    pub fn zero(p: u32) -> Self {
        Self { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Self { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::raw((self.value + other.value) % self.p, self.p))
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::raw((self.value + self.p - other.value) % self.p, self.p))
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::raw(((self.value as u64 * other.value as u64) % self.p as u64) as u32, self.p))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| Self::raw(inv_mod(self.value, self.p), self.p))
    }
}

// Operator forms panic on mixed moduli; use the `checked_*` forms to recover.
impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("mixed-modulus addition")
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("mixed-modulus subtraction")
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("mixed-modulus multiplication")
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::raw((self.p - self.value) % self.p, self.p)
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

/// Inverse of a nonzero residue modulo a prime, by Fermat.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}
