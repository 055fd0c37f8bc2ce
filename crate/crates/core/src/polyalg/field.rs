use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

static COEFF_BIT_BOUND: AtomicU64 = AtomicU64::new(1 << 14);

/// Sets the largest numerator/denominator size (in bits) tolerated during
/// Gröbner computations over the rationals.
pub fn set_coefficient_bit_bound(bits: u64) {
    COEFF_BIT_BOUND.store(bits, Ordering::Relaxed);
}

pub fn coefficient_bit_bound() -> u64 {
    COEFF_BIT_BOUND.load(Ordering::Relaxed)
}

/// Coefficient field: the rationals (characteristic 0) or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
}

/// A field element. Which variant is valid is fixed by the owning [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Invalid(format!(
                "field characteristic must be 0 or a prime below 2^31, got {p}"
            )));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Coeff {
        if self.is_rational() {
            Coeff::Rat(BigRational::zero())
        } else {
            Coeff::Mod(0)
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        if self.is_rational() {
            Coeff::Rat(BigRational::from_integer(BigInt::from(v)))
        } else {
            let p = self.characteristic as i64;
            Coeff::Mod(v.rem_euclid(p) as u32)
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        if self.is_rational() {
            Coeff::Rat(BigRational::from_integer(v.clone()))
        } else {
            let p = BigInt::from(self.characteristic);
            let r = ((v % &p) + &p) % &p;
            Coeff::Mod(r.to_u32().expect("residue fits in u32"))
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Invalid(format!(
                "denominator {den} is zero in characteristic {}",
                self.characteristic
            )));
        }
        Ok(self.div(&self.from_bigint(num), &d))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *y as u64) % self.characteristic as u64) as u32)
            }
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Mod(0) => Coeff::Mod(0),
            Coeff::Mod(x) => Coeff::Mod(self.characteristic - x),
            Coeff::Rat(x) => Coeff::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % self.characteristic as u64) as u32)
            }
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Mod(x) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Mod(pow_mod(*x as u64, self.characteristic as u64 - 2, self.characteristic as u64) as u32)
            }
            Coeff::Rat(x) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Rat(x.recip())
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Mod(x) => *x == 0,
            Coeff::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Mod(x) => *x == 1,
            Coeff::Rat(x) => x.is_one(),
        }
    }

    /// Size in bits of the larger of numerator and denominator (0 for prime fields).
    pub fn bits(&self) -> u64 {
        match self {
            Coeff::Mod(_) => 0,
            Coeff::Rat(x) => x.numer().bits().max(x.denom().bits()),
        }
    }

    /// Signed integer representative for display: balanced residues over
    /// prime fields, the value itself over the rationals.
    pub(crate) fn signed_repr(&self, characteristic: u32) -> (bool, String) {
        match self {
            Coeff::Mod(x) => {
                let x = *x as i64;
                let p = characteristic as i64;
                let v = if x > p / 2 { x - p } else { x };
                (v < 0, v.abs().to_string())
            }
            Coeff::Rat(x) => {
                let neg = x.is_negative();
                let a = x.abs();
                let s = if a.denom().is_one() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                };
                (neg, s)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "QQ")
        } else {
            write!(f, "F{}", self.characteristic)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(2_147_483_659).is_err());
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::prime(5).unwrap();
        for v in 1..5 {
            let a = f.from_i64(v);
            assert!(f.mul(&a, &f.inv(&a)).is_one());
        }
        assert_eq!(f.from_i64(-1), Coeff::Mod(4));
        assert_eq!(f.from_i64(-1).signed_repr(5), (true, "1".to_string()));
    }

    #[test]
    fn rational_fraction() {
        let q = FieldSpec::rationals();
        let c = q.from_fraction(&BigInt::from(6), &BigInt::from(4)).unwrap();
        assert_eq!(c.signed_repr(0), (false, "3/2".to_string()));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(f5.from_fraction(&BigInt::from(1), &BigInt::from(10)).is_err());
    }
}
