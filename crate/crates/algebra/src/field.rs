//! Prime field arithmetic.
//!
//! A [`PrimeField`] is a validated odd prime modulus below 2^63; an [`Fp`]
//! is a residue tagged with the field it lives in, so the usual arithmetic
//! operators work without threading a context through every call.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::error::AlgebraError;

/// Default modulus, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Smallest modulus accepted without an explicit override.
pub const MIN_PRODUCTION_PRIME: u64 = DEFAULT_PRIME;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Accepts any prime `p` with `5 <= p < 2^63`.
    ///
    /// Characteristics 2 and 3 are rejected: derivative-based multiplicity
    /// conditions and interpolation nodes need more room than that.
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p < 5 || p >= 1 << 63 || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    /// Like [`PrimeField::new`] but additionally requires `p >= 2^31 - 1`.
    pub fn production(p: u64) -> Result<Self, AlgebraError> {
        if p < MIN_PRODUCTION_PRIME {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Self::new(p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> Fp {
        Fp { v: 0, field: *self }
    }

    pub fn one(&self) -> Fp {
        Fp { v: 1, field: *self }
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp {
            v: v % self.p,
            field: *self,
        }
    }

    pub fn from_i64(&self, v: i64) -> Fp {
        let r = v.rem_euclid(self.p as i64) as u64;
        Fp { v: r, field: *self }
    }

    /// Parses a decimal residue; values outside `[0, p)` are rejected.
    pub fn parse(&self, s: &str) -> Result<Fp, AlgebraError> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(s.to_string()))?;
        if v >= self.p {
            return Err(AlgebraError::Parse(s.to_string()));
        }
        Ok(Fp { v, field: *self })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp {
            v: rng.gen_range(0..self.p),
            field: *self,
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp {
            v: rng.gen_range(1..self.p),
            field: *self,
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

/// An element of a prime field. `0 <= value < p` always holds.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    field: PrimeField,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    pub fn is_one(&self) -> bool {
        self.v == 1
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(self) -> Result<Fp, AlgebraError> {
        if self.v == 0 {
            return Err(AlgebraError::ZeroInverse);
        }
        let p = self.field.p as i128;
        let (mut r0, mut r1) = (p, self.v as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp {
            v: s0.rem_euclid(p) as u64,
            field: self.field,
        })
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        let s = self.v + rhs.v;
        let p = self.field.p;
        Fp {
            v: if s >= p { s - p } else { s },
            field: self.field,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        let v = if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            self.v + self.field.p - rhs.v
        };
        Fp {
            v,
            field: self.field,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        let v = ((self.v as u128 * rhs.v as u128) % self.field.p as u128) as u64;
        Fp {
            v,
            field: self.field,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.v == 0 {
            self
        } else {
            Fp {
                v: self.field.p - self.v,
                field: self.field,
            }
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_small_field() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.elem(2).inverse().unwrap(), f.elem(4));
        assert_eq!(f.elem(1).inverse().unwrap(), f.elem(1));
        assert_eq!(f.elem(0).inverse(), Err(AlgebraError::ZeroInverse));
    }

    #[test]
    fn primality() {
        let primes = [
            5u64,
            7,
            97,
            65_537,
            DEFAULT_PRIME,
            2_305_843_009_213_693_951,
        ];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        // Carmichael numbers and a strong pseudoprime to base 2.
        for n in [561u64, 1105, 2047, 3_215_031_751, DEFAULT_PRIME - 2] {
            assert!(!is_prime(n), "{n}");
        }
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::production(101).is_err());
        assert!(PrimeField::production(DEFAULT_PRIME).is_ok());
    }

    #[test]
    fn from_i64_wraps() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), f.elem(6));
        assert_eq!(f.from_i64(-15), f.elem(6));
        assert_eq!(f.parse("6").unwrap(), f.elem(6));
        assert!(f.parse("7").is_err());
        assert!(f.parse("x").is_err());
    }

    proptest! {
        #[test]
        fn inverse_is_inverse(a in 1u64..DEFAULT_PRIME) {
            let f = PrimeField::default();
            let x = f.elem(a);
            prop_assert!((x * x.inverse().unwrap()).is_one());
        }

        #[test]
        fn fermat(a in 1u64..DEFAULT_PRIME) {
            let f = PrimeField::default();
            prop_assert!(f.elem(a).pow(DEFAULT_PRIME - 1).is_one());
        }
    }
}
