//! Binary forms in `(y, z)`.

use std::fmt;

use crate::error::AlgebraError;
use crate::field::{Fp, PrimeField};
use crate::univariate::UniPoly;

/// A homogeneous polynomial `sum_k c_k y^(n-k) z^k` stored densely; the
/// coefficient list always has exactly `degree + 1` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: PrimeField,
    coeffs: Vec<Fp>,
}

impl BinaryForm {
    pub fn new(field: PrimeField, coeffs: Vec<Fp>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form has degree + 1 coefficients"
        );
        BinaryForm { field, coeffs }
    }

    pub fn from_u64(field: PrimeField, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero(field: PrimeField, degree: u32) -> Self {
        BinaryForm {
            field,
            coeffs: vec![field.zero(); degree as usize + 1],
        }
    }

    pub fn constant(c: Fp) -> Self {
        BinaryForm {
            field: c.field(),
            coeffs: vec![c],
        }
    }

    /// The linear form `mu*y - lambda*z`, vanishing exactly at `(lambda:mu)`.
    pub fn linear_vanishing_at(lambda: Fp, mu: Fp) -> Self {
        BinaryForm {
            field: lambda.field(),
            coeffs: vec![mu, -lambda],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Fp::is_zero)
    }

    pub fn eval(&self, y: Fp, z: Fp) -> Fp {
        let n = self.coeffs.len();
        let mut ypow = vec![self.field.one(); n];
        for k in 1..n {
            ypow[k] = ypow[k - 1] * y;
        }
        let mut zpow = self.field.one();
        let mut acc = self.field.zero();
        for (k, &c) in self.coeffs.iter().enumerate() {
            acc += c * ypow[n - 1 - k] * zpow;
            zpow *= z;
        }
        acc
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm, AlgebraError> {
        if self.degree() != other.degree() {
            return Err(AlgebraError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(BinaryForm {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm, AlgebraError> {
        self.add(&other.scale(-self.field.one()))
    }

    pub fn scale(&self, c: Fp) -> BinaryForm {
        BinaryForm {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm {
            field: self.field,
            coeffs: out,
        }
    }

    /// Dehomogenization at `y = 1`, a polynomial in `z`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.clone())
    }

    /// Rehomogenizes `p(z)` to a form of the given degree.
    pub fn homogenize(p: &UniPoly, field: PrimeField, degree: u32) -> BinaryForm {
        let mut coeffs = p.coeffs().to_vec();
        assert!(
            coeffs.len() <= degree as usize + 1,
            "polynomial exceeds target degree"
        );
        coeffs.resize(degree as usize + 1, field.zero());
        BinaryForm { field, coeffs }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        if divisor.is_zero() || divisor.degree() > self.degree() {
            return None;
        }
        let qdeg = self.degree() - divisor.degree();
        if self.is_zero() {
            return Some(BinaryForm::zero(self.field, qdeg));
        }
        let (q, r) = self.dehomogenize().div_rem(&divisor.dehomogenize());
        if !r.is_zero() || q.degree().is_some_and(|d| d > qdeg as usize) {
            return None;
        }
        Some(Self::homogenize(&q, self.field, qdeg))
    }

    /// Largest `k` with `(mu*y - lambda*z)^k` dividing the form.
    pub fn root_multiplicity(&self, lambda: Fp, mu: Fp) -> Result<u32, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroForm);
        }
        let lin = Self::linear_vanishing_at(lambda, mu);
        let mut cur = self.clone();
        let mut k = 0;
        while cur.degree() > 0 {
            match cur.div_exact(&lin) {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => break,
            }
        }
        Ok(k)
    }

    /// Exponent of the largest power of `y` dividing the form, i.e. the
    /// multiplicity of the root `(0:1)`, which dehomogenizing at `y = 1` loses.
    pub fn y_power(&self) -> u32 {
        let d = self.dehomogenize().degree().map_or(0, |d| d as u32);
        self.degree() - d
    }

    /// Normalized so the coefficient of the highest power of `z` is 1.
    pub fn monic(&self) -> BinaryForm {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(&lc) => self.scale(lc.inverse().unwrap()),
        }
    }

    /// Monic gcd, including common powers of `y` (roots at `(0:1)`).
    pub fn gcd(a: &BinaryForm, b: &BinaryForm) -> Result<BinaryForm, AlgebraError> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Err(AlgebraError::BothZero),
            (true, false) => return Ok(b.monic()),
            (false, true) => return Ok(a.monic()),
            _ => {}
        }
        let g = a.dehomogenize().gcd(&b.dehomogenize());
        let ypow = a.y_power().min(b.y_power());
        let gdeg = g.degree().unwrap_or(0) as u32;
        let core = Self::homogenize(&g, a.field, gdeg);
        let mut ycoeffs = vec![a.field.zero(); ypow as usize + 1];
        ycoeffs[0] = a.field.one();
        Ok(BinaryForm::new(a.field, ycoeffs).mul(&core))
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree() as usize;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*y^{}*z^{k}", n - k)?;
        }
        if first {
            write!(f, "0[deg {n}]")?;
        }
        Ok(())
    }
}
