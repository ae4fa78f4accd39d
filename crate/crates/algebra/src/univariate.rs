//! Dense univariate polynomials, used internally for binary forms
//! (dehomogenized at `y = 1`), interpolation, and Euclidean gcds.

use crate::field::{Fp, PrimeField};

/// Coefficients in ascending order of degree, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<Fp>,
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<Fp>) -> Self {
        while coeffs.last().is_some_and(Fp::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, t: Fp) -> Fp {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * t + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inverse().expect("leading coefficient is nonzero");
                UniPoly::new(self.field, self.coeffs.iter().map(|&c| c * inv).collect())
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = divisor.leading().unwrap().inverse().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv;
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= c * b;
            }
        }
        rem.truncate(dd);
        (
            UniPoly::new(self.field, quot),
            UniPoly::new(self.field, rem),
        )
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The unique polynomial of degree `< xs.len()` through the given
    /// points, by Newton divided differences. Nodes must be distinct.
    pub fn interpolate(field: PrimeField, xs: &[Fp], ys: &[Fp]) -> UniPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let denom = (xs[i] - xs[i - level]).inverse().expect("distinct nodes");
                dd[i] = (dd[i] - dd[i - 1]) * denom;
            }
        }
        // Horner on the Newton form.
        let mut acc = UniPoly::zero(field);
        for i in (0..n).rev() {
            let shifted = acc.mul(&UniPoly::new(field, vec![-xs[i], field.one()]));
            let mut c = shifted.coeffs;
            if c.is_empty() {
                c.push(field.zero());
            }
            c[0] += dd[i];
            acc = UniPoly::new(field, c);
        }
        acc
    }
}
