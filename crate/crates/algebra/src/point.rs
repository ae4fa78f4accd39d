use std::fmt;

use rand::Rng;

use crate::error::AlgebraError;
use crate::field::{Fp, PrimeField};

/// A point of projective 2- or 3-space over a prime field, normalized so
/// that its first nonzero coordinate is 1. Equal points have identical
/// coordinate vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Fp>,
}

impl ProjectivePoint {
    pub fn new(mut coords: Vec<Fp>) -> Result<Self, AlgebraError> {
        let Some(k) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(AlgebraError::Malformed("all coordinates are zero".into()));
        };
        let inv = coords[k].inverse()?;
        for c in coords.iter_mut() {
            *c *= inv;
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_u64(field: PrimeField, coords: &[u64]) -> Result<Self, AlgebraError> {
        Self::new(coords.iter().map(|&c| field.elem(c)).collect())
    }

    /// The coordinate point with a 1 in position `i`.
    pub fn coordinate(field: PrimeField, n: usize, i: usize) -> Self {
        let mut coords = vec![field.zero(); n];
        coords[i] = field.one();
        ProjectivePoint { coords }
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Self {
        loop {
            let coords: Vec<Fp> = (0..n).map(|_| field.random(rng)).collect();
            if let Ok(p) = Self::new(coords) {
                return p;
            }
        }
    }

    pub fn coords(&self) -> &[Fp] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> PrimeField {
        self.coords[0].field()
    }

    pub fn first_nonzero(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("normalized point is nonzero")
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
