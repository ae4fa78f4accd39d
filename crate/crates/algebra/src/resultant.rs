//! Sylvester resultants and the eliminant of two plane curves.

use crate::binary::BinaryForm;
use crate::error::AlgebraError;
use crate::field::{Fp, PrimeField};
use crate::linalg::Matrix;
use crate::poly::MultiPoly;
use crate::univariate::UniPoly;

/// The Sylvester matrix of `f` and `g`, `f`-rows first. Coefficients are
/// given in ascending order and the declared degrees are `len - 1`.
pub fn sylvester_matrix(field: PrimeField, f: &[Fp], g: &[Fp]) -> Matrix {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut s = Matrix::zeros(field, size, size);
    for i in 0..n {
        for (k, &c) in f.iter().rev().enumerate() {
            s[(i, i + k)] = c;
        }
    }
    for i in 0..m {
        for (k, &c) in g.iter().rev().enumerate() {
            s[(n + i, i + k)] = c;
        }
    }
    s
}

/// Resultant of two univariate polynomials with declared degrees
/// `f.len() - 1` and `g.len() - 1`, as the Sylvester determinant with the
/// `f`-rows first.
pub fn resultant_univariate(f: &[Fp], g: &[Fp]) -> Result<Fp, AlgebraError> {
    if f.is_empty() || g.is_empty() {
        return Err(AlgebraError::Malformed("empty coefficient array".into()));
    }
    if f.len() == 1 && g.len() == 1 {
        return Err(AlgebraError::BothConstant);
    }
    let field = f[0].field();
    Ok(sylvester_matrix(field, f, g).determinant())
}

/// Resultant with respect to `x` of two forms in `(x, y, z)`, as a binary
/// form in `(y, z)` of degree `deg F * deg G`.
///
/// Both forms must contain the pure power of `x` of their degree. The
/// eliminant is evaluated at `(y, z) = (t, 1)` for `deg F * deg G + 1`
/// consecutive values of `t`, interpolated, and rehomogenized; a drop in
/// degree of the interpolant is a factor of `z`, i.e. roots at `(1:0)`.
pub fn eliminant(f: &MultiPoly, g: &MultiPoly) -> Result<BinaryForm, AlgebraError> {
    if f.nvars() != 3 || g.nvars() != 3 {
        return Err(AlgebraError::ArityMismatch(3, f.nvars().max(g.nvars())));
    }
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let field = f.field();
    let (a, b) = (f.degree() as usize, g.degree() as usize);
    if a == 0 && b == 0 {
        return Err(AlgebraError::BothConstant);
    }
    let fx = f.x_coefficients();
    let gx = g.x_coefficients();
    if fx[a].is_zero() || gx[b].is_zero() {
        return Err(AlgebraError::BadLeadingCoefficient);
    }
    let total = a * b;
    let nodes = total as u64 + 1;
    if nodes > field.modulus() {
        return Err(AlgebraError::FieldTooSmall {
            modulus: field.modulus(),
            needed: nodes,
        });
    }
    let one = field.one();
    let ts: Vec<Fp> = (0..nodes).map(|t| field.elem(t)).collect();
    let values: Vec<Fp> = ts
        .iter()
        .map(|&t| {
            let fc: Vec<Fp> = fx.iter().map(|c| c.eval(t, one)).collect();
            let gc: Vec<Fp> = gx.iter().map(|c| c.eval(t, one)).collect();
            sylvester_matrix(field, &fc, &gc).determinant()
        })
        .collect();
    let r = UniPoly::interpolate(field, &ts, &values);
    if r.is_zero() {
        return Err(AlgebraError::CommonComponent);
    }
    // r(t) = R(t, 1); the coefficient of t^j is that of y^j z^(total - j).
    let mut coeffs = vec![field.zero(); total + 1];
    for (j, &c) in r.coeffs().iter().enumerate() {
        coeffs[total - j] = c;
    }
    Ok(BinaryForm::new(field, coeffs))
}
