//! Greatest common divisors of ternary forms, treating a form in `(x, y, z)`
//! as a polynomial in `x` whose coefficients are binary forms in `(y, z)`.

use crate::binary::BinaryForm;
use crate::error::AlgebraError;
use crate::poly::MultiPoly;

/// `x`-coefficient list, index = power of `x`. Entry `i` has degree `n - i`.
type XPoly = Vec<BinaryForm>;

fn x_degree(p: &XPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Gcd of all coefficients.
fn content(p: &XPoly) -> Result<BinaryForm, AlgebraError> {
    let mut acc: Option<BinaryForm> = None;
    for c in p.iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.monic(),
            Some(g) => BinaryForm::gcd(&g, c)?,
        });
    }
    acc.ok_or(AlgebraError::ZeroPolynomial)
}

fn primitive_part(p: &XPoly) -> Result<XPoly, AlgebraError> {
    let c = content(p)?;
    let top = x_degree(p).expect("nonzero");
    p[..=top]
        .iter()
        .map(|coef| {
            if coef.is_zero() {
                Ok(BinaryForm::zero(coef.field(), coef.degree() - c.degree()))
            } else {
                coef.div_exact(&c)
                    .ok_or(AlgebraError::Malformed("content does not divide".into()))
            }
        })
        .collect()
}

/// Pseudo-remainder of `a` by `b` in `x`: `lc(b)^k a - q b`, with `x`-degree
/// below that of `b`. Both are homogeneous, and so is the result.
fn pseudo_remainder(a: &XPoly, b: &XPoly) -> Result<XPoly, AlgebraError> {
    let db = x_degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r: XPoly = a.clone();
    while let Some(dr) = x_degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        // r <- lb * r - lr * x^shift * b
        let mut next: XPoly = r.iter().map(|c| c.mul(lb)).collect();
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            next[i + shift] = next[i + shift].sub(&lr.mul(bc))?;
        }
        debug_assert!(next[dr].is_zero());
        r = next;
    }
    let top = x_degree(&r).map_or(0, |d| d + 1);
    r.truncate(top.max(1));
    Ok(r)
}

/// Gcd of two forms in `(x, y, z)`, scaled so its leading term has
/// coefficient 1. `gcd(0, f)` is `f` made monic.
pub fn trivariate_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    if a.nvars() != 3 || b.nvars() != 3 {
        return Err(AlgebraError::ArityMismatch(3, a.nvars().max(b.nvars())));
    }
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(AlgebraError::BothZero),
        (true, false) => return Ok(b.monic()),
        (false, true) => return Ok(a.monic()),
        _ => {}
    }
    let (ax, bx) = (a.x_coefficients(), b.x_coefficients());
    let c = BinaryForm::gcd(&content(&ax)?, &content(&bx)?)?;
    let (pa, pb) = (primitive_part(&ax)?, primitive_part(&bx)?);
    let (mut u, mut v) = if x_degree(&pa) >= x_degree(&pb) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while x_degree(&v).is_some() {
        let r = pseudo_remainder(&u, &v)?;
        u = v;
        v = if x_degree(&r).is_none() {
            r
        } else {
            primitive_part(&r)?
        };
    }
    let u = primitive_part(&u)?;
    let scaled: XPoly = u.iter().map(|coef| coef.mul(&c)).collect();
    Ok(MultiPoly::from_x_coefficients(&scaled)?.monic())
}

/// True when the two forms have no common factor of positive degree.
pub fn coprime(a: &MultiPoly, b: &MultiPoly) -> Result<bool, AlgebraError> {
    Ok(trivariate_gcd(a, b)?.degree() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn p3(terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_i64_terms(f(), 3, terms).unwrap()
    }

    #[test]
    fn examples() {
        let y = MultiPoly::var(f(), 3, 1);
        let xy = p3(&[(&[1, 1, 0], 1)]);
        assert_eq!(trivariate_gcd(&y, &xy).unwrap(), y);
        let g = p3(&[(&[1, 0, 1], 1), (&[0, 2, 0], 1)]);
        assert_eq!(trivariate_gcd(&g, &y).unwrap().degree(), 0);
        assert!(coprime(&g, &y).unwrap());
        let zero = MultiPoly::zero(f(), 3, 2);
        assert_eq!(
            trivariate_gcd(&zero, &zero.clone()),
            Err(AlgebraError::BothZero)
        );
        assert_eq!(trivariate_gcd(&zero, &g).unwrap(), g.monic());
    }

    #[test]
    fn pure_binary_forms() {
        // y^2 z and y z^2 viewed as ternary forms
        let a = p3(&[(&[0, 2, 1], 1)]);
        let b = p3(&[(&[0, 1, 2], 3)]);
        assert_eq!(trivariate_gcd(&a, &b).unwrap(), p3(&[(&[0, 1, 1], 1)]));
    }

    #[test]
    fn shared_factor_through_content_and_x() {
        // (x + y)(y - z) and (x + y)(x - 2z) share x + y
        let l = p3(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
        let a = l.mul(&p3(&[(&[0, 1, 0], 1), (&[0, 0, 1], -1)])).unwrap();
        let b = l.mul(&p3(&[(&[1, 0, 0], 1), (&[0, 0, 1], -2)])).unwrap();
        assert_eq!(trivariate_gcd(&a, &b).unwrap(), l);
    }

    fn arb(deg: u32) -> impl Strategy<Value = MultiPoly> {
        any::<u64>()
            .prop_map(move |s| MultiPoly::random(f(), 3, deg, &mut ChaCha8Rng::seed_from_u64(s)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn recovers_common_factor(a in arb(2), b in arb(3), h in arb(2)) {
            // Random a, b are coprime with overwhelming probability.
            prop_assume!(coprime(&a, &b).unwrap());
            let g = trivariate_gcd(&a.mul(&h).unwrap(), &b.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(g, h.monic());
        }
    }
}
