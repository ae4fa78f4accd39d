//! Sparse homogeneous polynomials in 2, 3 or 4 variables.
//!
//! Variables are named by arity: `(y, z)`, `(x, y, z)` and `(w, x, y, z)`.
//! Terms are kept in graded lexicographic order, leading term first; since
//! every term of a form has the same total degree this is plain lex order on
//! the exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::binary::BinaryForm;
use crate::error::AlgebraError;
use crate::field::{Fp, PrimeField};
use crate::linalg::LinearChange;
use crate::point::ProjectivePoint;

pub const MAX_VARS: usize = 4;

/// An exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial([u32; MAX_VARS]);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

// Larger exponent vectors sort first, so a `BTreeMap` iterates leading term first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `degree` in `nvars` variables,
/// leading first.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(
        nvars: usize,
        idx: usize,
        left: u32,
        cur: &mut [u32; MAX_VARS],
        out: &mut Vec<Monomial>,
    ) {
        if idx == nvars - 1 {
            cur[idx] = left;
            out.push(Monomial(*cur));
            cur[idx] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[idx] = e;
            rec(nvars, idx + 1, left - e, cur, out);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    rec(nvars, 0, degree, &mut [0; MAX_VARS], &mut out);
    out
}

/// One serialized term: exponent tuple and decimal coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Fp>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField, nvars: usize, degree: u32) -> Self {
        assert!(
            (2..=MAX_VARS).contains(&nvars),
            "2 to 4 variables supported"
        );
        MultiPoly {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Fp, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars, 0);
        if !c.is_zero() {
            p.terms.insert(Monomial::new(&[]), c);
        }
        p
    }

    /// The `i`-th variable as a linear form.
    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::from_terms(field, nvars, 1, [(Monomial(e), field.one())]).unwrap()
    }

    pub fn linear_form(coeffs: &[Fp]) -> Self {
        let field = coeffs[0].field();
        let n = coeffs.len();
        Self::from_terms(
            field,
            n,
            1,
            coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = [0; MAX_VARS];
                e[i] = 1;
                (Monomial(e), c)
            }),
        )
        .unwrap()
    }

    /// Builds a form from terms, summing duplicates and dropping zeros.
    /// Fails if any term has the wrong total degree or uses a variable
    /// beyond `nvars`.
    pub fn from_terms<I>(
        field: PrimeField,
        nvars: usize,
        degree: u32,
        terms: I,
    ) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, Fp)>,
    {
        let mut p = Self::zero(field, nvars, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(AlgebraError::DegreeMismatch(m.degree(), degree));
            }
            if m.0[nvars..].iter().any(|&e| e != 0) {
                return Err(AlgebraError::ArityMismatch(MAX_VARS, nvars));
            }
            if c.field() != field {
                return Err(AlgebraError::FieldMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience constructor from `(exponents, signed coefficient)` pairs.
    pub fn from_i64_terms(
        field: PrimeField,
        nvars: usize,
        terms: &[(&[u32], i64)],
    ) -> Result<Self, AlgebraError> {
        let degree = terms.first().map_or(0, |(e, _)| e.iter().sum());
        Self::from_terms(
            field,
            nvars,
            degree,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e), field.from_i64(*c))),
        )
    }

    /// Random form with independently uniform coefficients.
    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        nvars: usize,
        degree: u32,
        rng: &mut R,
    ) -> Self {
        Self::from_terms(
            field,
            nvars,
            degree,
            monomials(nvars, degree)
                .into_iter()
                .map(|m| (m, field.random(rng))),
        )
        .unwrap()
    }

    /// Random linear combination of `basis` (all of the same shape).
    pub fn random_combination<R: Rng + ?Sized>(
        basis: &[MultiPoly],
        rng: &mut R,
    ) -> Option<MultiPoly> {
        let first = basis.first()?;
        let mut acc = Self::zero(first.field, first.nvars, first.degree);
        for b in basis {
            let c = first.field.random(rng);
            acc = acc.add(&b.scale(c)).ok()?;
        }
        Some(acc)
    }

    fn add_term(&mut self, m: Monomial, c: Fp) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded lexicographic order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Fp)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Fp {
        self.terms
            .get(&Monomial::new(exps))
            .copied()
            .unwrap_or(self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(Monomial, Fp)> {
        self.terms.iter().next().map(|(m, c)| (*m, *c))
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::ArityMismatch(self.nvars, other.nvars));
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_arity(other)?;
        if self.degree != other.degree {
            return Err(AlgebraError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(-self.field.one())
    }

    pub fn scale(&self, c: Fp) -> MultiPoly {
        let mut out = Self::zero(self.field, self.nvars, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (*m, *v * c)).collect();
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.field, self.nvars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), *ca * *cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::constant(self.field.one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    pub fn eval(&self, values: &[Fp]) -> Result<Fp, AlgebraError> {
        if values.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch(self.nvars, values.len()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = *c;
            for (v, &e) in values.iter().zip(m.0.iter()) {
                t *= v.pow(e as u64);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Value at the normalized representative of `p`. Only whether it is
    /// zero is independent of the representative.
    pub fn eval_at(&self, p: &ProjectivePoint) -> Result<Fp, AlgebraError> {
        self.eval(p.coords())
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.field, self.nvars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.0;
            dm[var] -= 1;
            out.add_term(Monomial(dm), *c * self.field.elem(e as u64));
        }
        out
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// one arity and one degree `k`; the result has degree `k * deg self`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch(self.nvars, images.len()));
        }
        let target = images[0].nvars;
        let k = images[0].degree;
        for im in images {
            if im.nvars != target {
                return Err(AlgebraError::ArityMismatch(target, im.nvars));
            }
            if im.degree != k {
                return Err(AlgebraError::DegreeMismatch(k, im.degree));
            }
        }
        // powers[i][e] = images[i]^e
        let powers: Vec<Vec<MultiPoly>> = (0..self.nvars)
            .map(|i| {
                let maxe = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
                let mut pw = vec![Self::constant(self.field.one(), target)];
                for e in 1..=maxe as usize {
                    let next = pw[e - 1].mul(&images[i]).expect("same arity");
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = Self::zero(self.field, target, k * self.degree);
        for (m, c) in &self.terms {
            let mut t = Self::constant(*c, target);
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                if e > 0 {
                    t = t.mul(&powers[i][e]).expect("same arity");
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// `f . M`, i.e. `x_i -> sum_j M[i][j] x_j`.
    pub fn apply_linear_change(&self, change: &LinearChange) -> Result<MultiPoly, AlgebraError> {
        if change.dim() != self.nvars {
            return Err(AlgebraError::ArityMismatch(self.nvars, change.dim()));
        }
        let images: Vec<MultiPoly> = change
            .matrix()
            .to_rows()
            .iter()
            .map(|row| Self::linear_form(row))
            .collect();
        self.substitute(&images)
    }

    /// Multiplicity of `V(f)` at `p`: move `p` to the first coordinate point
    /// and take the smallest total degree in the remaining variables.
    pub fn vanishing_order_at(&self, p: &ProjectivePoint) -> Result<u32, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if p.dim() != self.nvars {
            return Err(AlgebraError::ArityMismatch(self.nvars, p.dim()));
        }
        let moved = self.apply_linear_change(&LinearChange::sending_first_to(p))?;
        Ok(moved.order_at_first_coordinate_point())
    }

    /// Vanishing order at `(1:0:...:0)`: `min (degree - e_0)` over terms.
    pub fn order_at_first_coordinate_point(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| self.degree - m.0[0])
            .min()
            .expect("nonzero polynomial")
    }

    /// Prepends a new first variable that does not occur (e.g. views a form
    /// in `(x,y,z)` as a `w`-free form in `(w,x,y,z)`).
    pub fn lift_prepend_var(&self) -> MultiPoly {
        assert!(self.nvars < MAX_VARS);
        let mut out = Self::zero(self.field, self.nvars + 1, self.degree);
        for (m, c) in &self.terms {
            let mut e = [0; MAX_VARS];
            e[1..].copy_from_slice(&m.0[..MAX_VARS - 1]);
            out.terms.insert(Monomial(e), *c);
        }
        out
    }

    /// Coefficients of the powers of the first variable, `result[i]` being
    /// the coefficient of `v0^i` as a form in the remaining variables.
    pub fn first_var_coefficients(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = (0..=self.degree)
            .map(|i| Self::zero(self.field, self.nvars - 1, self.degree - i))
            .collect();
        for (m, c) in &self.terms {
            let i = m.0[0] as usize;
            let mut e = [0; MAX_VARS];
            e[..MAX_VARS - 1].copy_from_slice(&m.0[1..]);
            out[i].terms.insert(Monomial(e), *c);
        }
        out
    }

    /// Inverse of [`MultiPoly::first_var_coefficients`].
    pub fn from_first_var_coefficients(parts: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
        let first = parts
            .first()
            .ok_or(AlgebraError::Malformed("no parts".into()))?;
        let degree = first.degree;
        let mut out = Self::zero(first.field, first.nvars + 1, degree);
        for (i, part) in parts.iter().enumerate() {
            if part.degree as usize + i != degree as usize {
                return Err(AlgebraError::DegreeMismatch(part.degree + i as u32, degree));
            }
            for (m, c) in &part.terms {
                let mut e = [0; MAX_VARS];
                e[0] = i as u32;
                e[1..].copy_from_slice(&m.0[..MAX_VARS - 1]);
                out.terms.insert(Monomial(e), *c);
            }
        }
        Ok(out)
    }

    /// For a trivariate form, the coefficients of `x^i` as binary forms in `(y, z)`.
    pub fn x_coefficients(&self) -> Vec<BinaryForm> {
        assert_eq!(self.nvars, 3);
        self.first_var_coefficients()
            .iter()
            .map(|p| p.to_binary_form())
            .collect()
    }

    pub fn from_x_coefficients(parts: &[BinaryForm]) -> Result<MultiPoly, AlgebraError> {
        let polys: Vec<MultiPoly> = parts.iter().map(Self::from_binary_form).collect();
        Self::from_first_var_coefficients(&polys)
    }

    pub fn to_binary_form(&self) -> BinaryForm {
        assert_eq!(self.nvars, 2);
        let mut coeffs = vec![self.field.zero(); self.degree as usize + 1];
        for (m, c) in &self.terms {
            coeffs[m.0[1] as usize] = *c;
        }
        BinaryForm::new(self.field, coeffs)
    }

    pub fn from_binary_form(b: &BinaryForm) -> MultiPoly {
        let n = b.degree();
        let mut out = Self::zero(b.field(), 2, n);
        for (k, c) in b.coeffs().iter().enumerate() {
            out.add_term(Monomial::new(&[n - k as u32, k as u32]), *c);
        }
        out
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(c.inverse().expect("nonzero")),
        }
    }

    /// Terms as serialization records, leading term first.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                exponents: m.0[..self.nvars].to_vec(),
                coeff: c.value().to_string(),
            })
            .collect()
    }

    /// Parses records; the arity is taken from the exponent tuples and the
    /// degree must be supplied for the zero polynomial.
    pub fn from_records(
        field: PrimeField,
        nvars: usize,
        degree: u32,
        records: &[TermRecord],
    ) -> Result<MultiPoly, AlgebraError> {
        let mut out = Self::zero(field, nvars, degree);
        for r in records {
            if r.exponents.len() != nvars {
                return Err(AlgebraError::ArityMismatch(nvars, r.exponents.len()));
            }
            let m = Monomial::new(&r.exponents);
            if m.degree() != degree {
                return Err(AlgebraError::DegreeMismatch(m.degree(), degree));
            }
            let c = field.parse(&r.coeff)?;
            if c.is_zero() {
                return Err(AlgebraError::Malformed("stored zero coefficient".into()));
            }
            if out.terms.insert(m, c).is_some() {
                return Err(AlgebraError::Malformed("duplicate exponent tuple".into()));
            }
        }
        Ok(out)
    }

    fn var_names(&self) -> &'static [&'static str] {
        match self.nvars {
            2 => &["y", "z"],
            3 => &["x", "y", "z"],
            _ => &["w", "x", "y", "z"],
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.var_names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in names.iter().zip(m.0.iter()) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn difference_of_squares() {
        let a = p3(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
        let b = p3(&[(&[1, 0, 0], 1), (&[0, 1, 0], -1)]);
        let expect = p3(&[(&[2, 0, 0], 1), (&[0, 2, 0], -1)]);
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn additive_inverse_and_annihilation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = MultiPoly::random(f(), 4, 3, &mut rng);
        let z = g.add(&g.scale(f().from_i64(-1))).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 3);
        let x2 = p3(&[(&[2, 0, 0], 1)]);
        assert!(x2.scale(f().zero()).is_zero());
    }

    #[test]
    fn arity_and_degree_errors() {
        let x = MultiPoly::var(f(), 3, 0);
        let w = MultiPoly::var(f(), 4, 0);
        assert_eq!(x.add(&w), Err(AlgebraError::ArityMismatch(3, 4)));
        assert_eq!(x.mul(&w), Err(AlgebraError::ArityMismatch(3, 4)));
        assert_eq!(
            x.add(&x.mul(&x).unwrap()),
            Err(AlgebraError::DegreeMismatch(1, 2))
        );
        assert!(x.eval(&[f().one()]).is_err());
    }

    #[test]
    fn evaluation() {
        let g = p3(&[(&[1, 0, 1], 1), (&[0, 2, 0], 1)]);
        let pt = |c: &[u64]| ProjectivePoint::from_u64(f(), c).unwrap();
        assert!(g.eval_at(&pt(&[0, 0, 1])).unwrap().is_zero());
        let x = MultiPoly::var(f(), 3, 0);
        assert_eq!(x.eval_at(&pt(&[1, 0, 0])).unwrap(), f().one());
        let y2z = p3(&[(&[0, 2, 1], 1)]);
        assert_eq!(y2z.eval_at(&pt(&[1, 1, 1])).unwrap(), f().one());
    }

    #[test]
    fn derivatives() {
        let x2y = p3(&[(&[2, 1, 0], 1)]);
        assert_eq!(x2y.partial_derivative(0), p3(&[(&[1, 1, 0], 2)]));
        assert!(x2y.partial_derivative(2).is_zero());
        let f5 = PrimeField::new(5).unwrap();
        let y3 = MultiPoly::from_i64_terms(f5, 3, &[(&[0, 3, 0], 1)]).unwrap();
        let d = y3.partial_derivative(1);
        assert_eq!(
            d,
            MultiPoly::from_i64_terms(f5, 3, &[(&[0, 2, 0], 3)]).unwrap()
        );
    }

    #[test]
    fn linear_change_examples() {
        let x = MultiPoly::var(f(), 3, 0);
        let y = MultiPoly::var(f(), 3, 1);
        assert_eq!(
            x.apply_linear_change(&LinearChange::swap(f(), 3, 0, 1))
                .unwrap(),
            y
        );
        let q = p3(&[(&[2, 0, 0], 1), (&[0, 2, 0], 1)]);
        assert_eq!(
            q.apply_linear_change(&LinearChange::identity(f(), 3))
                .unwrap(),
            q
        );
    }

    #[test]
    fn linear_change_round_trip_many() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..120 {
            let nvars = 2 + i % 3;
            let deg = 1 + (i % 5) as u32;
            let g = MultiPoly::random(f(), nvars, deg, &mut rng);
            let m = LinearChange::random(f(), nvars, &mut rng);
            let back = g
                .apply_linear_change(&m)
                .unwrap()
                .apply_linear_change(&m.inverse())
                .unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn vanishing_orders() {
        let pt3 = |c: &[u64]| ProjectivePoint::from_u64(f(), c).unwrap();
        let g =
            MultiPoly::from_i64_terms(f(), 4, &[(&[1, 0, 1, 0], 1), (&[0, 2, 0, 0], 1)]).unwrap();
        let o = ProjectivePoint::from_u64(f(), &[1, 0, 0, 0]).unwrap();
        assert_eq!(g.vanishing_order_at(&o).unwrap(), 1);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u1 = MultiPoly::random(f(), 2, 1, &mut rng);
        let u2 = MultiPoly::random(f(), 2, 2, &mut rng);
        let curve = MultiPoly::var(f(), 3, 0)
            .mul(&u1.lift_prepend_var())
            .unwrap()
            .add(&u2.lift_prepend_var())
            .unwrap();
        assert_eq!(curve.vanishing_order_at(&pt3(&[1, 0, 0])).unwrap(), 1);

        let y2z = p3(&[(&[0, 2, 1], 1)]);
        assert_eq!(y2z.vanishing_order_at(&pt3(&[1, 0, 0])).unwrap(), 3);
        assert_eq!(
            MultiPoly::zero(f(), 3, 2).vanishing_order_at(&pt3(&[1, 0, 0])),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn vanishing_order_at_general_point() {
        // (y - x)^2 z: a double line through (1:1:5), plus the line z = 0 at (1:1:0).
        let lin = p3(&[(&[0, 1, 0], 1), (&[1, 0, 0], -1)]);
        let z = MultiPoly::var(f(), 3, 2);
        let g = lin.pow(2).mul(&z).unwrap();
        let p = ProjectivePoint::from_u64(f(), &[1, 1, 5]).unwrap();
        assert_eq!(g.vanishing_order_at(&p).unwrap(), 2);
        let q = ProjectivePoint::from_u64(f(), &[1, 1, 0]).unwrap();
        assert_eq!(g.vanishing_order_at(&q).unwrap(), 3);
    }

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(4, 3).len(), 20);
        let ms = monomials(3, 2);
        assert_eq!(ms[0], Monomial::new(&[2, 0, 0]));
        assert_eq!(ms[5], Monomial::new(&[0, 0, 2]));
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn x_coefficient_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = MultiPoly::random(f(), 3, 4, &mut rng);
        let parts = g.x_coefficients();
        assert_eq!(parts.len(), 5);
        assert_eq!(parts[4].degree(), 0);
        assert_eq!(MultiPoly::from_x_coefficients(&parts).unwrap(), g);
    }

    #[test]
    fn records_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = MultiPoly::random(f(), 4, 3, &mut rng);
        let recs = g.to_records();
        assert_eq!(recs[0].exponents, vec![3, 0, 0, 0]);
        assert_eq!(MultiPoly::from_records(f(), 4, 3, &recs).unwrap(), g);
    }

    fn arb_poly(nvars: usize, deg: u32) -> impl Strategy<Value = MultiPoly> {
        let n = monomials(nvars, deg).len();
        proptest::collection::vec(0u64..DEFAULT_TEST_BOUND, n).prop_map(move |cs| {
            MultiPoly::from_terms(
                f(),
                nvars,
                deg,
                monomials(nvars, deg)
                    .into_iter()
                    .zip(cs)
                    .map(|(m, c)| (m, f().elem(c))),
            )
            .unwrap()
        })
    }

    const DEFAULT_TEST_BOUND: u64 = 1 << 20;

    proptest! {
        #[test]
        fn products_are_homogeneous(a in arb_poly(3, 2), b in arb_poly(3, 3)) {
            let prod = a.mul(&b).unwrap();
            prop_assert_eq!(prod.degree(), 5);
            prop_assert!(prod.terms().all(|(m, _)| m.degree() == 5));
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_poly(4, 2), b in arb_poly(4, 1), v in proptest::collection::vec(0u64..1000, 4)) {
            let v: Vec<Fp> = v.into_iter().map(|c| f().elem(c)).collect();
            let prod = a.mul(&b).unwrap();
            prop_assert_eq!(prod.eval(&v).unwrap(), a.eval(&v).unwrap() * b.eval(&v).unwrap());
        }
    }
}
