//! Plane de Jonquières maps `(t1 : y f : z f)`.
//!
//! A configuration is a point `p0` of multiplicity `r - 1` plus `2r - 2`
//! simple points. After moving `p0` to `(1:0:0)`, `t1` is a degree-`r` curve
//! with an `(r-1)`-fold point there through the simple points, and `f` is the
//! unique degree-`(r-1)` curve with an `(r-2)`-fold point at `p0` through the
//! same points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binary::BinaryForm;
use crate::error::{AlgebraError, PlaneError};
use crate::field::{Fp, PrimeField};
use crate::gcd::coprime;
use crate::linalg::{LinearChange, Matrix};
use crate::oracle::{self, DeclaredBasePoint, IntersectionReport};
use crate::point::ProjectivePoint;
use crate::poly::{monomials, MultiPoly};
use crate::space::derive_seed;

pub const DEFAULT_MEMBER_RETRIES: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointConfiguration {
    r: u32,
    p0: ProjectivePoint,
    simple_points: Vec<ProjectivePoint>,
}

impl PointConfiguration {
    pub fn new(
        r: u32,
        p0: ProjectivePoint,
        simple_points: Vec<ProjectivePoint>,
    ) -> Result<Self, PlaneError> {
        if r < 2 {
            return Err(PlaneError::InvalidConfiguration(format!(
                "r = {r}, need r >= 2"
            )));
        }
        if simple_points.len() != 2 * r as usize - 2 {
            return Err(PlaneError::InvalidConfiguration(format!(
                "{} simple points, need 2r - 2 = {}",
                simple_points.len(),
                2 * r - 2
            )));
        }
        let all: Vec<&ProjectivePoint> = std::iter::once(&p0).chain(&simple_points).collect();
        if all.iter().any(|p| p.dim() != 3) {
            return Err(PlaneError::InvalidConfiguration(
                "points must lie in the plane".into(),
            ));
        }
        for (i, p) in all.iter().enumerate() {
            if all[..i].contains(p) {
                return Err(PlaneError::InvalidConfiguration(format!(
                    "point {p:?} repeated"
                )));
            }
        }
        Ok(PointConfiguration {
            r,
            p0,
            simple_points,
        })
    }

    /// `2r - 1` distinct uniformly random points.
    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        r: u32,
        rng: &mut R,
    ) -> Result<Self, PlaneError> {
        let mut pts: Vec<ProjectivePoint> = Vec::new();
        while pts.len() < 2 * r as usize - 1 {
            let p = ProjectivePoint::random(field, 3, rng);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let p0 = pts.remove(0);
        Self::new(r, p0, pts)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn p0(&self) -> &ProjectivePoint {
        &self.p0
    }

    pub fn simple_points(&self) -> &[ProjectivePoint] {
        &self.simple_points
    }

    pub fn field(&self) -> PrimeField {
        self.p0.field()
    }

    /// `(r - 1, 1, ..., 1)`.
    pub fn assigned_multiplicities(&self) -> Vec<u32> {
        std::iter::once(self.r - 1)
            .chain(self.simple_points.iter().map(|_| 1))
            .collect()
    }

    /// The homaloidal conditions on the multiplicity vector:
    /// `sum m_i = 3(r - 1)` and `sum m_i^2 = r^2 - 1`.
    pub fn homaloidal_arithmetic_holds(&self) -> bool {
        let m = self.assigned_multiplicities();
        let sum: u32 = m.iter().sum();
        let squares: u32 = m.iter().map(|x| x * x).sum();
        sum == 3 * (self.r - 1) && squares == self.r * self.r - 1
    }

    /// Expected intersection table of two general members of the net.
    pub fn declared_base_points(&self) -> Vec<DeclaredBasePoint> {
        let m0 = self.r - 1;
        std::iter::once(DeclaredBasePoint::new(self.p0.clone(), m0 * m0))
            .chain(
                self.simple_points
                    .iter()
                    .map(|p| DeclaredBasePoint::new(p.clone(), 1)),
            )
            .collect()
    }
}

/// Restricts the span of `basis` (forms of one shape) to the members
/// vanishing to order `>= m` at each `(point, m)`.
///
/// Each point is moved to `(1:0:...:0)`; there, order `>= m` means every
/// coefficient whose monomial has degree `< m` in the other variables is
/// zero. Those coefficients are linear in the basis weights.
pub fn restrict_by_conditions(
    basis: &[MultiPoly],
    conditions: &[(ProjectivePoint, u32)],
) -> Result<Vec<MultiPoly>, AlgebraError> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    let field = first.field();
    let (nvars, degree) = (first.nvars(), first.degree());
    let mut rows: Vec<Vec<Fp>> = Vec::new();
    for (p, m) in conditions.iter().filter(|(_, m)| *m > 0) {
        if p.dim() != nvars {
            return Err(AlgebraError::ArityMismatch(nvars, p.dim()));
        }
        let change = LinearChange::sending_first_to(p);
        let moved: Vec<MultiPoly> = basis
            .iter()
            .map(|b| b.apply_linear_change(&change))
            .collect::<Result<_, _>>()?;
        for mono in monomials(nvars, degree) {
            if degree - mono.exps()[0] < *m {
                rows.push(
                    moved
                        .iter()
                        .map(|b| b.coeff(&mono.exps()[..nvars]))
                        .collect(),
                );
            }
        }
    }
    if rows.is_empty() {
        return Ok(basis.to_vec());
    }
    let kernel = Matrix::from_rows(field, rows)?.nullspace();
    kernel
        .iter()
        .map(|weights| {
            let mut acc = MultiPoly::zero(field, nvars, degree);
            for (w, b) in weights.iter().zip(basis) {
                if !w.is_zero() {
                    acc = acc.add(&b.scale(*w))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

/// Basis of the degree-`degree` plane curves with the given multiplicities.
pub fn curves_through(
    field: PrimeField,
    degree: u32,
    conditions: &[(ProjectivePoint, u32)],
) -> Result<Vec<MultiPoly>, AlgebraError> {
    let basis: Vec<MultiPoly> = monomials(3, degree)
        .into_iter()
        .map(|m| MultiPoly::from_terms(field, 3, degree, [(m, field.one())]).unwrap())
        .collect();
    restrict_by_conditions(&basis, conditions)
}

/// The pair `(t1, f)` in coordinates where `p0 = (1:0:0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeJonquieresWitness {
    pub t1: MultiPoly,
    pub f: MultiPoly,
}

impl DeJonquieresWitness {
    /// Checks every witness invariant against normalized simple points.
    pub fn validate(
        &self,
        r: u32,
        normalized_simple: &[ProjectivePoint],
    ) -> Result<(), PlaneError> {
        let (t1, f) = (&self.t1, &self.f);
        if t1.nvars() != 3 || f.nvars() != 3 || t1.degree() != r || f.degree() != r - 1 {
            return Err(PlaneError::InvalidConfiguration(
                "witness has the wrong shape".into(),
            ));
        }
        if t1.is_zero() {
            return Err(PlaneError::EmptyLinearSystem { degree: r });
        }
        if f.is_zero() {
            return Err(PlaneError::EmptyLinearSystem { degree: r - 1 });
        }
        let order = t1.order_at_first_coordinate_point();
        if order != r - 1 {
            return Err(PlaneError::MultiplicityFailure {
                expected: r - 1,
                found: order,
            });
        }
        let forder = f.order_at_first_coordinate_point();
        if forder < r - 2 {
            return Err(PlaneError::MultiplicityFailure {
                expected: r - 2,
                found: forder,
            });
        }
        for (i, p) in normalized_simple.iter().enumerate() {
            if !t1.eval_at(p)?.is_zero() || !f.eval_at(p)?.is_zero() {
                return Err(PlaneError::InvalidConfiguration(format!(
                    "witness does not vanish at simple point {}",
                    i + 1
                )));
            }
        }
        let parts = t1.x_coefficients();
        let (u_low, u_top) = (&parts[1], &parts[0]);
        if BinaryForm::gcd(u_low, u_top)?.degree() > 0 {
            return Err(PlaneError::IrreducibilityFailure);
        }
        if !coprime(t1, f)? {
            return Err(PlaneError::FixedComponent);
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneCremonaMap {
    /// `(t1, t2, t3)` in the original coordinates.
    pub components: [MultiPoly; 3],
    pub witness: DeJonquieresWitness,
    pub config: PointConfiguration,
    /// Carries `(1:0:0)` to the original `p0`; normalized forms are
    /// `original . normalization`.
    pub normalization: LinearChange,
    /// Non-fatal observations, e.g. an unexpectedly large system for `f`.
    pub warnings: Vec<String>,
}

impl PlaneCremonaMap {
    pub fn r(&self) -> u32 {
        self.config.r()
    }

    /// Assembles `(t1 : y f : z f)` from a witness in normalized coordinates.
    pub fn from_witness(
        config: PointConfiguration,
        witness: DeJonquieresWitness,
        normalization: LinearChange,
        warnings: Vec<String>,
    ) -> Result<Self, AlgebraError> {
        let field = config.field();
        let back = normalization.inverse();
        let y = MultiPoly::var(field, 3, 1);
        let z = MultiPoly::var(field, 3, 2);
        let normalized = [witness.t1.clone(), y.mul(&witness.f)?, z.mul(&witness.f)?];
        let components = [
            normalized[0].apply_linear_change(&back)?,
            normalized[1].apply_linear_change(&back)?,
            normalized[2].apply_linear_change(&back)?,
        ];
        Ok(PlaneCremonaMap {
            components,
            witness,
            config,
            normalization,
            warnings,
        })
    }

    pub fn member(&self, coeffs: &[Fp; 3]) -> Result<MultiPoly, AlgebraError> {
        let mut acc = MultiPoly::zero(self.config.field(), 3, self.r());
        for (c, t) in coeffs.iter().zip(&self.components) {
            acc = acc.add(&t.scale(*c))?;
        }
        Ok(acc)
    }
}

/// Builds the de Jonquières map attached to `config`. With `t1_override`
/// (given in the original coordinates) `t1` is fixed instead of drawn from
/// the net.
pub fn build_de_jonquieres<R: Rng + ?Sized>(
    config: &PointConfiguration,
    rng: &mut R,
    t1_override: Option<&MultiPoly>,
) -> Result<PlaneCremonaMap, PlaneError> {
    let field = config.field();
    let r = config.r();
    if !config.homaloidal_arithmetic_holds() {
        return Err(PlaneError::InvalidConfiguration(
            "multiplicity vector is not homaloidal".into(),
        ));
    }
    let normalization = LinearChange::sending_first_to(config.p0());
    let back = normalization.inverse();
    let e0 = ProjectivePoint::coordinate(field, 3, 0);
    let simple: Vec<ProjectivePoint> = config
        .simple_points()
        .iter()
        .map(|p| back.apply_to_point(p))
        .collect();
    let simple_conditions = simple.iter().map(|p| (p.clone(), 1));

    let mut warnings = Vec::new();
    let f_conditions: Vec<(ProjectivePoint, u32)> = std::iter::once((e0.clone(), r - 2))
        .chain(simple_conditions.clone())
        .collect();
    let f_space = curves_through(field, r - 1, &f_conditions)?;
    let f = match f_space.len() {
        0 => return Err(PlaneError::EmptyLinearSystem { degree: r - 1 }),
        1 => f_space[0].monic(),
        n => {
            warnings.push(format!(
                "degree {} system through the configuration has dimension {n}",
                r - 1
            ));
            MultiPoly::random_combination(&f_space, rng).expect("nonempty basis")
        }
    };

    if let Some(t1) = t1_override {
        let witness = DeJonquieresWitness {
            t1: t1.apply_linear_change(&normalization)?,
            f,
        };
        witness.validate(r, &simple)?;
        return Ok(PlaneCremonaMap::from_witness(
            config.clone(),
            witness,
            normalization,
            warnings,
        )?);
    }

    let t_conditions: Vec<(ProjectivePoint, u32)> = std::iter::once((e0, r - 1))
        .chain(simple_conditions)
        .collect();
    let net = curves_through(field, r, &t_conditions)?;
    if net.is_empty() {
        return Err(PlaneError::EmptyLinearSystem { degree: r });
    }
    let mut last = PlaneError::EmptyLinearSystem { degree: r };
    for _ in 0..DEFAULT_MEMBER_RETRIES {
        let t1 = MultiPoly::random_combination(&net, rng).expect("nonempty basis");
        let witness = DeJonquieresWitness { t1, f: f.clone() };
        match witness.validate(r, &simple) {
            Ok(()) => {
                return Ok(PlaneCremonaMap::from_witness(
                    config.clone(),
                    witness,
                    normalization,
                    warnings,
                )?);
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Two random members of the net and their measured intersection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneVerification {
    pub members: [[Fp; 3]; 2],
    pub report: IntersectionReport,
}

fn random_triple<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> [Fp; 3] {
    [field.random(rng), field.random(rng), field.random(rng)]
}

/// Checks the net is homaloidal: two general members meet in the declared
/// base points with the declared multiplicities and in exactly one more
/// point.
pub fn verify_plane_homaloidal<R: Rng + ?Sized>(
    map: &PlaneCremonaMap,
    rng: &mut R,
) -> Result<PlaneVerification, PlaneError> {
    let field = map.config.field();
    let base = map.config.declared_base_points();
    let mut last = String::new();
    for _ in 0..DEFAULT_MEMBER_RETRIES {
        let members = [random_triple(field, rng), random_triple(field, rng)];
        let c1 = map.member(&members[0])?;
        let c2 = map.member(&members[1])?;
        if c1.is_zero() || c2.is_zero() {
            continue;
        }
        let report = match oracle::residual_intersection(&c1, &c2, &base, rng) {
            Ok(rep) => rep,
            // Proportional members share everything; anything else is real.
            Err(crate::error::OracleError::CommonComponent) if proportional(&c1, &c2) => continue,
            Err(e) => return Err(e.into()),
        };
        if oracle::check_against_expected(&report, &base) && report.residual == 1 {
            return Ok(PlaneVerification { members, report });
        }
        last = format!(
            "measured {:?} with residual {}, expected {:?} with residual 1",
            report.multiplicities(),
            report.residual,
            base.iter()
                .map(|b| b.expected_multiplicity)
                .collect::<Vec<_>>()
        );
    }
    Err(PlaneError::HomaloidalFailure(last))
}

fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    a.monic() == b.monic()
}

/// Re-runs the homaloidal check with stored members and changes.
pub fn replay_plane_verification(
    map: &PlaneCremonaMap,
    members: &[[Fp; 3]; 2],
    used: &LinearChange,
    confirming: &LinearChange,
) -> Result<IntersectionReport, PlaneError> {
    let base = map.config.declared_base_points();
    let c1 = map.member(&members[0])?;
    let c2 = map.member(&members[1])?;
    let report = oracle::replay(&c1, &c2, &base, used, confirming)?;
    if oracle::check_against_expected(&report, &base) && report.residual == 1 {
        Ok(report)
    } else {
        Err(PlaneError::HomaloidalFailure(format!(
            "replayed table {:?} with residual {}",
            report.multiplicities(),
            report.residual
        )))
    }
}

/// Tag separating plane forge streams from space forge streams.
const PLANE_STREAM: u64 = 0x706c_616e_65;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneOutcome {
    pub seed: u64,
    pub attempts: usize,
    pub map: PlaneCremonaMap,
    pub verification: PlaneVerification,
}

/// Builds and verifies a de Jonquières map of degree `r` on a random
/// configuration. Attempt `k` draws from its own stream derived from
/// `(seed, r, k)`.
pub fn forge_plane(
    field: PrimeField,
    r: u32,
    seed: u64,
    retries: usize,
) -> Result<PlaneOutcome, PlaneError> {
    if r < 2 {
        return Err(PlaneError::InvalidConfiguration(format!(
            "r = {r}, need r >= 2"
        )));
    }
    let mut last = String::from("no attempts made");
    for attempt in 0..retries {
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(seed, &[PLANE_STREAM, r as u64, attempt as u64]));
        let result = PointConfiguration::random(field, r, &mut rng).and_then(|config| {
            let map = build_de_jonquieres(&config, &mut rng, None)?;
            let verification = verify_plane_homaloidal(&map, &mut rng)?;
            Ok((map, verification))
        });
        match result {
            Ok((map, verification)) => {
                return Ok(PlaneOutcome {
                    seed,
                    attempts: attempt + 1,
                    map,
                    verification,
                })
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(PlaneError::RetriesExhausted {
        attempts: retries,
        last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn pt(c: &[u64]) -> ProjectivePoint {
        ProjectivePoint::from_u64(f(), c).unwrap()
    }

    #[test]
    fn line_through_two_points() {
        let basis = curves_through(f(), 1, &[(pt(&[0, 1, 0]), 1), (pt(&[0, 0, 1]), 1)]).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].monic(), MultiPoly::var(f(), 3, 0));
    }

    #[test]
    fn conics_through_one_point() {
        assert_eq!(
            curves_through(f(), 2, &[(pt(&[1, 0, 0]), 1)])
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn conics_through_five_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut conds = vec![(pt(&[1, 0, 0]), 1)];
        for _ in 0..4 {
            conds.push((ProjectivePoint::random(f(), 3, &mut rng), 1));
        }
        let basis = curves_through(f(), 2, &conds).unwrap();
        assert_eq!(basis.len(), 1);
        for (p, _) in &conds {
            assert!(basis[0].eval_at(p).unwrap().is_zero());
        }
    }

    #[test]
    fn multiplicity_conditions_are_exact() {
        // Cubics singular at (1:0:0): 10 - 3 = 7 dimensional.
        let basis = curves_through(f(), 3, &[(pt(&[1, 0, 0]), 2)]).unwrap();
        assert_eq!(basis.len(), 7);
        for b in &basis {
            assert!(b.order_at_first_coordinate_point() >= 2);
        }
        // Same count at a non-coordinate point.
        let p = pt(&[3, 5, 7]);
        let basis = curves_through(f(), 3, &[(p.clone(), 2)]).unwrap();
        assert_eq!(basis.len(), 7);
        for b in &basis {
            assert!(b.vanishing_order_at(&p).unwrap() >= 2);
        }
    }

    #[test]
    fn quadratic_map_on_coordinate_points() {
        let config =
            PointConfiguration::new(2, pt(&[1, 0, 0]), vec![pt(&[0, 1, 0]), pt(&[0, 0, 1])])
                .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let map = build_de_jonquieres(&config, &mut rng, None).unwrap();
        assert_eq!(map.witness.f, MultiPoly::var(f(), 3, 0));
        let t1 = &map.witness.t1;
        // t1 = x(ay + bz) + c yz: no x^2, y^2, z^2 terms
        for sq in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            assert!(t1.coeff(&sq).is_zero());
        }
        assert!(map.warnings.is_empty());
        let v = verify_plane_homaloidal(&map, &mut rng).unwrap();
        assert_eq!(v.report.multiplicities(), vec![1, 1, 1]);
        assert_eq!(v.report.residual, 1);
    }

    #[test]
    fn repeated_points_rejected() {
        let err = PointConfiguration::new(2, pt(&[1, 0, 0]), vec![pt(&[0, 1, 0]), pt(&[0, 1, 0])]);
        assert!(matches!(err, Err(PlaneError::InvalidConfiguration(_))));
        let err = PointConfiguration::new(1, pt(&[1, 0, 0]), vec![]);
        assert!(matches!(err, Err(PlaneError::InvalidConfiguration(_))));
    }

    #[test]
    fn cubic_de_jonquieres() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let config = PointConfiguration::random(f(), 3, &mut rng).unwrap();
        let map = build_de_jonquieres(&config, &mut rng, None).unwrap();
        assert!(map.warnings.is_empty());
        for t in &map.components {
            for p in std::iter::once(config.p0()).chain(config.simple_points()) {
                assert!(t.eval_at(p).unwrap().is_zero());
            }
            assert_eq!(t.vanishing_order_at(config.p0()).unwrap(), 2);
        }
        let v = verify_plane_homaloidal(&map, &mut rng).unwrap();
        assert_eq!(v.report.multiplicities(), vec![4, 1, 1, 1, 1]);
        assert_eq!(v.report.residual, 1);
        let replayed = replay_plane_verification(
            &map,
            &v.members,
            &v.report.linear_change_used,
            &v.report.confirming_change,
        )
        .unwrap();
        assert_eq!(replayed.residual, 1);
    }

    #[test]
    fn reducible_override_rejected() {
        // x y contains the line y = 0 through p0.
        let config =
            PointConfiguration::new(2, pt(&[1, 0, 0]), vec![pt(&[0, 0, 1]), pt(&[1, 0, 1])])
                .unwrap();
        let xy = MultiPoly::from_i64_terms(f(), 3, &[(&[1, 1, 0], 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(
            build_de_jonquieres(&config, &mut rng, Some(&xy)),
            Err(PlaneError::IrreducibilityFailure)
        );
    }

    #[test]
    fn injected_common_factor_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let config = PointConfiguration::random(f(), 2, &mut rng).unwrap();
        let mut map = build_de_jonquieres(&config, &mut rng, None).unwrap();
        // Replace t1 by a multiple of the line f shared with t2 and t3.
        let lin = MultiPoly::random(f(), 3, 1, &mut rng);
        let back = map.normalization.inverse();
        map.components[0] = map
            .witness
            .f
            .apply_linear_change(&back)
            .unwrap()
            .mul(&lin)
            .unwrap();
        let err = verify_plane_homaloidal(&map, &mut rng).unwrap_err();
        assert_eq!(
            err,
            PlaneError::Oracle(crate::error::OracleError::CommonComponent)
        );
    }
}
