//! Space Cremona maps `(g : t1 : t2 : t3)` with `g = w A + B` and
//! `(t1 : t2 : t3)` a plane de Jonquières map of degree `d`, and the
//! intersection count that certifies their bidegree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binary::BinaryForm;
use crate::error::{OracleError, SpaceError};
use crate::field::{Fp, PrimeField};
use crate::gcd::coprime;
use crate::linalg::LinearChange;
use crate::oracle::{self, DeclaredBasePoint, IntersectionReport};
use crate::plane::{
    build_de_jonquieres, restrict_by_conditions, verify_plane_homaloidal, PlaneCremonaMap,
    PlaneVerification, PointConfiguration,
};
use crate::point::ProjectivePoint;
use crate::poly::{monomials, MultiPoly};

pub const DEFAULT_RETRY_BUDGET: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Case {
    /// `p0` is a `(d-1)`-fold point of `A = 0` and `B = 0`; `m` of the
    /// `d - 1` further intersection points are used as base points.
    A { m: u32 },
    /// `A` and `B` both have multiplicity `ell` at `p0` and share `m`
    /// prescribed points.
    B { ell: u32, m: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Recipe {
    pub d: u32,
    pub e: u32,
    pub case: Case,
}

/// Intersection multiplicity of two general members along the line over
/// `p0` when `g` has multiplicity `ell` there and the `t_i` have `d - 1`.
pub fn p0_multiplicity(d: u32, ell: u32) -> u32 {
    ell * (d - 1)
}

impl Recipe {
    pub fn new(d: u32, case: Case) -> Result<Recipe, SpaceError> {
        if d < 2 {
            return Err(SpaceError::InvalidRecipe(format!("d = {d}, need d >= 2")));
        }
        let e = match case {
            Case::A { m } => {
                if m > d - 1 {
                    return Err(SpaceError::InvalidRecipe(format!(
                        "case A needs m <= d - 1, got m = {m}"
                    )));
                }
                2 * d - 1 - m
            }
            Case::B { ell, m } => {
                if ell > d - 2 || m > 2 * d - 2 {
                    return Err(SpaceError::InvalidRecipe(format!(
                        "case B needs ell <= d - 2 and m <= 2d - 2, got ell = {ell}, m = {m}"
                    )));
                }
                d * d - p0_multiplicity(d, ell) - m
            }
        };
        Ok(Recipe { d, e, case })
    }

    pub fn m(&self) -> u32 {
        match self.case {
            Case::A { m } | Case::B { m, .. } => m,
        }
    }

    /// Multiplicity of `g` (and of the `t_i` in case A) at `p0`.
    pub fn ell(&self) -> u32 {
        match self.case {
            Case::A { .. } => self.d - 1,
            Case::B { ell, .. } => ell,
        }
    }

    pub fn expected_p0_multiplicity(&self) -> u32 {
        p0_multiplicity(self.d, self.ell())
    }

    pub fn tag(&self) -> String {
        match self.case {
            Case::A { m } => format!("A{{m={m}}}"),
            Case::B { ell, m } => format!("B{{ell={ell},m={m}}}"),
        }
    }
}

/// Picks a construction for bidegree `(d, e)`: case A for `e <= 2d - 1`,
/// otherwise case B with the smallest admissible `ell`.
pub fn plan_bidegree(d: u32, e: u32) -> Result<Recipe, SpaceError> {
    if d < 2 {
        return Err(SpaceError::InvalidRecipe(format!("d = {d}, need d >= 2")));
    }
    if e < d || e > d * d {
        return Err(SpaceError::OutOfRange { d, e, max: d * d });
    }
    if e <= 2 * d - 1 {
        return Recipe::new(d, Case::A { m: 2 * d - 1 - e });
    }
    for ell in 0..=d - 2 {
        let top = d * d - p0_multiplicity(d, ell);
        if top >= e && top - e <= 2 * d - 2 {
            return Recipe::new(d, Case::B { ell, m: top - e });
        }
    }
    unreachable!("consecutive ell ranges cover (2d - 1, d^2]")
}

/// `g = w A + B` with `A`, `B` forms in `(x, y, z)` of degrees `d - 1`, `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GShape {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub g: MultiPoly,
    /// Case A: the linear factors of `A`.
    pub a_factors: Option<Vec<BinaryForm>>,
}

impl GShape {
    pub fn new(
        a: MultiPoly,
        b: MultiPoly,
        a_factors: Option<Vec<BinaryForm>>,
    ) -> Result<Self, SpaceError> {
        if a.nvars() != 3 || b.nvars() != 3 || b.degree() < 2 || a.degree() + 1 != b.degree() {
            return Err(SpaceError::CriterionViolation(
                "A and B must be ternary of degrees d - 1 and d".into(),
            ));
        }
        let field = a.field();
        let w = MultiPoly::var(field, 4, 0);
        let g = w.mul(&a.lift_prepend_var())?.add(&b.lift_prepend_var())?;
        Ok(GShape { a, b, g, a_factors })
    }

    pub fn d(&self) -> u32 {
        self.b.degree()
    }

    /// `g` irreducible and `(d-1)`-fold at `o = (1:0:0:0)`.
    pub fn check(&self) -> Result<(), SpaceError> {
        if self.a.is_zero() || self.b.is_zero() || !coprime(&self.a, &self.b)? {
            return Err(SpaceError::CriterionViolation(
                "g reducible: gcd(A, B) is not constant".into(),
            ));
        }
        let order = self.g.order_at_first_coordinate_point();
        if order != self.d() - 1 {
            return Err(SpaceError::CriterionViolation(format!(
                "g has order {order} at o, need {}",
                self.d() - 1
            )));
        }
        Ok(())
    }
}

fn distinct_random_points<R: Rng + ?Sized>(
    field: PrimeField,
    dim: usize,
    count: usize,
    avoid: &[ProjectivePoint],
    rng: &mut R,
    mut accept: impl FnMut(&ProjectivePoint) -> bool,
) -> Vec<ProjectivePoint> {
    let mut out: Vec<ProjectivePoint> = Vec::with_capacity(count);
    while out.len() < count {
        let p = ProjectivePoint::random(field, dim, rng);
        if !avoid.contains(&p) && !out.contains(&p) && accept(&p) {
            out.push(p);
        }
    }
    out
}

/// The point of `x B_lower + B_top = 0` on the line through `(1:0:0)` in
/// direction `(y:z) = dir`.
pub fn residual_point_on_direction(
    b_lower: &BinaryForm,
    b_top: &BinaryForm,
    dir: &ProjectivePoint,
) -> Result<ProjectivePoint, SpaceError> {
    let (l, mu) = (dir.coords()[0], dir.coords()[1]);
    let den = b_lower.eval(l, mu);
    if den.is_zero() {
        return Err(SpaceError::CriterionViolation(format!(
            "B_(d-1) vanishes in direction {dir:?}"
        )));
    }
    let x = -(b_top.eval(l, mu) * den.inverse()?);
    Ok(ProjectivePoint::new(vec![x, l, mu])?)
}

/// Case A from explicit data: `A` is the product of the lines through
/// `(1:0:0)` in `a_directions`, `B = x b_lower + b_top`. The first `m`
/// residual points of `A` and `B` come first, followed by the points of
/// `B = 0` in the `extra_directions`.
pub fn shape_case_a(
    d: u32,
    m: u32,
    a_directions: &[ProjectivePoint],
    b_lower: &BinaryForm,
    b_top: &BinaryForm,
    extra_directions: &[ProjectivePoint],
) -> Result<(GShape, PointConfiguration), SpaceError> {
    Recipe::new(d, Case::A { m })?;
    if a_directions.len() != d as usize - 1 || extra_directions.len() != (2 * d - 2 - m) as usize {
        return Err(SpaceError::InvalidRecipe(
            "wrong number of directions".into(),
        ));
    }
    if b_lower.degree() != d - 1 || b_top.degree() != d {
        return Err(SpaceError::InvalidRecipe(
            "B parts have the wrong degrees".into(),
        ));
    }
    let field = b_top.field();
    let all_dirs: Vec<&ProjectivePoint> = a_directions.iter().chain(extra_directions).collect();
    for (i, dir) in all_dirs.iter().enumerate() {
        if dir.dim() != 2 || all_dirs[..i].contains(dir) {
            return Err(SpaceError::CriterionViolation(
                "directions must be distinct points of P^1".into(),
            ));
        }
    }
    if b_lower.is_zero() || BinaryForm::gcd(b_lower, b_top)?.degree() > 0 {
        return Err(SpaceError::CriterionViolation(
            "B is reducible or not (d-1)-fold at p0: gcd(B_(d-1), B_d) is not constant".into(),
        ));
    }
    let factors: Vec<BinaryForm> = a_directions
        .iter()
        .map(|p| BinaryForm::linear_vanishing_at(p.coords()[0], p.coords()[1]))
        .collect();
    let a_bin = factors
        .iter()
        .fold(BinaryForm::constant(field.one()), |acc, l| acc.mul(l));
    let a = MultiPoly::from_binary_form(&a_bin).lift_prepend_var();
    let b = MultiPoly::from_x_coefficients(&[b_top.clone(), b_lower.clone()])?;
    let on_a: Vec<ProjectivePoint> = a_directions
        .iter()
        .map(|dir| residual_point_on_direction(b_lower, b_top, dir))
        .collect::<Result<_, _>>()?;
    let mut points: Vec<ProjectivePoint> = on_a[..m as usize].to_vec();
    for dir in extra_directions {
        points.push(residual_point_on_direction(b_lower, b_top, dir)?);
    }
    let shape = GShape::new(a, b, Some(factors))?;
    shape.check()?;
    let config = PointConfiguration::new(d, ProjectivePoint::coordinate(field, 3, 0), points)?;
    Ok((shape, config))
}

fn retry<T, R: Rng + ?Sized>(
    rng: &mut R,
    mut attempt: impl FnMut(&mut R) -> Result<T, SpaceError>,
) -> Result<T, SpaceError> {
    let mut last = String::new();
    for _ in 0..DEFAULT_RETRY_BUDGET {
        match attempt(rng) {
            Ok(v) => return Ok(v),
            Err(e @ (SpaceError::InvalidRecipe(_) | SpaceError::EmptyLinearSystem { .. })) => {
                return Err(e)
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(SpaceError::GenericityExhausted {
        attempts: DEFAULT_RETRY_BUDGET,
        last,
    })
}

pub fn sample_case_a<R: Rng + ?Sized>(
    field: PrimeField,
    d: u32,
    m: u32,
    rng: &mut R,
) -> Result<(GShape, PointConfiguration), SpaceError> {
    Recipe::new(d, Case::A { m })?;
    retry(rng, |rng| {
        let dirs = distinct_random_points(field, 2, (3 * d - 3 - m) as usize, &[], rng, |_| true);
        let (a_dirs, extra) = dirs.split_at(d as usize - 1);
        let b_lower = BinaryForm::new(field, (0..d).map(|_| field.random(rng)).collect());
        let b_top = BinaryForm::new(field, (0..=d).map(|_| field.random(rng)).collect());
        shape_case_a(d, m, a_dirs, &b_lower, &b_top, extra)
    })
}

/// Forms of degree `degree` in `(x, y, z)` with order `>= ell` at `(1:0:0)`,
/// as monomials.
fn structural_basis(field: PrimeField, degree: u32, ell: u32) -> Vec<MultiPoly> {
    monomials(3, degree)
        .into_iter()
        .filter(|m| degree - m.exps()[0] >= ell)
        .map(|m| MultiPoly::from_terms(field, 3, degree, [(m, field.one())]).unwrap())
        .collect()
}

pub fn sample_case_b<R: Rng + ?Sized>(
    field: PrimeField,
    d: u32,
    ell: u32,
    m: u32,
    rng: &mut R,
) -> Result<(GShape, PointConfiguration), SpaceError> {
    Recipe::new(d, Case::B { ell, m })?;
    let p0 = ProjectivePoint::coordinate(field, 3, 0);
    let a_basis = structural_basis(field, d - 1, ell);
    let b_basis = structural_basis(field, d, ell);
    retry(rng, |rng| {
        let shared =
            distinct_random_points(field, 3, m as usize, std::slice::from_ref(&p0), rng, |_| {
                true
            });
        let conds =
            |pts: &[ProjectivePoint]| pts.iter().map(|p| (p.clone(), 1)).collect::<Vec<_>>();
        let a_space = restrict_by_conditions(&a_basis, &conds(&shared))?;
        let a = MultiPoly::random_combination(&a_space, rng)
            .ok_or(SpaceError::EmptyLinearSystem { what: "A" })?;
        if a.is_zero() || a.order_at_first_coordinate_point() != ell {
            return Err(SpaceError::CriterionViolation(format!(
                "A is not exactly {ell}-fold at p0"
            )));
        }
        let mut avoid = shared.clone();
        avoid.push(p0.clone());
        let rest = distinct_random_points(field, 3, (2 * d - 2 - m) as usize, &avoid, rng, |p| {
            !a.eval_at(p).unwrap().is_zero()
        });
        let points: Vec<ProjectivePoint> = shared.iter().chain(&rest).cloned().collect();
        let b_space = restrict_by_conditions(&b_basis, &conds(&points))?;
        let b = MultiPoly::random_combination(&b_space, rng)
            .ok_or(SpaceError::EmptyLinearSystem { what: "B" })?;
        if b.is_zero() || b.order_at_first_coordinate_point() != ell {
            return Err(SpaceError::CriterionViolation(format!(
                "B is not exactly {ell}-fold at p0"
            )));
        }
        let shape = GShape::new(a, b, None)?;
        shape.check()?;
        let config = PointConfiguration::new(d, p0.clone(), points)?;
        Ok((shape, config))
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpaceCremonaMap {
    pub recipe: Recipe,
    pub shape: GShape,
    /// `t1, t2, t3` as `w`-free forms in `(w, x, y, z)`.
    pub t: [MultiPoly; 3],
    pub plane: PlaneCremonaMap,
}

impl SpaceCremonaMap {
    pub fn g(&self) -> &MultiPoly {
        &self.shape.g
    }

    pub fn field(&self) -> PrimeField {
        self.shape.g.field()
    }

    /// `c0 g + c1 t1 + c2 t2 + c3 t3`.
    pub fn member(&self, coeffs: &[Fp; 4]) -> Result<MultiPoly, SpaceError> {
        let mut acc = self.shape.g.scale(coeffs[0]);
        for (c, t) in coeffs[1..].iter().zip(&self.t) {
            acc = acc.add(&t.scale(*c))?;
        }
        Ok(acc)
    }

    /// `p0` with the expected multiplicity, then the `m` shared points.
    pub fn declared_base_points(&self) -> Vec<DeclaredBasePoint> {
        let config = &self.plane.config;
        std::iter::once(DeclaredBasePoint::new(
            config.p0().clone(),
            self.recipe.expected_p0_multiplicity(),
        ))
        .chain(
            config.simple_points()[..self.recipe.m() as usize]
                .iter()
                .map(|p| DeclaredBasePoint::new(p.clone(), 1)),
        )
        .collect()
    }
}

/// Checks the birationality hypotheses and builds the map.
pub fn assemble(
    shape: GShape,
    plane: PlaneCremonaMap,
    recipe: Recipe,
) -> Result<SpaceCremonaMap, SpaceError> {
    let d = recipe.d;
    if shape.d() != d || plane.r() != d {
        return Err(SpaceError::CriterionViolation(format!(
            "degree: g has degree {}, tau degree {}, recipe needs {d}",
            shape.d(),
            plane.r()
        )));
    }
    if plane
        .components
        .iter()
        .any(|t| t.degree() != d || t.nvars() != 3)
    {
        return Err(SpaceError::CriterionViolation(
            "degree: t components must be ternary of degree d".into(),
        ));
    }
    shape.check()?;
    let field = shape.g.field();
    if plane.config.p0() != &ProjectivePoint::coordinate(field, 3, 0) {
        return Err(SpaceError::CriterionViolation(
            "tau must have its (d-1)-fold point at (1:0:0)".into(),
        ));
    }
    let simple = plane.config.simple_points();
    let m = recipe.m() as usize;
    for (i, p) in simple.iter().enumerate() {
        let on_a = shape.a.eval_at(p)?.is_zero();
        if !shape.b.eval_at(p)?.is_zero() || on_a != (i < m) {
            return Err(SpaceError::CriterionViolation(format!(
                "simple point {} is not placed as the recipe requires",
                i + 1
            )));
        }
    }
    let order = shape
        .a
        .order_at_first_coordinate_point()
        .min(shape.b.order_at_first_coordinate_point());
    if order != recipe.ell() {
        return Err(SpaceError::CriterionViolation(format!(
            "g is {order}-fold along the line over p0, recipe needs {}",
            recipe.ell()
        )));
    }
    let normalized_simple: Vec<ProjectivePoint> = simple
        .iter()
        .map(|p| plane.normalization.inverse().apply_to_point(p))
        .collect();
    plane.witness.validate(d, &normalized_simple)?;
    let t = [
        plane.components[0].lift_prepend_var(),
        plane.components[1].lift_prepend_var(),
        plane.components[2].lift_prepend_var(),
    ];
    Ok(SpaceCremonaMap {
        recipe,
        shape,
        t,
        plane,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpaceVerification {
    pub members: [[Fp; 4]; 2],
    /// `(l_x, l_y, l_z)` of the slicing plane `w = l_x x + l_y y + l_z z`.
    pub slice: [Fp; 3],
    pub report: IntersectionReport,
}

/// Restriction of a form in `(w, x, y, z)` to `w = l(x, y, z)`.
pub fn slice_form(s: &MultiPoly, slice: &[Fp; 3]) -> Result<MultiPoly, SpaceError> {
    let field = s.field();
    let images = [
        MultiPoly::linear_form(slice),
        MultiPoly::var(field, 3, 0),
        MultiPoly::var(field, 3, 1),
        MultiPoly::var(field, 3, 2),
    ];
    Ok(s.substitute(&images)?)
}

fn random_member<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> [Fp; 4] {
    [
        field.random_nonzero(rng),
        field.random(rng),
        field.random(rng),
        field.random(rng),
    ]
}

/// One measurement: two random members, one random slice, no comparison
/// against the recipe.
pub fn measure_space<R: Rng + ?Sized>(
    map: &SpaceCremonaMap,
    rng: &mut R,
) -> Result<SpaceVerification, SpaceError> {
    let field = map.field();
    let base = map.declared_base_points();
    let mut last = None;
    for _ in 0..DEFAULT_RETRY_BUDGET {
        let members = [random_member(field, rng), random_member(field, rng)];
        let slice = [field.random(rng), field.random(rng), field.random(rng)];
        let c1 = slice_form(&map.member(&members[0])?, &slice)?;
        let c2 = slice_form(&map.member(&members[1])?, &slice)?;
        match oracle::residual_intersection(&c1, &c2, &base, rng) {
            Ok(report) => {
                return Ok(SpaceVerification {
                    members,
                    slice,
                    report,
                })
            }
            Err(e @ OracleError::GenericityExhausted { .. }) => last = Some(e),
            // A shared component of the slices that is not structural
            // means an unlucky slice; try another.
            Err(e @ OracleError::CommonComponent) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.expect("budget is positive").into())
}

fn conforms(map: &SpaceCremonaMap, report: &IntersectionReport) -> bool {
    oracle::check_against_expected(report, &map.declared_base_points())
        && report.residual == map.recipe.e
}

/// Certifies the bidegree: the multiplicity table matches the recipe and the
/// residual degree is `e`.
pub fn verify_space_bidegree<R: Rng + ?Sized>(
    map: &SpaceCremonaMap,
    rng: &mut R,
) -> Result<SpaceVerification, SpaceError> {
    let mut last = None;
    for _ in 0..DEFAULT_RETRY_BUDGET {
        let v = measure_space(map, rng)?;
        if conforms(map, &v.report) {
            return Ok(v);
        }
        last = Some(v.report);
    }
    let report = last.expect("budget is positive");
    let p0 = report.measured[0].multiplicity;
    if p0 != map.recipe.expected_p0_multiplicity() {
        return Err(SpaceError::BidegreeMismatch {
            what: "multiplicity at p0",
            expected: map.recipe.expected_p0_multiplicity() as u64,
            measured: p0 as u64,
        });
    }
    Err(SpaceError::BidegreeMismatch {
        what: "residual degree",
        expected: map.recipe.e as u64,
        measured: report.residual as u64,
    })
}

/// Deterministic re-measurement from stored members, slice and changes.
pub fn replay_space_verification(
    map: &SpaceCremonaMap,
    members: &[[Fp; 4]; 2],
    slice: &[Fp; 3],
    used: &LinearChange,
    confirming: &LinearChange,
) -> Result<IntersectionReport, SpaceError> {
    let c1 = slice_form(&map.member(&members[0])?, slice)?;
    let c2 = slice_form(&map.member(&members[1])?, slice)?;
    let report = oracle::replay(&c1, &c2, &map.declared_base_points(), used, confirming)?;
    if !conforms(map, &report) {
        return Err(SpaceError::BidegreeMismatch {
            what: "replayed residual degree",
            expected: map.recipe.e as u64,
            measured: report.residual as u64,
        });
    }
    Ok(report)
}

/// Derives a sub-seed from a master seed and a list of tags with the
/// splitmix64 finalizer, so every (task, attempt) pair has its own stream.
pub fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    tags.iter().fold(mix(master), |acc, &t| mix(acc ^ mix(t)))
}

/// Everything a successful forge produced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ForgeOutcome {
    pub seed: u64,
    pub attempts: usize,
    pub map: SpaceCremonaMap,
    pub plane_verification: PlaneVerification,
    pub space_verification: SpaceVerification,
}

/// One pass of the pipeline with a given generator.
pub fn forge_once<R: Rng + ?Sized>(
    field: PrimeField,
    recipe: Recipe,
    rng: &mut R,
) -> Result<(SpaceCremonaMap, PlaneVerification, SpaceVerification), SpaceError> {
    let (shape, config) = match recipe.case {
        Case::A { m } => sample_case_a(field, recipe.d, m, rng)?,
        Case::B { ell, m } => sample_case_b(field, recipe.d, ell, m, rng)?,
    };
    let t1_override = match recipe.case {
        Case::A { .. } => Some(shape.b.clone()),
        Case::B { .. } => None,
    };
    let plane = build_de_jonquieres(&config, rng, t1_override.as_ref())?;
    let plane_verification = verify_plane_homaloidal(&plane, rng)?;
    let map = assemble(shape, plane, recipe)?;
    let space_verification = verify_space_bidegree(&map, rng)?;
    Ok((map, plane_verification, space_verification))
}

/// Plans, samples, builds, assembles and verifies a map of bidegree
/// `(d, e)`. Attempt `k` runs on its own generator seeded from
/// `(seed, d, e, k)`, so the result depends only on the arguments.
pub fn forge(
    field: PrimeField,
    d: u32,
    e: u32,
    seed: u64,
    retries: usize,
) -> Result<ForgeOutcome, SpaceError> {
    let recipe = plan_bidegree(d, e)?;
    let mut transcript = String::from("no attempts made");
    for attempt in 0..retries {
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(seed, &[d as u64, e as u64, attempt as u64]));
        match forge_once(field, recipe, &mut rng) {
            Ok((map, plane_verification, space_verification)) => {
                return Ok(ForgeOutcome {
                    seed,
                    attempts: attempt + 1,
                    map,
                    plane_verification,
                    space_verification,
                })
            }
            Err(e) => transcript = format!("attempt {}: {e}", attempt + 1),
        }
    }
    Err(SpaceError::ForgeExhausted {
        attempts: retries,
        transcript,
    })
}
