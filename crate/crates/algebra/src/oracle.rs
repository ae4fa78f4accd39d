//! Intersection oracle: how the intersection of two plane curves splits
//! between declared base points and everything else.
//!
//! After a random change of coordinates the eliminant of the two curves with
//! respect to `x` is a binary form of degree `deg F * deg G` whose root at a
//! direction `(y:z)` has multiplicity equal to the total intersection
//! multiplicity of the points projecting there. Each declared base point is
//! read off at its own projection; whatever is left over is the residual.
//! A second, independent change must reproduce the same table, which rules
//! out an unrelated intersection point hiding behind a base point's
//! projection.

use rand::Rng;

use crate::error::{AlgebraError, OracleError};
use crate::linalg::LinearChange;
use crate::point::ProjectivePoint;
use crate::poly::MultiPoly;
use crate::resultant::eliminant;

pub const DEFAULT_RETRY_BUDGET: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeclaredBasePoint {
    pub point: ProjectivePoint,
    /// 0 declares a point that must not be on both curves.
    pub expected_multiplicity: u32,
}

impl DeclaredBasePoint {
    pub fn new(point: ProjectivePoint, expected_multiplicity: u32) -> Self {
        DeclaredBasePoint {
            point,
            expected_multiplicity,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeasuredPoint {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionReport {
    pub total_degree: u32,
    pub measured: Vec<MeasuredPoint>,
    pub residual: u32,
    pub linear_change_used: LinearChange,
    /// The independent change whose measurement confirmed the first.
    pub confirming_change: LinearChange,
    pub attempts: usize,
}

impl IntersectionReport {
    pub fn measured_total(&self) -> u32 {
        self.measured.iter().map(|m| m.multiplicity).sum()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.measured.iter().map(|m| m.multiplicity).collect()
    }
}

/// Outcome of one measurement under a fixed change of coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Measurement {
    Measured {
        multiplicities: Vec<u32>,
        residual: u32,
    },
    /// The change is not generic for this input: a curve passes through
    /// `(1:0:0)` or two base points share a projection.
    NotGeneric(&'static str),
}

fn validate(f: &MultiPoly, g: &MultiPoly, base: &[DeclaredBasePoint]) -> Result<(), OracleError> {
    if f.nvars() != 3 || g.nvars() != 3 {
        return Err(AlgebraError::ArityMismatch(3, f.nvars().max(g.nvars())).into());
    }
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial.into());
    }
    for (i, a) in base.iter().enumerate() {
        if a.point.dim() != 3 {
            return Err(AlgebraError::ArityMismatch(3, a.point.dim()).into());
        }
        if base[..i].iter().any(|b| b.point == a.point) {
            return Err(AlgebraError::Malformed(format!(
                "base point {:?} declared twice",
                a.point
            ))
            .into());
        }
    }
    Ok(())
}

/// Measures the base point multiplicities and the residual under `change`.
pub fn measure_under_change(
    f: &MultiPoly,
    g: &MultiPoly,
    base: &[DeclaredBasePoint],
    change: &LinearChange,
) -> Result<Measurement, OracleError> {
    validate(f, g, base)?;
    let ft = f.apply_linear_change(change)?;
    let gt = g.apply_linear_change(change)?;
    let (a, b) = (f.degree(), g.degree());
    if ft.coeff(&[a, 0, 0]).is_zero() || gt.coeff(&[b, 0, 0]).is_zero() {
        return Ok(Measurement::NotGeneric(
            "a curve passes through the projection centre",
        ));
    }
    let inverse = change.inverse();
    let mut projections: Vec<ProjectivePoint> = Vec::with_capacity(base.len());
    for bp in base {
        let q = inverse.apply_to_point(&bp.point);
        let Ok(proj) = ProjectivePoint::new(q.coords()[1..].to_vec()) else {
            return Ok(Measurement::NotGeneric(
                "a base point is the projection centre",
            ));
        };
        if projections.contains(&proj) {
            return Ok(Measurement::NotGeneric(
                "two base points share a projection",
            ));
        }
        projections.push(proj);
    }
    let r = match eliminant(&ft, &gt) {
        Ok(r) => r,
        Err(AlgebraError::CommonComponent) => return Err(OracleError::CommonComponent),
        Err(e) => return Err(e.into()),
    };
    let multiplicities = projections
        .iter()
        .map(|p| r.root_multiplicity(p.coords()[0], p.coords()[1]))
        .collect::<Result<Vec<u32>, _>>()?;
    let total = a * b;
    let consumed: u32 = multiplicities.iter().sum();
    debug_assert!(consumed <= total);
    Ok(Measurement::Measured {
        multiplicities,
        residual: total - consumed,
    })
}

fn report(
    f: &MultiPoly,
    g: &MultiPoly,
    base: &[DeclaredBasePoint],
    multiplicities: Vec<u32>,
    residual: u32,
    used: LinearChange,
    confirming: LinearChange,
    attempts: usize,
) -> IntersectionReport {
    IntersectionReport {
        total_degree: f.degree() * g.degree(),
        measured: base
            .iter()
            .zip(multiplicities)
            .map(|(bp, m)| MeasuredPoint {
                point: bp.point.clone(),
                multiplicity: m,
            })
            .collect(),
        residual,
        linear_change_used: used,
        confirming_change: confirming,
        attempts,
    }
}

/// Measures under random changes until two independent ones agree.
pub fn residual_intersection<R: Rng + ?Sized>(
    f: &MultiPoly,
    g: &MultiPoly,
    base: &[DeclaredBasePoint],
    rng: &mut R,
) -> Result<IntersectionReport, OracleError> {
    residual_intersection_with_budget(f, g, base, rng, DEFAULT_RETRY_BUDGET)
}

pub fn residual_intersection_with_budget<R: Rng + ?Sized>(
    f: &MultiPoly,
    g: &MultiPoly,
    base: &[DeclaredBasePoint],
    rng: &mut R,
    budget: usize,
) -> Result<IntersectionReport, OracleError> {
    validate(f, g, base)?;
    let field = f.field();
    for attempt in 1..=budget {
        let first = LinearChange::random(field, 3, rng);
        let Measurement::Measured {
            multiplicities,
            residual,
        } = measure_under_change(f, g, base, &first)?
        else {
            continue;
        };
        let second = LinearChange::random(field, 3, rng);
        let Measurement::Measured {
            multiplicities: again,
            residual: residual_again,
        } = measure_under_change(f, g, base, &second)?
        else {
            continue;
        };
        if again == multiplicities && residual_again == residual {
            return Ok(report(
                f,
                g,
                base,
                multiplicities,
                residual,
                first,
                second,
                attempt,
            ));
        }
    }
    Err(OracleError::GenericityExhausted { attempts: budget })
}

/// Deterministic re-measurement under two stored changes; fails unless both
/// are generic and agree.
pub fn replay(
    f: &MultiPoly,
    g: &MultiPoly,
    base: &[DeclaredBasePoint],
    used: &LinearChange,
    confirming: &LinearChange,
) -> Result<IntersectionReport, OracleError> {
    let a = measure_under_change(f, g, base, used)?;
    let b = measure_under_change(f, g, base, confirming)?;
    match (a, b) {
        (
            Measurement::Measured {
                multiplicities,
                residual,
            },
            Measurement::Measured {
                multiplicities: m2,
                residual: r2,
            },
        ) if multiplicities == m2 && residual == r2 => Ok(report(
            f,
            g,
            base,
            multiplicities,
            residual,
            used.clone(),
            confirming.clone(),
            1,
        )),
        _ => Err(OracleError::GenericityExhausted { attempts: 1 }),
    }
}

/// True iff every measured multiplicity equals the declared expectation.
pub fn check_against_expected(report: &IntersectionReport, base: &[DeclaredBasePoint]) -> bool {
    report.measured.len() == base.len()
        && report
            .measured
            .iter()
            .zip(base)
            .all(|(m, b)| m.point == b.point && m.multiplicity == b.expected_multiplicity)
}
