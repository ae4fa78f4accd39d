//! Self-contained JSON certificates and their deterministic re-verification.
//!
//! A certificate stores every polynomial, point, member coefficient and
//! change of coordinates used, so checking it never samples. Field elements,
//! the prime and the seed are decimal strings; keys are sorted and term
//! lists are leading term first, so equal certificates are equal bytes.

use serde::{Deserialize, Serialize};

use crate::error::CertificateError;
use crate::field::{is_prime, Fp, PrimeField};
use crate::linalg::{LinearChange, Matrix};
use crate::oracle::{DeclaredBasePoint, IntersectionReport};
use crate::plane::{
    replay_plane_verification, DeJonquieresWitness, PlaneCremonaMap, PlaneOutcome,
    PointConfiguration,
};
use crate::point::ProjectivePoint;
use crate::poly::{MultiPoly, TermRecord};
use crate::space::{assemble, replay_space_verification, Case, ForgeOutcome, GShape, Recipe};

pub const FORMAT_VERSION: u32 = 1;
pub const STATUS_VERIFIED: &str = "verified";

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RecipeRecord {
    pub case: String,
    pub ell: Option<u32>,
    pub m: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub point: Vec<String>,
    pub expected: u32,
    pub measured: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlaneReportRecord {
    pub member_coeffs: Vec<Vec<String>>,
    pub linear_change: Vec<Vec<String>>,
    pub confirming_change: Vec<Vec<String>>,
    pub table: Vec<TableRow>,
    pub total_degree: u32,
    pub residual: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpaceReportRecord {
    pub member_coeffs: Vec<Vec<String>>,
    pub slice_form: Vec<String>,
    pub linear_change: Vec<Vec<String>>,
    pub confirming_change: Vec<Vec<String>>,
    pub table: Vec<TableRow>,
    pub total_degree: u32,
    pub residual: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpacePolynomials {
    #[serde(rename = "A")]
    pub a: Vec<TermRecord>,
    #[serde(rename = "B")]
    pub b: Vec<TermRecord>,
    pub g: Vec<TermRecord>,
    pub t1: Vec<TermRecord>,
    pub t2: Vec<TermRecord>,
    pub t3: Vec<TermRecord>,
    /// In normalized coordinates.
    pub f: Vec<TermRecord>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BidegreeCertificate {
    pub format_version: u32,
    pub kind: String,
    pub prime: String,
    pub seed: String,
    pub d: u32,
    pub e: u32,
    pub recipe: RecipeRecord,
    pub attempts: usize,
    /// `p0` first, then the simple points.
    pub points: Vec<Vec<String>>,
    pub polynomials: SpacePolynomials,
    pub normalization_matrix: Vec<Vec<String>>,
    pub plane_report: PlaneReportRecord,
    pub space_report: SpaceReportRecord,
    pub warnings: Vec<String>,
    pub status: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlanePolynomials {
    pub t1: Vec<TermRecord>,
    pub t2: Vec<TermRecord>,
    pub t3: Vec<TermRecord>,
    /// In normalized coordinates.
    pub f: Vec<TermRecord>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlaneCertificate {
    pub format_version: u32,
    pub kind: String,
    pub prime: String,
    pub seed: String,
    pub r: u32,
    pub attempts: usize,
    pub points: Vec<Vec<String>>,
    pub polynomials: PlanePolynomials,
    pub normalization_matrix: Vec<Vec<String>>,
    pub plane_report: PlaneReportRecord,
    pub warnings: Vec<String>,
    pub status: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    Bidegree(BidegreeCertificate),
    Plane(PlaneCertificate),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Verified,
    Rejected(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // Value's map is ordered, so a round trip sorts every object's keys.
    let v = serde_json::to_value(value).expect("certificate types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    match v.get("kind").and_then(|k| k.as_str()) {
        Some("bidegree") => Ok(Certificate::Bidegree(serde_json::from_value(v)?)),
        Some("plane") => Ok(Certificate::Plane(serde_json::from_value(v)?)),
        Some(other) => Err(CertificateError::Malformed(format!(
            "unknown kind {other:?}"
        ))),
        None => Err(CertificateError::Malformed("missing kind".into())),
    }
}

pub fn verify(cert: &Certificate) -> Result<Verdict, CertificateError> {
    match cert {
        Certificate::Bidegree(c) => check_bidegree(c),
        Certificate::Plane(c) => check_plane(c),
    }
}

/// True iff every stored check replays and the residual equals `e`.
pub fn verify_certificate(cert: &BidegreeCertificate) -> Result<bool, CertificateError> {
    Ok(check_bidegree(cert)?.is_verified())
}

fn strs(v: &[Fp]) -> Vec<String> {
    v.iter().map(|c| c.value().to_string()).collect()
}

fn matrix_strs(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strs(r)).collect()
}

fn table(report: &IntersectionReport, base: &[DeclaredBasePoint]) -> Vec<TableRow> {
    report
        .measured
        .iter()
        .zip(base)
        .map(|(m, b)| TableRow {
            point: strs(m.point.coords()),
            expected: b.expected_multiplicity,
            measured: m.multiplicity,
        })
        .collect()
}

fn points_of(config: &PointConfiguration) -> Vec<Vec<String>> {
    std::iter::once(config.p0())
        .chain(config.simple_points())
        .map(|p| strs(p.coords()))
        .collect()
}

fn plane_report_record(
    map: &PlaneCremonaMap,
    members: &[[Fp; 3]; 2],
    report: &IntersectionReport,
) -> PlaneReportRecord {
    PlaneReportRecord {
        member_coeffs: members.iter().map(|m| strs(m)).collect(),
        linear_change: matrix_strs(report.linear_change_used.matrix()),
        confirming_change: matrix_strs(report.confirming_change.matrix()),
        table: table(report, &map.config.declared_base_points()),
        total_degree: report.total_degree,
        residual: report.residual,
    }
}

impl BidegreeCertificate {
    pub fn from_outcome(outcome: &ForgeOutcome) -> Self {
        let map = &outcome.map;
        let recipe = map.recipe;
        let (case, ell) = match recipe.case {
            Case::A { .. } => ("A", None),
            Case::B { ell, .. } => ("B", Some(ell)),
        };
        let sv = &outcome.space_verification;
        let pv = &outcome.plane_verification;
        BidegreeCertificate {
            format_version: FORMAT_VERSION,
            kind: "bidegree".into(),
            prime: map.field().modulus().to_string(),
            seed: outcome.seed.to_string(),
            d: recipe.d,
            e: recipe.e,
            recipe: RecipeRecord {
                case: case.into(),
                ell,
                m: recipe.m(),
            },
            attempts: outcome.attempts,
            points: points_of(&map.plane.config),
            polynomials: SpacePolynomials {
                a: map.shape.a.to_records(),
                b: map.shape.b.to_records(),
                g: map.shape.g.to_records(),
                t1: map.plane.components[0].to_records(),
                t2: map.plane.components[1].to_records(),
                t3: map.plane.components[2].to_records(),
                f: map.plane.witness.f.to_records(),
            },
            normalization_matrix: matrix_strs(map.plane.normalization.matrix()),
            plane_report: plane_report_record(&map.plane, &pv.members, &pv.report),
            space_report: SpaceReportRecord {
                member_coeffs: sv.members.iter().map(|m| strs(m)).collect(),
                slice_form: strs(&sv.slice),
                linear_change: matrix_strs(sv.report.linear_change_used.matrix()),
                confirming_change: matrix_strs(sv.report.confirming_change.matrix()),
                table: table(&sv.report, &map.declared_base_points()),
                total_degree: sv.report.total_degree,
                residual: sv.report.residual,
            },
            warnings: map.plane.warnings.clone(),
            status: STATUS_VERIFIED.into(),
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }
}

impl PlaneCertificate {
    pub fn from_outcome(outcome: &PlaneOutcome) -> Self {
        let map = &outcome.map;
        let v = &outcome.verification;
        PlaneCertificate {
            format_version: FORMAT_VERSION,
            kind: "plane".into(),
            prime: map.config.field().modulus().to_string(),
            seed: outcome.seed.to_string(),
            r: map.r(),
            attempts: outcome.attempts,
            points: points_of(&map.config),
            polynomials: PlanePolynomials {
                t1: map.components[0].to_records(),
                t2: map.components[1].to_records(),
                t3: map.components[2].to_records(),
                f: map.witness.f.to_records(),
            },
            normalization_matrix: matrix_strs(map.normalization.matrix()),
            plane_report: plane_report_record(map, &v.members, &v.report),
            warnings: map.warnings.clone(),
            status: STATUS_VERIFIED.into(),
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }
}

// ---- parsing helpers: shape errors are malformed input ----

fn malformed(msg: impl Into<String>) -> CertificateError {
    CertificateError::Malformed(msg.into())
}

fn parse_field(prime: &str) -> Result<PrimeField, CertificateError> {
    let p: u64 = prime
        .trim()
        .parse()
        .map_err(|_| malformed(format!("prime {prime:?}")))?;
    if !is_prime(p) {
        return Err(malformed(format!("{p} is not prime")));
    }
    Ok(PrimeField::new(p)?)
}

fn parse_vec(field: PrimeField, v: &[String], len: usize) -> Result<Vec<Fp>, CertificateError> {
    if v.len() != len {
        return Err(malformed(format!(
            "expected {len} entries, found {}",
            v.len()
        )));
    }
    Ok(v.iter().map(|s| field.parse(s)).collect::<Result<_, _>>()?)
}

fn parse_array<const N: usize>(
    field: PrimeField,
    v: &[String],
) -> Result<[Fp; N], CertificateError> {
    Ok(parse_vec(field, v, N)?.try_into().expect("length checked"))
}

fn parse_matrix(
    field: PrimeField,
    rows: &[Vec<String>],
    n: usize,
) -> Result<Matrix, CertificateError> {
    if rows.len() != n {
        return Err(malformed(format!("expected a {n}x{n} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| parse_vec(field, r, n))
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

fn parse_point(field: PrimeField, v: &[String]) -> Result<ProjectivePoint, CertificateError> {
    let raw = parse_vec(field, v, 3)?;
    let p = ProjectivePoint::new(raw.clone())?;
    // points are stored normalized, so each one has a single spelling
    if p.coords() != raw.as_slice() {
        return Err(malformed("point is not normalized"));
    }
    Ok(p)
}

fn parse_poly(
    field: PrimeField,
    nvars: usize,
    degree: u32,
    terms: &[TermRecord],
) -> Result<MultiPoly, CertificateError> {
    Ok(MultiPoly::from_records(field, nvars, degree, terms)?)
}

fn parse_members<const N: usize>(
    field: PrimeField,
    rows: &[Vec<String>],
) -> Result<[[Fp; N]; 2], CertificateError> {
    if rows.len() != 2 {
        return Err(malformed("expected two member coefficient tuples"));
    }
    Ok([parse_array(field, &rows[0])?, parse_array(field, &rows[1])?])
}

/// Stored changes; a singular one is a failed check, not a parse error.
fn parse_changes(
    field: PrimeField,
    used: &[Vec<String>],
    confirming: &[Vec<String>],
) -> Result<Option<(LinearChange, LinearChange)>, CertificateError> {
    let a = LinearChange::new(parse_matrix(field, used, 3)?);
    let b = LinearChange::new(parse_matrix(field, confirming, 3)?);
    Ok(a.ok().zip(b.ok()))
}

macro_rules! reject_unless {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Verdict::Rejected(format!($($msg)+)));
        }
    };
}

macro_rules! reject_on_err {
    ($res:expr, $what:expr) => {
        match $res {
            Ok(v) => v,
            Err(e) => return Ok(Verdict::Rejected(format!("{}: {}", $what, e))),
        }
    };
}

/// Rebuilds the plane map from stored data: the configuration, the
/// normalization and the witness `(t1 . N, f)`; its components must
/// reproduce the stored ones exactly.
fn rebuild_plane(
    field: PrimeField,
    r: u32,
    points: &[Vec<String>],
    t: [&[TermRecord]; 3],
    f: &[TermRecord],
    normalization: &[Vec<String>],
    warnings: &[String],
) -> Result<Result<PlaneCremonaMap, String>, CertificateError> {
    if r < 2 {
        return Ok(Err(format!("degree {r} is below 2")));
    }
    let pts: Vec<ProjectivePoint> = points
        .iter()
        .map(|p| parse_point(field, p))
        .collect::<Result<_, _>>()?;
    if pts.is_empty() {
        return Ok(Err("no points stored".into()));
    }
    let stored = [
        parse_poly(field, 3, r, t[0])?,
        parse_poly(field, 3, r, t[1])?,
        parse_poly(field, 3, r, t[2])?,
    ];
    let f = parse_poly(field, 3, r - 1, f)?;
    let n = match LinearChange::new(parse_matrix(field, normalization, 3)?) {
        Ok(n) => n,
        Err(e) => return Ok(Err(format!("normalization: {e}"))),
    };
    let config = match PointConfiguration::new(r, pts[0].clone(), pts[1..].to_vec()) {
        Ok(c) => c,
        Err(e) => return Ok(Err(format!("configuration: {e}"))),
    };
    if &n.apply_to_point(&ProjectivePoint::coordinate(field, 3, 0)) != config.p0() {
        return Ok(Err("normalization does not carry (1:0:0) to p0".into()));
    }
    let witness = DeJonquieresWitness {
        t1: stored[0].apply_linear_change(&n)?,
        f,
    };
    let back = n.inverse();
    let normalized: Vec<ProjectivePoint> = config
        .simple_points()
        .iter()
        .map(|p| back.apply_to_point(p))
        .collect();
    if let Err(e) = witness.validate(r, &normalized) {
        return Ok(Err(format!("witness: {e}")));
    }
    let map = PlaneCremonaMap::from_witness(config, witness, n, warnings.to_vec())?;
    if map.components != stored {
        return Ok(Err("stored components are not (t1 : y f : z f)".into()));
    }
    Ok(Ok(map))
}

fn check_plane_report(
    field: PrimeField,
    map: &PlaneCremonaMap,
    rec: &PlaneReportRecord,
) -> Result<Option<String>, CertificateError> {
    let members = parse_members::<3>(field, &rec.member_coeffs)?;
    let Some((used, confirming)) =
        parse_changes(field, &rec.linear_change, &rec.confirming_change)?
    else {
        return Ok(Some("plane report: singular change of coordinates".into()));
    };
    let report = match replay_plane_verification(map, &members, &used, &confirming) {
        Ok(r) => r,
        Err(e) => return Ok(Some(format!("plane report: {e}"))),
    };
    let expected = plane_report_record(map, &members, &report);
    if &expected != rec {
        return Ok(Some(
            "plane report: stored table differs from the replay".into(),
        ));
    }
    Ok(None)
}

fn check_bidegree(cert: &BidegreeCertificate) -> Result<Verdict, CertificateError> {
    if cert.format_version != FORMAT_VERSION || cert.kind != "bidegree" {
        return Err(malformed("unsupported format version or kind"));
    }
    let field = parse_field(&cert.prime)?;
    cert.seed.parse::<u64>().map_err(|_| malformed("seed"))?;
    let d = cert.d;
    let case = match (cert.recipe.case.as_str(), cert.recipe.ell) {
        ("A", None) => Case::A { m: cert.recipe.m },
        ("B", Some(ell)) => Case::B {
            ell,
            m: cert.recipe.m,
        },
        _ => return Err(malformed("recipe case")),
    };
    let recipe = reject_on_err!(Recipe::new(d, case), "recipe");
    reject_unless!(
        recipe.e == cert.e,
        "recipe gives e = {}, certificate claims {}",
        recipe.e,
        cert.e
    );
    reject_unless!(d <= cert.e && cert.e <= d * d, "e outside [d, d^2]");
    reject_unless!(
        cert.status == STATUS_VERIFIED,
        "status is {:?}",
        cert.status
    );
    reject_unless!(
        cert.points.len() == 2 * d as usize - 1,
        "expected {} points",
        2 * d - 1
    );

    let p = &cert.polynomials;
    let a = parse_poly(field, 3, d - 1, &p.a)?;
    let b = parse_poly(field, 3, d, &p.b)?;
    let g = parse_poly(field, 4, d, &p.g)?;
    let shape = reject_on_err!(GShape::new(a, b, None), "shape");
    reject_unless!(shape.g == g, "g is not w A + B");
    reject_on_err!(shape.check(), "shape");
    reject_unless!(
        !shape.a.is_zero()
            && shape.a.order_at_first_coordinate_point() == recipe.ell()
            && shape.b.order_at_first_coordinate_point() == recipe.ell(),
        "A and B are not both exactly {}-fold at p0",
        recipe.ell()
    );
    if let Case::A { .. } = case {
        let parts = shape.b.x_coefficients();
        let coprime_parts =
            crate::binary::BinaryForm::gcd(&parts[1], &parts[0]).map(|h| h.degree() == 0);
        reject_unless!(coprime_parts == Ok(true), "B_(d-1) and B_d share a factor");
    }

    let plane = match rebuild_plane(
        field,
        d,
        &cert.points,
        [&p.t1, &p.t2, &p.t3],
        &p.f,
        &cert.normalization_matrix,
        &cert.warnings,
    )? {
        Ok(m) => m,
        Err(why) => return Ok(Verdict::Rejected(why)),
    };
    if matches!(case, Case::A { .. }) {
        reject_unless!(plane.components[0] == shape.b, "case A requires t1 = B");
    }
    if let Some(why) = check_plane_report(field, &plane, &cert.plane_report)? {
        return Ok(Verdict::Rejected(why));
    }
    let map = reject_on_err!(assemble(shape, plane, recipe), "assemble");

    let rec = &cert.space_report;
    let members = parse_members::<4>(field, &rec.member_coeffs)?;
    let slice: [Fp; 3] = parse_array(field, &rec.slice_form)?;
    let Some((used, confirming)) =
        parse_changes(field, &rec.linear_change, &rec.confirming_change)?
    else {
        return Ok(Verdict::Rejected(
            "space report: singular change of coordinates".into(),
        ));
    };
    let report = reject_on_err!(
        replay_space_verification(&map, &members, &slice, &used, &confirming),
        "space report"
    );
    reject_unless!(
        table(&report, &map.declared_base_points()) == rec.table,
        "space report: stored table differs from the replay"
    );
    reject_unless!(
        report.residual == rec.residual && report.total_degree == rec.total_degree,
        "space report: stored residual differs from the replay"
    );
    reject_unless!(
        rec.residual == cert.e,
        "residual {} differs from e = {}",
        rec.residual,
        cert.e
    );
    Ok(Verdict::Verified)
}

fn check_plane(cert: &PlaneCertificate) -> Result<Verdict, CertificateError> {
    if cert.format_version != FORMAT_VERSION || cert.kind != "plane" {
        return Err(malformed("unsupported format version or kind"));
    }
    let field = parse_field(&cert.prime)?;
    cert.seed.parse::<u64>().map_err(|_| malformed("seed"))?;
    reject_unless!(
        cert.status == STATUS_VERIFIED,
        "status is {:?}",
        cert.status
    );
    let p = &cert.polynomials;
    let map = match rebuild_plane(
        field,
        cert.r,
        &cert.points,
        [&p.t1, &p.t2, &p.t3],
        &p.f,
        &cert.normalization_matrix,
        &cert.warnings,
    )? {
        Ok(m) => m,
        Err(why) => return Ok(Verdict::Rejected(why)),
    };
    reject_unless!(
        map.config.homaloidal_arithmetic_holds(),
        "multiplicities are not homaloidal"
    );
    if let Some(why) = check_plane_report(field, &map, &cert.plane_report)? {
        return Ok(Verdict::Rejected(why));
    }
    Ok(Verdict::Verified)
}
