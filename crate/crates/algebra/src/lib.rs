//! Explicit Cremona transformations of projective 3-space with prescribed
//! bidegree `(d, e)`, `d <= e <= d^2`, built as `(g : t1 : t2 : t3)` from a
//! plane de Jonquières map and certified by an exact intersection count over
//! a prime field.

pub mod binary;
pub mod certificate;
pub mod error;
pub mod field;
pub mod gcd;
pub mod linalg;
pub mod oracle;
pub mod plane;
pub mod point;
pub mod poly;
pub mod resultant;
pub mod space;
pub mod univariate;

pub use binary::BinaryForm;
pub use certificate::{
    parse_certificate, verify_certificate, BidegreeCertificate, Certificate, PlaneCertificate,
    Verdict,
};
pub use error::{AlgebraError, CertificateError, OracleError, PlaneError, SpaceError};
pub use field::{Fp, PrimeField, DEFAULT_PRIME};
pub use linalg::{LinearChange, Matrix};
pub use oracle::{DeclaredBasePoint, IntersectionReport};
pub use plane::{PlaneCremonaMap, PointConfiguration};
pub use point::ProjectivePoint;
pub use poly::MultiPoly;
pub use space::{forge, plan_bidegree, Case, Recipe, SpaceCremonaMap};
