use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not an admissible prime modulus")]
    InvalidModulus(u64),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
    #[error("arity mismatch: {0} variables vs {1}")]
    ArityMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("field elements from different moduli")]
    FieldMismatch,
    #[error("linear change of coordinates is singular")]
    SingularChange,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("both resultant arguments are constants")]
    BothConstant,
    #[error("curves share a common component")]
    CommonComponent,
    #[error("leading coefficient in the elimination variable is not a nonzero scalar")]
    BadLeadingCoefficient,
    #[error("binary form is identically zero")]
    ZeroForm,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("field with {modulus} elements too small for {needed} interpolation nodes")]
    FieldTooSmall { modulus: u64, needed: u64 },
    #[error("malformed input: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("curves share a common component")]
    CommonComponent,
    #[error("no generic projection found after {attempts} attempts")]
    GenericityExhausted { attempts: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid point configuration: {0}")]
    InvalidConfiguration(String),
    #[error("linear system of degree {degree} curves is empty")]
    EmptyLinearSystem { degree: u32 },
    #[error("curve of degree r through the configuration is reducible")]
    IrreducibilityFailure,
    #[error("multiplicity at p0 is {found}, expected {expected}")]
    MultiplicityFailure { expected: u32, found: u32 },
    #[error("net has a fixed component")]
    FixedComponent,
    #[error("net is not homaloidal: {0}")]
    HomaloidalFailure(String),
    #[error("no verified map after {attempts} attempts; last failure: {last}")]
    RetriesExhausted { attempts: usize, last: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(
        "bidegree ({d},{e}) is out of range: Cremona maps of bidegree (d,e) exist with √d ≤ e ≤ d² (sqrt(d) <= e <= d^2); \
         this construction covers d <= e <= d^2 = {max}, and maps with e < d arise only as inverses of \
         (e,d) maps, which are not built here"
    )]
    OutOfRange { d: u32, e: u32, max: u32 },
    #[error("invalid recipe parameters: {0}")]
    InvalidRecipe(String),
    #[error("structural linear system for {what} is empty")]
    EmptyLinearSystem { what: &'static str },
    #[error("no generic sample found after {attempts} attempts: {last}")]
    GenericityExhausted { attempts: usize, last: String },
    #[error("birationality hypothesis violated: {0}")]
    CriterionViolation(String),
    #[error("measured {what} {measured}, expected {expected}")]
    BidegreeMismatch {
        what: &'static str,
        expected: u64,
        measured: u64,
    },
    #[error("forge exhausted {attempts} attempts; last failure: {transcript}")]
    ForgeExhausted { attempts: usize, transcript: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

impl From<AlgebraError> for CertificateError {
    fn from(e: AlgebraError) -> Self {
        CertificateError::Malformed(e.to_string())
    }
}

impl From<serde_json::Error> for CertificateError {
    fn from(e: serde_json::Error) -> Self {
        CertificateError::Malformed(e.to_string())
    }
}
