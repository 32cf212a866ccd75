//! Crate-wide error type.
//!
//! Variants are grouped by the failure class they represent so the CLI can map
//! them onto its exit-code partition (config / domain / internal).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // --- exactnum ---
    #[error("coefficient field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime (prime fields require a prime modulus < 2^31)")]
    NotPrime(u64),
    #[error("series composition requires ord(inner) >= 1 (inner has nonzero constant term)")]
    CompositionConstantTerm,
    #[error("series division requires a unit divisor (nonzero constant term)")]
    NonUnitDivisor,
    #[error("division by zero coefficient")]
    DivisionByZero,

    // --- bipoly / parsing ---
    #[error("evaluation arity mismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("ord_at of the zero polynomial is undefined")]
    ZeroPolynomialOrd,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("polynomial is not bi-homogeneous: {0}")]
    NotBiHomogeneous(String),
    #[error("polynomial uses variables outside the expected ring: {0}")]
    WrongRing(String),

    // --- systems ---
    #[error("singular initial point: A0(0, f(0)) = 0")]
    SingularInitialPoint,
    #[error("characteristic obstruction at index {0}: division by the characteristic")]
    CharacteristicObstruction(usize),
    #[error("Mahler solver requires lambda = ord_z p >= 2 (got {0})")]
    LambdaTooSmall(usize),
    #[error("non-invertible linear part in the Mahler solve (matrix singular at z = 0)")]
    NonInvertibleLinearPart,
    #[error("insufficient seed: {0}")]
    InsufficientSeed(String),
    #[error(
        "growth-parameter violation applying phi: bidegree ({m0},{n0}) -> ({m1},{n1}) \
         exceeds mu={mu}, nu0={nu0}, nu1={nu1} (misconfigured growth parameters)"
    )]
    GrowthViolation {
        m0: usize,
        n0: usize,
        m1: usize,
        n1: usize,
        mu: String,
        nu0: String,
        nu1: String,
    },
    #[error("no admissible samples for lambda estimation (need Exact ord >= K_lambda)")]
    NoAdmissibleSamples,

    // --- idealkit / stabledyn ---
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("operation undefined for the unit ideal (1)")]
    UnitIdeal,
    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,
    #[error("degenerate system: determinant of T_z is identically zero")]
    DegenerateSystem,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    // --- projgeo ---
    #[error("empty cycle")]
    EmptyCycle,
    #[error("polynomial vanishes identically on the cycle (Liouville precondition)")]
    VanishesOnCycle,

    // --- audit ---
    #[error("parameter domain violation: {0}")]
    ParamDomain(String),
    #[error("precision too small: {0}")]
    PrecisionTooSmall(String),
    #[error("empty grid range")]
    EmptyGrid,

    // --- config / cli ---
    #[error("config error: {0}")]
    Config(String),
    #[error("unresolved name: {0}")]
    Unresolved(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit-code class: 1 = config, 2 = domain, 3 = internal.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Config(_) | Unresolved(_) | Json(_) | Parse { .. } | Io(_) => 1,
            ResourceCap(_) => 3,
            _ => 2,
        }
    }
}
