use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes identically after substitution")]
    VanishingDenominator,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent (X^7 != 0)")]
    NotNilpotent,
    #[error("matrix is not unipotent (U - I is not nilpotent)")]
    NotUnipotent,
    #[error("matrix is not in the image of the Lie algebra realization: {0}")]
    NotInRealization(String),
    #[error("element does not lie in {subgroup}: {detail}")]
    NotInSubgroup { subgroup: &'static str, detail: String },
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("root {0} is not positive; negative root vectors come from the y-coordinates")]
    NegativeRoot(String),
    #[error("no normalizing parameter for the root vector ansatz of {0}")]
    NoNormalizer(String),
    #[error("point lies outside N' (x10 = 0)")]
    OutsideOpenOrbit,
    #[error("torus parameter t must be nonzero")]
    ZeroTorusParameter,
    #[error("GL2 element is singular")]
    SingularGl2,
    #[error("discriminant x21^2 + x32 vanishes")]
    DiscriminantVanishes,
    #[error("not in the big cell of M (c = 0)")]
    NotInBigCellOfM,
    #[error("pattern certification failed: {0}")]
    PatternCertificationFailed(String),
    #[error("linear system for the opposite unipotent coordinates is inconsistent: {0}")]
    InconsistentSystem(String),
    #[error("plain tropical mode needs p >= 5 (got {0}); use the constant-aware mode for p in {{2, 3}}")]
    PrimeTooSmall(i64),
    #[error("missing upstream certificate: {0}")]
    MissingCertificate(&'static str),
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
