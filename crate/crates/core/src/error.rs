use thiserror::Error;

/// How an error maps onto the CLI exit-code taxonomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// The mathematics says no: a hypothesis of a criterion is not met.
    Hypotheses,
    /// Malformed or inconsistent input.
    Input,
    /// A self-check failed; indicates a bug.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient has negative valuation and leaves the ring")]
    DivisionLeavesRing,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("multiplication is not commutative on basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector does not act as identity on basis element {0}")]
    NotUnital(usize),
    #[error("algebra is not local; idempotent witness {witness}")]
    NotLocal { witness: String },
    #[error("values do not define an algebra map: fails on basis pair ({0}, {1})")]
    NotAlgebraMap(usize, usize),
    #[error("congruence module has infinite length: point is not regular of codimension 0")]
    NonFiniteCongruenceModule,
    #[error("point is not regular of codimension 0")]
    NotRegularPoint,
    #[error("module has depth zero (O-torsion present)")]
    ZeroDepth,
    #[error("module is not supported at the point")]
    NotSupported,
    #[error("zero module rejected")]
    ZeroModule,
    #[error("elements are not a minimal generating set: {0}")]
    NotMinimalGenerators(String),
    #[error("algebra is not artinian")]
    NotArtinian,
    #[error("element does not lie in the kernel of the point")]
    NotInIdeal,
    #[error("Buchberger exceeded degree cap {0}")]
    DegreeCapExceeded(u32),
    #[error("presentation is not certifiably finite: {0}")]
    NotCertifiablyFinite(String),
    #[error("normal form coefficient leaves the ring: {0}")]
    CoefficientLeavesRing(String),
    #[error("cut element lies in the symbolic square of the point")]
    SymbolicSquareViolation,
    #[error("cut chain has length {found}, codimension is {expected}")]
    ChainLengthMismatch { expected: usize, found: usize },
    #[error("no homotopy for generator {generator}: {reason}")]
    UnsolvableHomotopy { generator: usize, reason: String },
    #[error("complex is not minimal: differential entry outside the maximal ideal in degree {0}")]
    NotMinimalComplex(usize),
    #[error("quotient is not a complete intersection quotient: {0}")]
    NotCompleteIntersectionQuotient(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("[{section}]: {source}")]
    InSection { section: String, source: Box<Error> },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            NonFiniteCongruenceModule
            | NotRegularPoint
            | ZeroDepth
            | NotSupported
            | NotMinimalGenerators(_)
            | NotArtinian
            | SymbolicSquareViolation
            | ChainLengthMismatch { .. }
            | UnsolvableHomotopy { .. }
            | NotMinimalComplex(_)
            | NotCompleteIntersectionQuotient(_)
            | NotCertifiablyFinite(_)
            | DegreeCapExceeded(_) => ErrorClass::Hypotheses,
            InternalInconsistency(_) => ErrorClass::Internal,
            InSection { source, .. } => source.class(),
            _ => ErrorClass::Input,
        }
    }

    pub fn in_section(self, section: &str) -> Self {
        Error::InSection { section: section.into(), source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
