use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Unit,
    Commutativity,
    Associativity,
    Leibniz,
    DSquared,
}

impl std::fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AxiomKind::Unit => "unit",
            AxiomKind::Commutativity => "commutativity",
            AxiomKind::Associativity => "associativity",
            AxiomKind::Leibniz => "leibniz",
            AxiomKind::DSquared => "d_squared",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error)]
pub enum DgaError {
    #[error("axiom violation ({kind}) at {witness}")]
    AxiomViolation { kind: AxiomKind, witness: String },
    #[error("degree cap exceeded: degree {needed} requested, algebra stored up to {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("weights metadata missing")]
    MissingWeights,
    #[error("element is not a cocycle: {0}")]
    NotCocycle(String),
    #[error("generator {0} has even degree; extension generators must be odd")]
    EvenGeneratorDegree(String),
    #[error("transgression classes differ in cohomology: {0}")]
    ClassesDiffer(String),
    #[error("no primitive available: {0}")]
    NoPrimitive(String),
    #[error("differential is not zero; operation requires d = 0")]
    NotZeroDifferential,
    #[error("sequence element of odd degree: {0}")]
    OddDegreeElement(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("connection is not flat")]
    NotFlat,
    #[error("product is not exact: {0}")]
    ProductNotExact(String),
    #[error("algebra is not a Poincare duality algebra: {0}")]
    NotPd(String),
    #[error("basis split invalid: {0}")]
    BasisSplitInvalid(String),
    #[error("depth guard exceeded: {0}")]
    DepthGuardExceeded(String),
    #[error("relations cannot be made homogeneous: {0}")]
    InhomogeneousRelations(String),
    #[error("flat connection lies in neither stratum: {0}")]
    StratumViolation(String),
    #[error("unknown catalog key {0:?}")]
    UnknownCatalogKey(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, DgaError>;
