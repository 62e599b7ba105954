use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("unsupported extension degree {0}")]
    BadExtensionDegree(u32),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("undeclared variable `{name}` at position {pos}")]
    UndeclaredVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },

    #[error("no substitution image for variable index {0}")]
    MissingImage(usize),
    #[error("point has {got} coordinates but the algebra has {expected} variables")]
    PointDimension { expected: usize, got: usize },
    #[error("characteristic mismatch: polynomial over F_{poly}, point over F_{point}")]
    CharMismatch { poly: u64, point: u64 },
    #[error("field mismatch between operands (F_{0} vs F_{1})")]
    FieldMismatch(u64, u64),

    #[error("group closure exceeds the cap of {0} elements")]
    ClosureCap(usize),
    #[error("generator is not a bijection")]
    NotABijection,
    #[error("multiplication table is not a group law: {0}")]
    NotAGroup(String),
    #[error("subgroup is not closed: element {0} missing")]
    SubgroupNotClosed(usize),
    #[error("element {0} is not a coset representative")]
    NotARepresentative(usize),
    #[error("no Sylow {p}-subgroup found by greedy closure")]
    SylowSearchFailed { p: u64 },

    #[error("action law violated at (g={g}, h={h}, var={var})")]
    ActionLaw { g: usize, h: usize, var: usize },
    #[error("identity element does not act as identity on variable {0}")]
    IdentityAction(usize),
    #[error("expected {expected} image polynomials per generator, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("expected one image list per group generator ({expected}), got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("polynomial mentions variable index {0}, outside this algebra")]
    VariableRange(usize),
    #[error("dehomogenization needs a nonzero invariant of degree one")]
    BadDehomogenizer,
    #[error("operation requires a graded action")]
    NotGraded,
    #[error("action does not preserve the degree filtration (an image has degree > 1)")]
    FiltrationIncreasing,
    #[error("groups of the two actions differ")]
    GroupMismatch,
    #[error("morphism source/target field or group mismatch")]
    MorphismMismatch,
    #[error("morphism is not equivariant")]
    NotEquivariant,

    #[error("polynomial is not invariant under {0}")]
    NotInvariant(usize),
    #[error("degree cap {cap} is below the target degree {target}")]
    CapTooSmall { cap: u32, target: u32 },

    #[error("matrix dimension mismatch: {0}")]
    MatrixShape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("module law violated at pair (g={g}, h={h})")]
    ModuleLaw { g: usize, h: usize },
    #[error("enumeration cap exceeded: {0} vectors/points")]
    EnumerationCap(u64),
    #[error("supplied module is not simple")]
    NotSimple,

    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
