use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code (see [`Error::code`]),
/// which the command-line front end emits in its structured error output.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(u32, u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {vertex} out of range for a patch with {count} vertices")]
    VertexOutOfRange { vertex: u32, count: usize },
    #[error("origin {origin} out of range for a patch with {count} vertices")]
    OriginOutOfRange { origin: u32, count: usize },
    #[error("edge ({0}, {1}) joins two vertices of the same colour")]
    ImproperColouring(u32, u32),
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("boundary depth jumps by more than one across edge ({0}, {1})")]
    InconsistentDepth(u32, u32),
    #[error("edge id {0} does not exist")]
    EdgeOutOfRange(usize),

    #[error("invalid face size {0}: must be at least 3 or infinite")]
    InvalidFaceSize(u32),
    #[error("cannot parse type vector {0:?}")]
    TypeVectorSyntax(String),
    #[error("type vector {0} is not one of the five Euclidean cubic lattices")]
    UnsupportedTypeVector(String),
    #[error("radius must be at least 1")]
    InvalidRadius,

    #[error("gadget ports must be three distinct vertices")]
    PortsNotDistinct,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("complete gadget needs N >= 3, got {0}")]
    NTooSmall(usize),
    #[error("two-terminal graphs need distinct terminals")]
    IdenticalTerminals,
    #[error("invalid gadget: {0}")]
    InvalidGadget(String),

    #[error("target {0} is not positive")]
    NonPositiveTarget(f64),
    #[error("no bracket: polynomial stays below {target} up to x = {reached}")]
    NoBracket { target: f64, reached: f64 },
    #[error("solver could not reach tolerance {tol} (residual {residual})")]
    ToleranceUnreachable { tol: f64, residual: f64 },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("requested length {requested} exceeds the boundary-safe horizon {horizon}")]
    BoundaryUnsafe { requested: usize, horizon: usize },
    #[error("no start edges given")]
    EmptyStartEdges,

    #[error("interior vertex {vertex} has degree {degree}, expected 3")]
    NonCubicInterior { vertex: u32, degree: usize },
    #[error("interior {colour} vertex {vertex} has degree {degree}, expected 3")]
    NonCubicClass {
        vertex: u32,
        degree: usize,
        colour: &'static str,
    },
    #[error("patch carries no proper 2-colouring")]
    NotBipartite,

    #[error("empty composition chain")]
    EmptyChain,
    #[error("g(1) = {0} < 1, so g has no fixed point in (0, 1]")]
    NoFixedPointInUnitInterval(f64),
    #[error("series needs counts through n >= {needed}, has {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("series convention is {got}, expected {expected}")]
    WrongConvention { got: String, expected: &'static str },
    #[error("mu must exceed 1, got {0}")]
    MuOutOfRange(f64),
    #[error("starting point {0} outside (0, 1)")]
    StartOutOfRange(f64),

    #[error("cannot evaluate expression: {0}")]
    Expression(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable identifier for structured error reporting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::SelfLoop(_) => "SelfLoop",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::OriginOutOfRange { .. } => "OriginOutOfRange",
            Error::ImproperColouring(..) => "ImproperColouring",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InconsistentDepth(..) => "InconsistentDepth",
            Error::EdgeOutOfRange(_) => "EdgeOutOfRange",
            Error::InvalidFaceSize(_) => "InvalidFaceSize",
            Error::TypeVectorSyntax(_) => "TypeVectorSyntax",
            Error::UnsupportedTypeVector(_) => "UnsupportedTypeVector",
            Error::InvalidRadius => "InvalidRadius",
            Error::PortsNotDistinct => "PortsNotDistinct",
            Error::Disconnected => "Disconnected",
            Error::NTooSmall(_) => "NTooSmall",
            Error::IdenticalTerminals => "IdenticalTerminals",
            Error::InvalidGadget(_) => "InvalidGadget",
            Error::NonPositiveTarget(_) => "NonPositiveTarget",
            Error::NoBracket { .. } => "NoBracket",
            Error::ToleranceUnreachable { .. } => "ToleranceUnreachable",
            Error::InvalidPolynomial(_) => "InvalidPolynomial",
            Error::BoundaryUnsafe { .. } => "BoundaryUnsafe",
            Error::EmptyStartEdges => "EmptyStartEdges",
            Error::NonCubicInterior { .. } => "NonCubicInterior",
            Error::NonCubicClass { .. } => "NonCubicClass",
            Error::NotBipartite => "NotBipartite",
            Error::EmptyChain => "EmptyChain",
            Error::NoFixedPointInUnitInterval(_) => "NoFixedPointInUnitInterval",
            Error::SeriesTooShort { .. } => "SeriesTooShort",
            Error::WrongConvention { .. } => "WrongConvention",
            Error::MuOutOfRange(_) => "MuOutOfRange",
            Error::StartOutOfRange(_) => "StartOutOfRange",
            Error::Expression(_) => "Expression",
            Error::Json(_) => "Json",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
