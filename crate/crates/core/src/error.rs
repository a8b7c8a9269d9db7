use alloc::string::String;
use core::fmt;

/// Which side of a sandwich matrix failed the regularity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixLine {
    Row(usize),
    Column(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `(a·b)·c != a·(b·c)`.
    NonAssociative(usize, usize, usize),
    OutOfRange { row: usize, col: usize, value: usize },
    NotSquare { rows: usize, row: usize, len: usize },
    EmptyTable,
    BadLabels { expected: usize, found: usize },
    NotAZero(usize),
    NotIdempotent(usize),
    /// Element without an inverse.
    NotRegular(usize),
    NotInverse,
    NotLocallyInverse,
    NotAGroup,
    /// Two equivalent characterisations of a property gave different answers.
    InternalDisagreement(&'static str),
    SizeGuard { bound: usize, actual: usize },
    NotInHomSet { e: usize, u: usize, f: usize },
    NoFactorisation(usize),
    NotEpimorphism(usize),
    DomainMismatch { expected: usize, found: usize },
    /// Two distinct epimorphic components led to different cone products.
    AmbiguousProduct(usize, usize),
    EtaNotWellDefined { object: usize },
    NoTranspose { morphism: usize },
    MultipleTransposes { morphism: usize },
    NotClosed(usize, usize),
    IrregularMatrix(MatrixLine),
    InvalidCategory(String),
    AxiomViolation(String),
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonAssociative(a, b, c) => {
                write!(f, "table is not associative at ({a}, {b}, {c})")
            }
            Error::OutOfRange { row, col, value } => {
                write!(f, "entry {value} at ({row}, {col}) is out of range")
            }
            Error::NotSquare { rows, row, len } => {
                write!(f, "row {row} has {len} entries, expected {rows}")
            }
            Error::EmptyTable => f.write_str("empty multiplication table"),
            Error::BadLabels { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
            Error::NotAZero(k) => write!(f, "element {k} is not a two-sided zero"),
            Error::NotIdempotent(e) => write!(f, "element {e} is not idempotent"),
            Error::NotRegular(a) => write!(f, "semigroup is not regular: {a} has no inverse"),
            Error::NotInverse => f.write_str("semigroup is not inverse"),
            Error::NotLocallyInverse => f.write_str("semigroup is not locally inverse"),
            Error::NotAGroup => f.write_str("table is not a group"),
            Error::InternalDisagreement(what) => {
                write!(f, "equivalent conditions disagree for {what}")
            }
            Error::SizeGuard { bound, actual } => {
                write!(f, "search space {actual} exceeds configured bound {bound}")
            }
            Error::NotInHomSet { e, u, f: g } => {
                write!(f, "{u} is not in {e}S{g}")
            }
            Error::NoFactorisation(m) => write!(f, "morphism {m} has no normal factorisation"),
            Error::NotEpimorphism(m) => write!(f, "morphism {m} is not an epimorphism"),
            Error::DomainMismatch { expected, found } => {
                write!(f, "expected domain {expected}, found {found}")
            }
            Error::AmbiguousProduct(a, b) => {
                write!(f, "cone product {a}·{b} depends on the chosen factorisation")
            }
            Error::EtaNotWellDefined { object } => {
                write!(f, "representing map is not injective at object {object}")
            }
            Error::NoTranspose { morphism } => write!(f, "morphism {morphism} has no transpose"),
            Error::MultipleTransposes { morphism } => {
                write!(f, "morphism {morphism} has more than one transpose")
            }
            Error::NotClosed(a, b) => write!(f, "product of {a} and {b} leaves the set"),
            Error::IrregularMatrix(MatrixLine::Row(r)) => {
                write!(f, "sandwich matrix row {r} is entirely zero")
            }
            Error::IrregularMatrix(MatrixLine::Column(c)) => {
                write!(f, "sandwich matrix column {c} is entirely zero")
            }
            Error::InvalidCategory(msg) => write!(f, "invalid category: {msg}"),
            Error::AxiomViolation(msg) => write!(f, "axiom violated: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
