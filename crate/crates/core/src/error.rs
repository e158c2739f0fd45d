use thiserror::Error;

/// Errors raised by dataset parsing and by the analysis operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: duplicate menu {menu}")]
    DuplicateMenu { line: usize, menu: String },

    #[error("line {line}: chosen set {chosen} is not a subset of menu {menu}")]
    ChoiceNotSubset {
        line: usize,
        menu: String,
        chosen: String,
    },

    #[error("line {line}: empty choice for menu {menu}")]
    EmptyChoice { line: usize, menu: String },

    #[error("missing menu {menu} (add a `partial` header to allow unobserved menus)")]
    MissingMenu { menu: String },

    #[error("{count} alternatives exceed the supported maximum of {max}")]
    TooManyAlternatives { count: usize, max: usize },

    #[error("invalid alternative label {0:?}")]
    InvalidLabel(String),

    #[error("operation requires a total dataset, but the dataset is partial")]
    PartialDataset,

    #[error("relation is cyclic: {}", format_cycle(.cycle))]
    CyclicRelation { cycle: Vec<String> },

    #[error("utility must be strictly positive (alternative {alternative})")]
    NonPositiveUtility { alternative: String },

    #[error("utility is not aligned with the relation on {} pair(s)", .pairs.len())]
    Misaligned { pairs: Vec<(String, String)> },

    #[error("system has {count} variables, above the elimination limit of {limit}")]
    VariableLimit { count: usize, limit: usize },

    #[error("representation does not cover menu {menu}")]
    CoverageGap { menu: String },

    #[error("representation does not reproduce the dataset")]
    UnverifiedRepresentation,

    #[error("consideration set for menu {menu} is empty")]
    EmptyConsideration { menu: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency violation: {0}")]
    Inconsistent(String),

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),

    #[error("full enumeration is not available for n = {0}")]
    EnumerationTooLarge(usize),

    #[error("malformed json: {0}")]
    Json(String),
}

fn format_cycle(cycle: &[String]) -> String {
    cycle.join(" -> ")
}

pub type Result<T> = std::result::Result<T, Error>;
