use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slot of state `{state}` references undefined state `{name}`")]
    UnknownState { state: String, name: String },

    #[error("bad permutation: {0}")]
    BadPerm(String),

    #[error("state `{0}` defined twice")]
    DuplicateState(String),

    #[error("state `{state}` has {got} slots, alphabet has {expected} letters")]
    SlotCount {
        state: String,
        got: usize,
        expected: usize,
    },

    #[error("group defines no states")]
    EmptyGroup,

    #[error("alphabet size must be positive")]
    EmptyAlphabet,

    #[error("elements belong to different groups")]
    MixedGroups,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("bad vertex `{0}`")]
    BadVertex(String),

    #[error("section root permutation fixes letter {m}; commutator construction inapplicable")]
    PermFixesM { m: usize },

    #[error("element does not fix the first level")]
    NotLevelFixing,

    #[error("element `{word}` does not fix vertex `{vertex}`")]
    NotFixing { word: String, vertex: String },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("enumeration exceeded the cap of {cap} elements")]
    BoundExceeded { cap: usize },

    #[error("generating set is empty")]
    EmptyGenSet,
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
