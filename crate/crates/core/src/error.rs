use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex `{0}` has no outgoing edge")]
    SinkVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown player {0}")]
    UnknownPlayer(usize),
    #[error("vertex `{0}` is declared more than once")]
    DuplicateOwner(String),
    #[error("arena has no players")]
    NoPlayers,
    #[error("arena has no initial vertex")]
    MissingInitial,
    #[error("more than one initial vertex (`{0}` and `{1}`)")]
    MultipleInitial(String, String),
    #[error("invalid identifier `{0}`")]
    InvalidName(String),

    #[error("formula syntax error at column {col}: {message}")]
    FormulaSyntax { col: usize, message: String },

    #[error("`{to}` is not a successor of `{from}`")]
    NotASuccessor { from: String, to: String },
    #[error("no choice given for vertex `{0}`")]
    MissingChoice(String),
    #[error("profile does not match the arena")]
    ProfileShape,
    #[error("strategy belongs to player {found}, expected player {expected}")]
    PlayerMismatch { expected: usize, found: usize },
    #[error("enumeration of {count} exceeds the cap of {cap}")]
    CountOverflow { count: String, cap: u64 },

    #[error("relation for player {0} is not an equivalence relation")]
    NotAnEquivalence(usize),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("world `{0}` is declared more than once")]
    DuplicateWorld(String),
    #[error("player {player} plays different strategies in indistinguishable worlds `{first}` and `{second}`")]
    InconsistentAssignment {
        player: usize,
        first: String,
        second: String,
    },
    #[error("event refers to a world outside the frame")]
    EventOutOfFrame,
    #[error("empty profile set")]
    EmptySet,
    #[error("world bound must be at least 1")]
    InvalidBound,

    #[error("quantifier prefix does not have the expected shape: {0}")]
    PrefixShapeMismatch(String),
    #[error("formula has {0} variables, the evaluator supports at most {1}")]
    TooManyVariables(usize, usize),
    #[error("variable `{0}` is not bound by the quantifier prefix")]
    UnboundVariable(String),
    #[error("variable `{0}` is bound more than once")]
    DuplicateVariable(String),
    #[error("formula has no variables")]
    NoVariables,
}
