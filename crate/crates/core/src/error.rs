use std::fmt;

use thiserror::Error;

/// A document error with a 1-based position in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.reason)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a game needs at least two players, got {0}")]
    TooFewPlayers(usize),
    #[error("duplicate player name {0:?}")]
    DuplicatePlayer(String),
    #[error("player {player:?} has no strategies")]
    EmptyStrategySet { player: String },
    #[error("player {player:?} declares strategy {name:?} twice")]
    DuplicateStrategy { player: String, name: String },
    #[error("expected {expected} strategy lists, got {actual}")]
    StrategyListCount { expected: usize, actual: usize },
    #[error("expected {expected} payoff rows, got {actual}")]
    PayoffRowCount { expected: usize, actual: usize },
    #[error("payoff row for player {player:?} has {actual} entries, expected {expected}")]
    PayoffLength {
        player: String,
        expected: usize,
        actual: usize,
    },
    #[error("player index {index} out of range for {players} players")]
    PlayerIndex { index: usize, players: usize },
    #[error("strategy index {index} out of range for player {player} ({count} strategies)")]
    StrategyIndex {
        player: usize,
        index: usize,
        count: usize,
    },
    #[error("profile has {actual} components, expected {expected}")]
    ProfileLength { expected: usize, actual: usize },
    #[error("invalid distribution for player {player}: {reason}")]
    InvalidDistribution { player: usize, reason: String },
    #[error("a strategy cannot be compared with itself")]
    SameStrategy,
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("bijections do not share the middle game")]
    GameMismatch,
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },
    #[error("malformed rational literal {0:?}")]
    InvalidRational(String),
    #[error("search limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("construction needs {expected} values, got {actual}")]
    ValueCount { expected: usize, actual: usize },
    #[error("{0}")]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
