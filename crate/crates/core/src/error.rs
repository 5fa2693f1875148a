use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("generator {index} is outside rank {rank}")]
    IndexOutOfRank { index: u32, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("braid generator s{index} needs at least {} strands, braid has {strands}", index + 1)]
    StrandsOutOfRange { index: u32, strands: usize },
    #[error("closure has {components} components")]
    NotAKnot { components: usize },
    #[error("conjugator core is {core:?}, expected x1")]
    CoreMismatch { core: String },
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("word length {length} exceeds the limit {limit}")]
    WordTooLong { length: usize, limit: usize },
    #[error("first homology is not infinite cyclic: {0}")]
    NotInfiniteCyclic(String),
    #[error("presentation is not knot-like: {0}")]
    NotKnotLike(String),
    #[error("presentation has no peripheral pair")]
    MissingPeripheral,
    #[error("winding number {strands} is too small, need at least 2")]
    WindingTooSmall { strands: usize },
    #[error("depth {depth} exceeds the {patterns} patterns supplied")]
    DepthExceedsPatterns { depth: usize, patterns: usize },
    #[error("stage index {index} out of range for {stages} stages")]
    StageOutOfRange { index: usize, stages: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("winding entry {value} at {location} is smaller than 2")]
    EntryTooSmall { location: String, value: u64 },
    #[error("winding entry {value} exceeds the factorization bound {bound}")]
    EntryTooLarge { value: u64, bound: u64 },
    #[error("winding sequence has an empty period")]
    EmptyPeriod,
}
