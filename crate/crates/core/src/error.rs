use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("instance has no sensors")]
    EmptyInstance,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid segment set: {0}")]
    InvalidSegments(String),

    #[error("{what} = {value} is not an integer at scale {scale}")]
    NonIntegral {
        what: &'static str,
        value: f64,
        scale: f64,
    },

    #[error("instance has {n} sensors, limit for this routine is {max}")]
    TooLarge { n: usize, max: usize },

    #[error("fractional cover has objective {objective}, expected full barrier {barrier}")]
    NotFullCover { objective: f64, barrier: f64 },

    #[error("sensor {sensor} received a block of length {length}, capacity is {capacity}")]
    BlockTooLong {
        sensor: usize,
        length: f64,
        capacity: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
