//! Approximation algorithms for covering a line barrier with mobile sensors
//! while minimizing the largest relocation distance.

pub mod dmmsm;
pub mod error;
pub mod factor2;
pub mod greedy;
pub mod lp_round;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod par;
pub mod search;
pub mod tolerance;

pub use error::{Error, Result};
pub use model::{DecisionOutcome, Instance, Sensor, Solution};
