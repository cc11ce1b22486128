pub mod cluster;
pub mod estimate;
pub mod evaluate;
pub mod simulate;

/// How a command finished when it did not fail outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Complete,
    /// Some records, methods or tables were skipped with a warning.
    Partial,
}

impl Outcome {
    pub fn from_skips(skipped: usize) -> Self {
        if skipped == 0 {
            Outcome::Complete
        } else {
            Outcome::Partial
        }
    }
}
