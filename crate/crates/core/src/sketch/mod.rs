//! Streaming sketch primitives.

mod count_min;
pub mod hash;
mod l0;
mod reservoir;

pub use count_min::{CountMin, ExactFrequencies};
pub use hash::{HashFamily, PairwiseHash};
pub use l0::{copies_for, level_count, ExactL0, L0Sample, L0Sampler, OneSparseRecovery, Recovery};
pub use reservoir::Reservoir;

/// Linear point-query sketch over `u64` keys.
pub trait FrequencySketch {
    fn update(&mut self, key: u64, delta: i64);
    fn query(&self, key: u64) -> i64;
    /// Machine words of state.
    fn words(&self) -> usize;
}

/// Linear sketch that draws a member of the support of a dynamic vector.
pub trait SupportSampler {
    fn update(&mut self, index: u64, delta: i64);
    fn sample(&mut self) -> L0Sample;
    fn words(&self) -> usize;
}
