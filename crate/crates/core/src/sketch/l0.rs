//! l0-sampling over a dynamically updated integer vector.
//!
//! Each sampler keeps independent copies. A copy assigns every index a geometric
//! level through a pairwise-independent hash (`Pr[level >= j] = 2^-j`) and keeps a
//! one-sparse recovery structure per level. A level whose surviving vector has a
//! single nonzero entry decodes it exactly; the polynomial fingerprint rejects
//! levels that only look one-sparse.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::hash::{add_mod, mul_mod, pow_mod, PairwiseHash, MERSENNE_61};
use super::SupportSampler;
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L0Sample {
    Index(u64),
    Fail,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recovery {
    Zero,
    One { index: u64, value: i64 },
    NotOneSparse,
}

/// Sum, index-weighted sum and fingerprint `sum f_i r^i mod p` of a vector.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OneSparseRecovery {
    w: i64,
    s: i128,
    z: u64,
}

#[inline]
fn signed_mod(x: i64) -> u64 {
    let r = x.unsigned_abs() % MERSENNE_61;
    if x < 0 && r != 0 {
        MERSENNE_61 - r
    } else {
        r
    }
}

impl OneSparseRecovery {
    /// `r_pow` must be `r^index mod p` for the fingerprint base `r`.
    #[inline]
    pub fn update(&mut self, index: u64, delta: i64, r_pow: u64) {
        self.w += delta;
        self.s += delta as i128 * index as i128;
        self.z = add_mod(self.z, mul_mod(signed_mod(delta), r_pow));
    }

    pub fn is_zero(&self) -> bool {
        self.w == 0 && self.s == 0 && self.z == 0
    }

    pub fn recover(&self, domain: u64, r: u64) -> Recovery {
        if self.is_zero() {
            return Recovery::Zero;
        }
        if self.w == 0 || self.s % self.w as i128 != 0 {
            return Recovery::NotOneSparse;
        }
        let index = self.s / self.w as i128;
        if index < 0 || index >= domain as i128 {
            return Recovery::NotOneSparse;
        }
        let index = index as u64;
        if mul_mod(signed_mod(self.w), pow_mod(r, index)) != self.z {
            return Recovery::NotOneSparse;
        }
        Recovery::One { index, value: self.w }
    }
}

#[derive(Debug, Clone)]
struct LevelStack {
    level_hash: PairwiseHash,
    levels: Vec<OneSparseRecovery>,
}

#[derive(Debug, Clone)]
pub struct L0Sampler {
    domain: u64,
    r: u64,
    copies: Vec<LevelStack>,
}

/// `ceil(log2(domain)) + 1` subsampling levels.
pub fn level_count(domain: u64) -> usize {
    (64 - domain.saturating_sub(1).leading_zeros()) as usize + 1
}

/// Independent copies needed to push the failure probability below `fail_prob`;
/// a single copy fails with probability below 1/2.
pub fn copies_for(fail_prob: f64) -> usize {
    if fail_prob >= 0.5 {
        1
    } else {
        ((1.0 / fail_prob).log2().ceil() as usize).max(1)
    }
}

impl L0Sampler {
    /// Sampler over indices `[0, domain)` failing with probability at most `fail_prob`.
    pub fn new(domain: u64, fail_prob: f64, seed: u64) -> Self {
        Self::with_copies(domain, copies_for(fail_prob), seed)
    }

    pub fn with_copies(domain: u64, copies: usize, seed: u64) -> Self {
        assert!(domain >= 1 && copies >= 1);
        let mut rng: ChaCha8Rng = rng_from_seed(seed);
        let levels = level_count(domain);
        let r = rng.gen_range(2..MERSENNE_61);
        let copies = (0..copies)
            .map(|_| LevelStack {
                level_hash: PairwiseHash::random(&mut rng),
                levels: vec![OneSparseRecovery::default(); levels],
            })
            .collect();
        L0Sampler { domain, r, copies }
    }

    pub fn domain(&self) -> u64 {
        self.domain
    }

    pub fn copies(&self) -> usize {
        self.copies.len()
    }

    pub fn levels(&self) -> usize {
        self.copies[0].levels.len()
    }

    pub fn update(&mut self, index: u64, delta: i64) {
        debug_assert!(index < self.domain);
        if delta == 0 {
            return;
        }
        let r_pow = pow_mod(self.r, index);
        for copy in &mut self.copies {
            let top = copy.levels.len() - 1;
            let h = copy.level_hash.eval(index);
            let level = if h == 0 {
                top
            } else {
                (h.trailing_zeros() as usize).min(top)
            };
            for rec in &mut copy.levels[..=level] {
                rec.update(index, delta, r_pow);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.copies
            .iter()
            .all(|c| c.levels.iter().all(OneSparseRecovery::is_zero))
    }

    pub fn sample(&self) -> L0Sample {
        if self.is_zero() {
            return L0Sample::Empty;
        }
        for copy in &self.copies {
            for rec in &copy.levels {
                if let Recovery::One { index, .. } = rec.recover(self.domain, self.r) {
                    return L0Sample::Index(index);
                }
            }
        }
        L0Sample::Fail
    }

    pub fn words(&self) -> usize {
        self.copies.len() * (3 * self.levels() + 2) + 2
    }
}

impl SupportSampler for L0Sampler {
    fn update(&mut self, index: u64, delta: i64) {
        L0Sampler::update(self, index, delta)
    }

    fn sample(&mut self) -> L0Sample {
        L0Sampler::sample(self)
    }

    fn words(&self) -> usize {
        L0Sampler::words(self)
    }
}

/// Keeps the true support and samples it uniformly; a test double for [`L0Sampler`].
#[derive(Debug, Clone)]
pub struct ExactL0 {
    support: BTreeMap<u64, i64>,
    rng: ChaCha8Rng,
}

impl ExactL0 {
    pub fn new(seed: u64) -> Self {
        ExactL0 {
            support: BTreeMap::new(),
            rng: rng_from_seed(seed),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.support.keys().copied()
    }
}

impl SupportSampler for ExactL0 {
    fn update(&mut self, index: u64, delta: i64) {
        let c = self.support.entry(index).or_insert(0);
        *c += delta;
        if *c == 0 {
            self.support.remove(&index);
        }
    }

    fn sample(&mut self) -> L0Sample {
        if self.support.is_empty() {
            return L0Sample::Empty;
        }
        let k = self.rng.gen_range(0..self.support.len());
        L0Sample::Index(*self.support.keys().nth(k).unwrap())
    }

    fn words(&self) -> usize {
        2 * self.support.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn level_counts() {
        assert_eq!(level_count(1), 1);
        assert_eq!(level_count(2), 2);
        assert_eq!(level_count(1000), 11);
        assert_eq!(level_count(1024), 11);
        assert_eq!(copies_for(0.01), 7);
        assert_eq!(copies_for(0.9), 1);
    }

    #[test]
    fn one_sparse_decodes_and_rejects() {
        let r = 123_456_789;
        let mut rec = OneSparseRecovery::default();
        assert_eq!(rec.recover(100, r), Recovery::Zero);
        rec.update(42, 3, pow_mod(r, 42));
        assert_eq!(rec.recover(100, r), Recovery::One { index: 42, value: 3 });
        // {10: 1, 30: 1} has s / w = 20, which the fingerprint must reject.
        let mut two = OneSparseRecovery::default();
        two.update(10, 1, pow_mod(r, 10));
        two.update(30, 1, pow_mod(r, 30));
        assert_eq!(two.recover(100, r), Recovery::NotOneSparse);
    }

    #[test]
    fn insert_delete_is_fresh() {
        let mut s = L0Sampler::new(1000, 0.01, 9);
        s.update(5, 1);
        s.update(5, -1);
        assert!(s.is_zero());
        assert_eq!(s.sample(), L0Sample::Empty);
    }

    #[test]
    fn singleton_support() {
        for seed in 0..200 {
            let mut s = L0Sampler::new(1000, 0.01, seed);
            s.update(5, 1);
            assert_eq!(s.sample(), L0Sample::Index(5));
        }
        assert_eq!(L0Sampler::new(10, 0.1, 0).sample(), L0Sample::Empty);
    }

    #[test]
    fn dynamic_support_samples_are_members() {
        let mut rng = rng_from_seed(77);
        for seed in 0..300 {
            let mut s = L0Sampler::new(5000, 0.05, seed);
            let mut exact = ExactL0::new(seed);
            let mut live: Vec<u64> = Vec::new();
            for _ in 0..200 {
                if !live.is_empty() && rng.gen_bool(0.4) {
                    let i = live.swap_remove(rng.gen_range(0..live.len()));
                    s.update(i, -1);
                    exact.update(i, -1);
                } else {
                    let i = rng.gen_range(0..5000);
                    if !live.contains(&i) {
                        live.push(i);
                        s.update(i, 1);
                        exact.update(i, 1);
                    }
                }
            }
            let support: HashSet<u64> = exact.support().collect();
            assert_eq!(support, live.iter().copied().collect());
            match s.sample() {
                L0Sample::Index(i) => assert!(support.contains(&i)),
                L0Sample::Fail => {}
                L0Sample::Empty => assert!(support.is_empty()),
            }
        }
    }

    #[test]
    fn exact_double_samples_uniformly_and_reports_empty() {
        let mut e = ExactL0::new(1);
        assert_eq!(SupportSampler::sample(&mut e), L0Sample::Empty);
        for i in [3u64, 8, 11] {
            e.update(i, 1);
        }
        e.update(8, -1);
        let mut seen = HashSet::new();
        for _ in 0..100 {
            if let L0Sample::Index(i) = SupportSampler::sample(&mut e) {
                seen.insert(i);
            }
        }
        assert_eq!(seen, HashSet::from([3, 11]));
    }
}
