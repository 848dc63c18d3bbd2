use std::collections::HashMap;

use rand::Rng;

use super::hash::{HashFamily, PairwiseHash, MERSENNE_61};
use super::FrequencySketch;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"SCCM";
const VERSION: u16 = 1;

/// CountMin sketch with signed counters.
///
/// `depth` rows of `width` counters. Updates are linear, so any two update
/// sequences with the same net effect leave identical tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMin {
    hashes: HashFamily,
    table: Vec<i64>,
}

impl CountMin {
    pub fn new<R: Rng + ?Sized>(depth: usize, width: usize, rng: &mut R) -> Self {
        Self::with_hashes(HashFamily::new(depth, width, rng))
    }

    pub fn with_hashes(hashes: HashFamily) -> Self {
        let table = vec![0; hashes.depth() * hashes.width()];
        CountMin { hashes, table }
    }

    /// Standard sizing: width `ceil(e / eps)`, depth `ceil(ln(1 / delta))`.
    pub fn with_error<R: Rng + ?Sized>(eps: f64, delta: f64, rng: &mut R) -> Result<Self> {
        if !(eps > 0.0 && delta > 0.0 && delta < 1.0) {
            return Err(Error::Domain(format!(
                "CountMin needs eps > 0 and delta in (0, 1), got {eps}, {delta}"
            )));
        }
        let width = (std::f64::consts::E / eps).ceil() as usize;
        let depth = ((1.0 / delta).ln().ceil() as usize).max(1);
        Ok(Self::new(depth, width, rng))
    }

    pub fn depth(&self) -> usize {
        self.hashes.depth()
    }

    pub fn width(&self) -> usize {
        self.hashes.width()
    }

    pub fn hashes(&self) -> &HashFamily {
        &self.hashes
    }

    pub fn table(&self) -> &[i64] {
        &self.table
    }

    pub fn row(&self, row: usize) -> &[i64] {
        let w = self.width();
        &self.table[row * w..(row + 1) * w]
    }

    pub fn update(&mut self, key: u64, delta: i64) {
        let w = self.width();
        for row in 0..self.depth() {
            let slot = &mut self.table[row * w + self.hashes.hash(row, key)];
            *slot = slot.checked_add(delta).expect("CountMin counter overflow");
        }
    }

    /// Row minimum; never below the true count when all net frequencies are nonnegative.
    pub fn query(&self, key: u64) -> i64 {
        let w = self.width();
        (0..self.depth())
            .map(|row| self.table[row * w + self.hashes.hash(row, key)])
            .min()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&c| c == 0)
    }

    /// Entry-wise sum of two sketches built with the same hash seeds.
    pub fn merge(&self, other: &CountMin) -> Result<CountMin> {
        if self.hashes != other.hashes {
            return Err(Error::Domain(
                "cannot merge CountMin sketches with different hashes".into(),
            ));
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| a.checked_add(*b).expect("CountMin counter overflow"))
            .collect();
        Ok(CountMin {
            hashes: self.hashes.clone(),
            table,
        })
    }

    /// Versioned little-endian layout: magic, version, depth, width, prime,
    /// per-row `(a, b)` seeds, then the counters row-major.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(30 + 16 * self.depth() + 8 * self.table.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.depth() as u32).to_le_bytes());
        out.extend_from_slice(&(self.width() as u32).to_le_bytes());
        out.extend_from_slice(&MERSENNE_61.to_le_bytes());
        for h in self.hashes.seeds() {
            out.extend_from_slice(&h.a.to_le_bytes());
            out.extend_from_slice(&h.b.to_le_bytes());
        }
        for c in &self.table {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = bytes;
        let mut take = |k: usize| -> Result<&[u8]> {
            if cur.len() < k {
                return Err(Error::Format("truncated CountMin buffer".into()));
            }
            let (head, tail) = cur.split_at(k);
            cur = tail;
            Ok(head)
        };
        if take(4)? != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u16::from_le_bytes(take(2)?.try_into().unwrap());
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let depth = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
        let width = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
        let prime = u64::from_le_bytes(take(8)?.try_into().unwrap());
        if prime != MERSENNE_61 || depth == 0 || width == 0 {
            return Err(Error::Format("bad sketch dimensions or modulus".into()));
        }
        let mut rows = Vec::with_capacity(depth);
        for _ in 0..depth {
            let a = u64::from_le_bytes(take(8)?.try_into().unwrap());
            let b = u64::from_le_bytes(take(8)?.try_into().unwrap());
            rows.push(PairwiseHash { a, b });
        }
        let mut table = Vec::with_capacity(depth * width);
        for _ in 0..depth * width {
            table.push(i64::from_le_bytes(take(8)?.try_into().unwrap()));
        }
        if !cur.is_empty() {
            return Err(Error::Format("trailing bytes after counters".into()));
        }
        Ok(CountMin {
            hashes: HashFamily::from_seeds(width, rows),
            table,
        })
    }
}

impl FrequencySketch for CountMin {
    fn update(&mut self, key: u64, delta: i64) {
        CountMin::update(self, key, delta)
    }

    fn query(&self, key: u64) -> i64 {
        CountMin::query(self, key)
    }

    fn words(&self) -> usize {
        self.table.len() + 2 * self.depth()
    }
}

/// Exact frequency map with the sketch interface; a test double for CountMin.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactFrequencies {
    counts: HashMap<u64, i64>,
}

impl ExactFrequencies {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }
}

impl FrequencySketch for ExactFrequencies {
    fn update(&mut self, key: u64, delta: i64) {
        let c = self.counts.entry(key).or_insert(0);
        *c += delta;
        if *c == 0 {
            self.counts.remove(&key);
        }
    }

    fn query(&self, key: u64) -> i64 {
        self.counts.get(&key).copied().unwrap_or(0)
    }

    fn words(&self) -> usize {
        2 * self.counts.len()
    }
}
