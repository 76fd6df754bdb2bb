//! Chunk-frequency histogram and the two-tier pattern dictionary.
//!
//! The dictionary holds at most 12 patterns: a high-occurrence group of up
//! to 4 (2-bit identifiers) and a low-occurrence group of up to 8 (3-bit
//! identifiers). [`PatternDictionary::select`] picks the 12 most frequent
//! chunk values of a histogram, ranked by count descending with ties broken
//! toward the smaller value.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

pub const HIGH_GROUP_CAPACITY: usize = 4;
pub const LOW_GROUP_CAPACITY: usize = 8;
pub const DICTIONARY_CAPACITY: usize = HIGH_GROUP_CAPACITY + LOW_GROUP_CAPACITY;

/// Occurrence counts per distinct 32-bit chunk value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChunkHistogram {
    counts: HashMap<u32, u64>,
    total: u64,
}

impl ChunkHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = u32>) -> Self {
        let mut hist = Self::new();
        for value in values {
            hist.record(value);
        }
        hist
    }

    pub fn from_matrix(matrix: &AdjacencyMatrix) -> Self {
        Self::from_values(matrix.chunk_values())
    }

    pub fn record(&mut self, value: u32) {
        *self.counts.entry(value).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn count(&self, value: u32) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Total chunks recorded; equals the sum of all counts.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// `(value, count)` pairs ranked by count descending, value ascending.
    pub fn ranked(&self) -> Vec<(u32, u64)> {
        let mut pairs: Vec<(u32, u64)> = self.counts.iter().map(|(&v, &c)| (v, c)).collect();
        pairs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        pairs
    }
}

/// Outcome of matching one chunk against the dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    HighMatch(usize),
    LowMatch(usize),
    Miss,
}

/// Up to 12 patterns split into disjoint high and low groups. A pattern's
/// identifier is its position within its group list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDictionary {
    high: Vec<u32>,
    low: Vec<u32>,
}

impl PatternDictionary {
    /// Validates group capacities, in-group uniqueness, and disjointness.
    pub fn new(high: Vec<u32>, low: Vec<u32>) -> Result<Self> {
        if high.len() > HIGH_GROUP_CAPACITY {
            return Err(invalid(format!(
                "high group holds {} patterns, capacity is {HIGH_GROUP_CAPACITY}",
                high.len()
            )));
        }
        if low.len() > LOW_GROUP_CAPACITY {
            return Err(invalid(format!(
                "low group holds {} patterns, capacity is {LOW_GROUP_CAPACITY}",
                low.len()
            )));
        }
        let mut seen = Vec::with_capacity(high.len() + low.len());
        for &pattern in high.iter().chain(&low) {
            if seen.contains(&pattern) {
                return Err(invalid(format!("pattern {pattern:#010x} appears twice")));
            }
            seen.push(pattern);
        }
        Ok(Self { high, low })
    }

    /// Adaptive selection: the up-to-12 most frequent chunk values, the top
    /// 4 as the high group and the next 8 as the low group.
    pub fn select(hist: &ChunkHistogram) -> Self {
        let ranked = hist.ranked();
        let take = ranked.len().min(DICTIONARY_CAPACITY);
        let split = take.min(HIGH_GROUP_CAPACITY);
        let high = ranked[..split].iter().map(|&(v, _)| v).collect();
        let low = ranked[split..take].iter().map(|&(v, _)| v).collect();
        Self { high, low }
    }

    pub fn high(&self) -> &[u32] {
        &self.high
    }

    pub fn low(&self) -> &[u32] {
        &self.low
    }

    /// Total pattern count across both groups.
    pub fn len(&self) -> usize {
        self.high.len() + self.low.len()
    }

    pub fn is_empty(&self) -> bool {
        self.high.is_empty() && self.low.is_empty()
    }

    /// Exact-match lookup; the groups are disjoint so the outcome is unique.
    pub fn classify(&self, value: u32) -> Classification {
        if let Some(i) = self.high.iter().position(|&p| p == value) {
            return Classification::HighMatch(i);
        }
        if let Some(j) = self.low.iter().position(|&p| p == value) {
            return Classification::LowMatch(j);
        }
        Classification::Miss
    }

    pub fn contains(&self, value: u32) -> bool {
        self.classify(value) != Classification::Miss
    }

    /// Parses the fixed-dictionary file format: one 32-bit hex pattern per
    /// line (`0x` prefix optional), first four lines forming the high group
    /// and the remainder the low group. `#` comments and blank lines are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut patterns = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let digits = line.strip_prefix("0x").unwrap_or(line);
            let value = u32::from_str_radix(digits, 16).map_err(|_| {
                invalid(format!("line {}: `{line}` is not a 32-bit hex value", idx + 1))
            })?;
            patterns.push(value);
        }
        if patterns.len() > DICTIONARY_CAPACITY {
            return Err(invalid(format!(
                "{} patterns exceed the capacity of {DICTIONARY_CAPACITY}",
                patterns.len()
            )));
        }
        let split = patterns.len().min(HIGH_GROUP_CAPACITY);
        let low = patterns.split_off(split);
        Self::new(patterns, low)
    }
}

fn invalid(reason: String) -> Error {
    Error::InvalidDictionary { reason }
}

/// Match counts measured against a histogram; these drive the size model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    pub high_matches: u64,
    pub low_matches: u64,
    pub misses: u64,
}

impl MatchStats {
    pub fn from_histogram(hist: &ChunkHistogram, dict: &PatternDictionary) -> Self {
        let high_matches: u64 = dict.high().iter().map(|&p| hist.count(p)).sum();
        let low_matches: u64 = dict.low().iter().map(|&p| hist.count(p)).sum();
        Self {
            high_matches,
            low_matches,
            misses: hist.total() - high_matches - low_matches,
        }
    }

    /// Chunks matched to any pattern.
    pub fn matched(&self) -> u64 {
        self.high_matches + self.low_matches
    }

    pub fn total_chunks(&self) -> u64 {
        self.matched() + self.misses
    }
}
