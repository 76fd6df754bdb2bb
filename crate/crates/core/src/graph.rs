//! Bit-packed adjacency matrix, edge-list ingestion, and row chunking.
//!
//! The matrix is stored row-major as 32-bit words with columns mapped
//! MSB-first: column `j` lives in bit `31 - (j % 32)` of word `j / 32` of its
//! row. Rows are padded independently to a word boundary with zero bits, so
//! the stored words are exactly the chunks the codec consumes.

use std::fmt;

use crate::error::{Error, Result};

/// Width in bits of one chunk; equal to the pattern width.
pub const CHUNK_BITS: usize = 32;

/// One 32-bit segment of a row, tagged with its origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunk {
    pub value: u32,
    pub row: usize,
    pub offset: usize,
}

/// Square bit matrix over `nodes` vertices; bit (i, j) = 1 iff edge i -> j.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    nodes: usize,
    words_per_row: usize,
    words: Vec<u32>,
}

// Summary only; dumping megabits of matrix on an assert failure helps nobody.
impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdjacencyMatrix")
            .field("nodes", &self.nodes)
            .field("edge_bits", &self.edge_bits())
            .finish()
    }
}

impl AdjacencyMatrix {
    /// All-zero matrix over `nodes` vertices. `nodes` must be at least 1.
    pub fn new(nodes: usize) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::InvalidNodeCount);
        }
        let words_per_row = nodes.div_ceil(CHUNK_BITS);
        Ok(Self {
            nodes,
            words_per_row,
            words: vec![0; nodes * words_per_row],
        })
    }

    /// Builds a matrix from 0-indexed edges. Duplicates are idempotent and
    /// self-loops are permitted; the undirected flag mirrors every edge.
    pub fn from_edge_list(
        edges: &[(usize, usize)],
        nodes: usize,
        undirected: bool,
    ) -> Result<Self> {
        let mut matrix = Self::new(nodes)?;
        for &(from, to) in edges {
            matrix.set_edge(from, to)?;
            if undirected {
                matrix.set_edge(to, from)?;
            }
        }
        Ok(matrix)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Chunks per row: ceil(nodes / 32).
    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    /// Total chunk count: nodes * ceil(nodes / 32).
    pub fn chunk_count(&self) -> u64 {
        self.nodes as u64 * self.words_per_row as u64
    }

    /// Uncompressed size in bits: nodes squared.
    pub fn raw_bits(&self) -> u64 {
        let n = self.nodes as u64;
        n * n
    }

    pub fn set_edge(&mut self, from: usize, to: usize) -> Result<()> {
        self.check_index(from)?;
        self.check_index(to)?;
        self.words[from * self.words_per_row + to / CHUNK_BITS] |=
            1u32 << (CHUNK_BITS - 1 - to % CHUNK_BITS);
        Ok(())
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        if from >= self.nodes || to >= self.nodes {
            return false;
        }
        self.words[from * self.words_per_row + to / CHUNK_BITS]
            >> (CHUNK_BITS - 1 - to % CHUNK_BITS)
            & 1
            == 1
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.nodes {
            return Err(Error::NodeOutOfRange {
                index,
                nodes: self.nodes,
            });
        }
        Ok(())
    }

    /// Rows split left to right into 32-bit chunks, rows in index order.
    pub fn chunks(&self) -> impl Iterator<Item = Chunk> + '_ {
        self.words.iter().enumerate().map(|(i, &value)| Chunk {
            value,
            row: i / self.words_per_row,
            offset: i % self.words_per_row,
        })
    }

    /// The raw chunk values in stream order.
    pub fn chunk_values(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().copied()
    }

    /// Number of set bits.
    pub fn edge_bits(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Set-bit fraction of the full nodes x nodes grid.
    pub fn density(&self) -> f64 {
        self.edge_bits() as f64 / self.raw_bits() as f64
    }

    /// Set bits in row-major order as (from, to) pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.nodes).flat_map(move |from| {
            (0..self.nodes)
                .filter(move |&to| self.has_edge(from, to))
                .map(move |to| (from, to))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.nodes)
            .all(|i| (0..i).all(|j| self.has_edge(i, j) == self.has_edge(j, i)))
    }

    /// Valid bit positions for the chunk at `offset`; padding columns are 0.
    pub fn chunk_mask(&self, offset: usize) -> u32 {
        debug_assert!(offset < self.words_per_row);
        if offset + 1 < self.words_per_row {
            return u32::MAX;
        }
        let used = self.nodes - (self.words_per_row - 1) * CHUNK_BITS;
        if used == CHUNK_BITS {
            u32::MAX
        } else {
            u32::MAX << (CHUNK_BITS - used)
        }
    }

    pub(crate) fn set_chunk(&mut self, row: usize, offset: usize, value: u32) {
        debug_assert!(value & !self.chunk_mask(offset) == 0, "padding bits set");
        self.words[row * self.words_per_row + offset] = value;
    }
}

/// Parses the edge-list text format.
///
/// One edge per line as two whitespace-separated decimal indices; lines
/// starting with `#` and blank lines are skipped; an optional `n <count>`
/// header declares the node count. `nodes_override` (the CLI flag) must agree
/// with the header when both are present. With `one_indexed`, indices are
/// shifted down by one.
pub fn parse_edge_list(
    text: &str,
    nodes_override: Option<usize>,
    one_indexed: bool,
    undirected: bool,
) -> Result<AdjacencyMatrix> {
    let mut header_nodes: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let first = fields.next().expect("non-empty line has a first field");
        if first == "n" {
            let count = fields
                .next()
                .ok_or_else(|| parse_err(line, "header `n` missing node count"))?;
            if fields.next().is_some() {
                return Err(parse_err(line, "header has trailing fields"));
            }
            let count: usize = count
                .parse()
                .map_err(|_| parse_err(line, "header node count is not a number"))?;
            if header_nodes.replace(count).is_some() {
                return Err(parse_err(line, "duplicate `n` header"));
            }
            if let Some(flag) = nodes_override {
                if flag != count {
                    return Err(parse_err(
                        line,
                        &format!("node count flag {flag} conflicts with header {count}"),
                    ));
                }
            }
            continue;
        }
        let second = fields
            .next()
            .ok_or_else(|| parse_err(line, "expected two node indices"))?;
        if fields.next().is_some() {
            return Err(parse_err(line, "expected exactly two node indices"));
        }
        let from = parse_index(first, line, one_indexed)?;
        let to = parse_index(second, line, one_indexed)?;
        edges.push((from, to, line));
    }

    let nodes = nodes_override
        .or(header_nodes)
        .ok_or(Error::MissingNodeCount)?;
    if nodes == 0 {
        return Err(Error::InvalidNodeCount);
    }

    let mut matrix = AdjacencyMatrix::new(nodes)?;
    for (from, to, line) in edges {
        if from >= nodes || to >= nodes {
            return Err(parse_err(
                line,
                &format!("node index {} out of range for {nodes} nodes", from.max(to)),
            ));
        }
        matrix.set_edge(from, to)?;
        if undirected {
            matrix.set_edge(to, from)?;
        }
    }
    Ok(matrix)
}

fn parse_index(field: &str, line: usize, one_indexed: bool) -> Result<usize> {
    let value: usize = field
        .parse()
        .map_err(|_| parse_err(line, &format!("`{field}` is not a node index")))?;
    if one_indexed {
        value
            .checked_sub(1)
            .ok_or_else(|| parse_err(line, "index 0 invalid in a one-indexed file"))
    } else {
        Ok(value)
    }
}

fn parse_err(line: usize, reason: &str) -> Error {
    Error::EdgeListParse {
        line,
        reason: reason.to_string(),
    }
}

/// Writes the edge-list text format: an `n <count>` header, then one line
/// per set bit.
pub fn write_edge_list(matrix: &AdjacencyMatrix) -> String {
    let mut out = format!("n {}\n", matrix.nodes());
    for (from, to) in matrix.edges() {
        out.push_str(&format!("{from} {to}\n"));
    }
    out
}
