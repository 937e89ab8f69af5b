use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of letters in the alphabet. Letters are `0..a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Alphabet(u32);

impl Alphabet {
    pub const MAX: u32 = 256;

    pub fn new(a: u32) -> Result<Self> {
        if !(2..=Self::MAX).contains(&a) {
            return Err(Error::InvalidAlphabet(a as u64));
        }
        Ok(Self(a))
    }

    pub fn size(self) -> u32 {
        self.0
    }

    pub fn contains(self, letter: u8) -> bool {
        (letter as u32) < self.0
    }
}

impl TryFrom<u32> for Alphabet {
    type Error = Error;
    fn try_from(a: u32) -> Result<Self> {
        Self::new(a)
    }
}

impl From<Alphabet> for u32 {
    fn from(a: Alphabet) -> u32 {
        a.0
    }
}

/// Dense row-major matrix over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MosaicMatrix {
    rows: usize,
    cols: usize,
    alphabet: Alphabet,
    entries: Vec<u8>,
}

impl MosaicMatrix {
    pub fn new(rows: usize, cols: usize, alphabet: Alphabet, entries: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|&e| !alphabet.contains(e)) {
            return Err(Error::InvalidMatrix(format!(
                "entry {} at ({}, {}) is outside the alphabet of size {}",
                entries[pos],
                pos / cols,
                pos % cols,
                alphabet.size()
            )));
        }
        Ok(Self {
            rows,
            cols,
            alphabet,
            entries,
        })
    }

    pub fn filled(rows: usize, cols: usize, alphabet: Alphabet, letter: u8) -> Result<Self> {
        Self::new(rows, cols, alphabet, vec![letter; rows * cols])
    }

    pub fn from_rows<R: AsRef<[u8]>>(alphabet: Alphabet, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(i) = rows.iter().position(|r| r.as_ref().len() != cols) {
            return Err(Error::InvalidMatrix(format!(
                "ragged rows: row {i} has {} entries, expected {cols}",
                rows[i].as_ref().len()
            )));
        }
        let entries = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), cols, alphabet, entries)
    }

    pub(crate) fn from_parts_unchecked(
        rows: usize,
        cols: usize,
        alphabet: Alphabet,
        entries: Vec<u8>,
    ) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            alphabet,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.entries.chunks(self.cols).map(<[u8]>::to_vec).collect()
    }

    /// The submatrix at the intersection of the given rows and columns.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Self> {
        if row_idx.is_empty() || col_idx.is_empty() {
            return Err(Error::Shape("empty selection".into()));
        }
        if let Some(&r) = row_idx.iter().find(|&&r| r >= self.rows) {
            return Err(Error::Shape(format!("row {r} out of bounds ({})", self.rows)));
        }
        if let Some(&c) = col_idx.iter().find(|&&c| c >= self.cols) {
            return Err(Error::Shape(format!("column {c} out of bounds ({})", self.cols)));
        }
        let entries = row_idx
            .iter()
            .flat_map(|&r| col_idx.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        Ok(Self::from_parts_unchecked(
            row_idx.len(),
            col_idx.len(),
            self.alphabet,
            entries,
        ))
    }

    /// Appends a copy of row `source` until the matrix has `rows` rows.
    pub fn pad_rows_with(&self, rows: usize, source: usize) -> Self {
        let mut entries = self.entries.clone();
        let template = self.row(source).to_vec();
        for _ in self.rows..rows {
            entries.extend_from_slice(&template);
        }
        Self::from_parts_unchecked(rows.max(self.rows), self.cols, self.alphabet, entries)
    }

    /// Appends a copy of column `source` until the matrix has `cols` columns.
    pub fn pad_cols_with(&self, cols: usize, source: usize) -> Self {
        let new_cols = cols.max(self.cols);
        let mut entries = Vec::with_capacity(self.rows * new_cols);
        for r in 0..self.rows {
            let row = self.row(r);
            entries.extend_from_slice(row);
            entries.extend(std::iter::repeat_n(row[source], new_cols - self.cols));
        }
        Self::from_parts_unchecked(self.rows, new_cols, self.alphabet, entries)
    }
}

impl std::fmt::Display for MosaicMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
