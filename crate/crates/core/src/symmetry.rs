//! Bijections on matrices that map the target set onto itself: row and column
//! permutations, relabelling of letters, and transposition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MosaicMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "perm")]
pub enum SymmetryOp {
    /// Output row `i` is input row `perm[i]`.
    RowPermutation(Vec<usize>),
    /// Output column `j` is input column `perm[j]`.
    ColumnPermutation(Vec<usize>),
    /// Letter `x` becomes `perm[x]`.
    LetterPermutation(Vec<u8>),
    Transpose,
}

fn is_permutation<T: Copy + Into<usize>>(perm: &[T]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| {
        let p: usize = p.into();
        p < seen.len() && !std::mem::replace(&mut seen[p], true)
    })
}

fn invert<T: Copy + Into<usize> + TryFrom<usize>>(perm: &[T]) -> Vec<T> {
    let mut inv = perm.to_vec();
    for (i, &p) in perm.iter().enumerate() {
        inv[p.into()] = T::try_from(i).ok().expect("permutation index fits");
    }
    inv
}

impl SymmetryOp {
    pub fn inverse(&self) -> SymmetryOp {
        match self {
            SymmetryOp::RowPermutation(p) => SymmetryOp::RowPermutation(invert(p)),
            SymmetryOp::ColumnPermutation(p) => SymmetryOp::ColumnPermutation(invert(p)),
            SymmetryOp::LetterPermutation(p) => SymmetryOp::LetterPermutation(invert(p)),
            SymmetryOp::Transpose => SymmetryOp::Transpose,
        }
    }
}

pub fn apply_symmetry(m: &MosaicMatrix, op: &SymmetryOp) -> Result<MosaicMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    match op {
        SymmetryOp::RowPermutation(p) => {
            if p.len() != rows || !is_permutation(p) {
                return Err(Error::Shape(format!(
                    "row permutation must be a permutation of 0..{rows}"
                )));
            }
            let entries = p.iter().flat_map(|&r| m.row(r).iter().copied()).collect();
            Ok(MosaicMatrix::from_parts_unchecked(rows, cols, m.alphabet(), entries))
        }
        SymmetryOp::ColumnPermutation(p) => {
            if p.len() != cols || !is_permutation(p) {
                return Err(Error::Shape(format!(
                    "column permutation must be a permutation of 0..{cols}"
                )));
            }
            let entries = (0..rows)
                .flat_map(|r| p.iter().map(move |&c| (r, c)))
                .map(|(r, c)| m.get(r, c))
                .collect();
            Ok(MosaicMatrix::from_parts_unchecked(rows, cols, m.alphabet(), entries))
        }
        SymmetryOp::LetterPermutation(p) => {
            if p.len() != m.alphabet().size() as usize || !is_permutation(p) {
                return Err(Error::Shape(format!(
                    "letter permutation must be a permutation of 0..{}",
                    m.alphabet().size()
                )));
            }
            let entries = m.entries().iter().map(|&e| p[e as usize]).collect();
            Ok(MosaicMatrix::from_parts_unchecked(rows, cols, m.alphabet(), entries))
        }
        SymmetryOp::Transpose => {
            let entries = (0..cols)
                .flat_map(|c| (0..rows).map(move |r| (r, c)))
                .map(|(r, c)| m.get(r, c))
                .collect();
            Ok(MosaicMatrix::from_parts_unchecked(cols, rows, m.alphabet(), entries))
        }
    }
}
