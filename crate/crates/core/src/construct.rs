//! Explicit omnimosaics built from grid diagrams of horizontal and vertical
//! strokes.
//!
//! Every cell of a `k`x`k` diagram is marked `H` or `V`. Grid row `i` expands
//! to a block of `a^r_i` matrix rows, one per word of length `r_i` (its
//! number of `H` cells); grid column `j` expands to `a^c_j` matrix columns,
//! one per word of length `c_j` (its number of `V` cells). An `H` cell copies
//! a letter of the row-block word across its whole region, a `V` cell copies
//! a letter of the column-block word down its region. Picking the right row in
//! each row block and the right column in each column block then spells out
//! any target.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Alphabet, MosaicMatrix};
use crate::verify::Placement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stroke {
    H,
    V,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDiagram {
    k: usize,
    cells: Vec<Stroke>,
}

impl GridDiagram {
    pub fn new(k: usize, cells: Vec<Stroke>) -> Result<Self> {
        if k == 0 || cells.len() != k * k {
            return Err(Error::InvalidArgument(format!(
                "grid diagram needs k >= 1 and k^2 cells, got k={k} with {} cells",
                cells.len()
            )));
        }
        Ok(Self { k, cells })
    }

    pub fn from_rows(rows: &[&[Stroke]]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidArgument("grid diagram must be square".into()));
        }
        Self::new(k, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cell(&self, i: usize, j: usize) -> Stroke {
        self.cells[i * self.k + j]
    }

    /// `r_i`: number of `H` cells in each grid row.
    pub fn row_counts(&self) -> Vec<usize> {
        (0..self.k)
            .map(|i| (0..self.k).filter(|&j| self.cell(i, j) == Stroke::H).count())
            .collect()
    }

    /// `c_j`: number of `V` cells in each grid column.
    pub fn col_counts(&self) -> Vec<usize> {
        (0..self.k)
            .map(|j| (0..self.k).filter(|&i| self.cell(i, j) == Stroke::V).count())
            .collect()
    }
}

/// The balanced diagram: `H` in the top-left `floor(k/2)` x `ceil(k/2)` block
/// and in the bottom-right block, `V` elsewhere.
pub fn canonical_grid(k: usize) -> GridDiagram {
    let (lo, hi) = (k / 2, k.div_ceil(2));
    let cells = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| {
            if (i < lo && j < hi) || (i >= lo && j >= hi) {
                Stroke::H
            } else {
                Stroke::V
            }
        })
        .collect();
    GridDiagram { k, cells }
}

/// Block geometry and letter bookkeeping of a constructed matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionMap {
    pub a: u32,
    /// Prefix sums of `a^r_i`; row block `i` is `row_offsets[i]..row_offsets[i+1]`.
    pub row_offsets: Vec<usize>,
    /// Prefix sums of `a^c_j`.
    pub col_offsets: Vec<usize>,
    /// For each grid row, its `H` columns in ascending order.
    pub f: Vec<Vec<usize>>,
    /// For each grid column, its `V` rows in ascending order.
    pub f_prime: Vec<Vec<usize>>,
}

impl RegionMap {
    pub fn from_grid(grid: &GridDiagram, a: Alphabet) -> Result<Self> {
        let k = grid.k();
        let f: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).filter(|&j| grid.cell(i, j) == Stroke::H).collect())
            .collect();
        let f_prime: Vec<Vec<usize>> = (0..k)
            .map(|j| (0..k).filter(|&i| grid.cell(i, j) == Stroke::V).collect())
            .collect();
        let offsets = |lens: &[Vec<usize>]| -> Result<Vec<usize>> {
            let mut out = Vec::with_capacity(k + 1);
            out.push(0usize);
            for l in lens {
                let block = (a.size() as usize)
                    .checked_pow(l.len() as u32)
                    .ok_or_else(|| Error::Overflow(format!("{}^{} blocks", a.size(), l.len())))?;
                let next = out
                    .last()
                    .unwrap()
                    .checked_add(block)
                    .ok_or_else(|| Error::Overflow("matrix side".into()))?;
                out.push(next);
            }
            Ok(out)
        };
        Ok(Self {
            a: a.size(),
            row_offsets: offsets(&f)?,
            col_offsets: offsets(&f_prime)?,
            f,
            f_prime,
        })
    }

    pub fn rows(&self) -> usize {
        *self.row_offsets.last().unwrap()
    }

    pub fn cols(&self) -> usize {
        *self.col_offsets.last().unwrap()
    }

    pub fn k(&self) -> usize {
        self.f.len()
    }

    fn block_of(offsets: &[usize], x: usize) -> usize {
        offsets.partition_point(|&o| o <= x) - 1
    }
}

/// Letter `t` (0-based, most significant first) of the base-`a` word of
/// length `len` with index `index`.
fn word_letter(index: usize, len: usize, t: usize, a: usize) -> u8 {
    (index / a.pow((len - 1 - t) as u32) % a) as u8
}

/// Cap on constructed matrix area, to fail fast instead of exhausting memory.
pub const MAX_CELLS: usize = 1 << 32;

pub fn build_mosaic(grid: &GridDiagram, a: Alphabet) -> Result<(MosaicMatrix, RegionMap)> {
    let map = RegionMap::from_grid(grid, a)?;
    let (rows, cols) = (map.rows(), map.cols());
    let cells = rows
        .checked_mul(cols)
        .filter(|&c| c <= MAX_CELLS)
        .ok_or_else(|| Error::Overflow(format!("{rows}x{cols} matrix is too large")))?;
    let base = a.size() as usize;

    // Position of grid column j inside f[i] and of grid row i inside f'[j].
    let k = grid.k();
    let mut pos_in_f = vec![0usize; k * k];
    for (i, hs) in map.f.iter().enumerate() {
        for (t, &j) in hs.iter().enumerate() {
            pos_in_f[i * k + j] = t;
        }
    }
    let mut pos_in_fp = vec![0usize; k * k];
    for (j, vs) in map.f_prime.iter().enumerate() {
        for (s, &i) in vs.iter().enumerate() {
            pos_in_fp[i * k + j] = s;
        }
    }
    let col_block: Vec<usize> = (0..cols)
        .map(|c| RegionMap::block_of(&map.col_offsets, c))
        .collect();

    let mut entries = vec![0u8; cells];
    entries
        .par_chunks_mut(cols)
        .enumerate()
        .for_each(|(row, out)| {
            let i = RegionMap::block_of(&map.row_offsets, row);
            let l = row - map.row_offsets[i];
            let r_i = map.f[i].len();
            for (col, slot) in out.iter_mut().enumerate() {
                let j = col_block[col];
                *slot = match grid.cell(i, j) {
                    Stroke::H => word_letter(l, r_i, pos_in_f[i * k + j], base),
                    Stroke::V => {
                        let m = col - map.col_offsets[j];
                        word_letter(m, map.f_prime[j].len(), pos_in_fp[i * k + j], base)
                    }
                };
            }
        });
    Ok((MosaicMatrix::from_parts_unchecked(rows, cols, a, entries), map))
}

/// The `(k a^k)`x`k` strip listing every length-`k` word, in code order,
/// `k` times over.
pub fn thin_strip(k: usize, a: Alphabet) -> Result<MosaicMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let base = a.size() as usize;
    let words = base
        .checked_pow(k as u32)
        .ok_or_else(|| Error::Overflow(format!("{base}^{k} words")))?;
    let rows = words
        .checked_mul(k)
        .filter(|&r| r.saturating_mul(k) <= MAX_CELLS)
        .ok_or_else(|| Error::Overflow("strip too large".into()))?;
    let entries = (0..rows)
        .flat_map(|r| (0..k).map(move |t| word_letter(r % words, k, t, base)))
        .collect();
    Ok(MosaicMatrix::from_parts_unchecked(rows, k, a, entries))
}

/// Side length of the square construction:
/// `ceil(k/2) a^ceil(k/2) + floor(k/2) a^floor(k/2)`.
pub fn square_side(k: usize, a: Alphabet) -> Option<usize> {
    let (lo, hi) = (k / 2, k.div_ceil(2));
    let base = a.size() as usize;
    let big = hi.checked_mul(base.checked_pow(hi as u32)?)?;
    let small = lo.checked_mul(base.checked_pow(lo as u32)?)?;
    big.checked_add(small)
}

/// Square omnimosaic from the canonical diagram, padded by repeating the
/// last row (or column) up to the longer side.
pub fn square_omnimosaic(k: usize, a: Alphabet) -> Result<MosaicMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let n = square_side(k, a).ok_or_else(|| Error::Overflow("square side".into()))?;
    let (m, _) = build_mosaic(&canonical_grid(k), a)?;
    debug_assert_eq!(m.rows().max(m.cols()), n);
    let m = m.pad_rows_with(n, m.rows() - 1);
    Ok(m.pad_cols_with(n, m.cols() - 1))
}

/// Constructive placement of `target` in the matrix built from `grid`.
pub fn locate(map: &RegionMap, grid: &GridDiagram, target: &MosaicMatrix) -> Result<Placement> {
    let k = grid.k();
    if map.k() != k {
        return Err(Error::Shape("region map and grid diagram disagree on k".into()));
    }
    if target.rows() != k || target.cols() != k {
        return Err(Error::Shape(format!(
            "target must be {k}x{k}, got {}x{}",
            target.rows(),
            target.cols()
        )));
    }
    if target.alphabet().size() != map.a {
        return Err(Error::Shape(format!(
            "target alphabet {} differs from construction alphabet {}",
            target.alphabet().size(),
            map.a
        )));
    }
    let base = map.a as usize;
    let row_idx = (0..k)
        .map(|i| {
            let l = map.f[i]
                .iter()
                .fold(0usize, |acc, &j| acc * base + target.get(i, j) as usize);
            map.row_offsets[i] + l
        })
        .collect();
    let col_idx = (0..k)
        .map(|j| {
            let m = map.f_prime[j]
                .iter()
                .fold(0usize, |acc, &i| acc * base + target.get(i, j) as usize);
            map.col_offsets[j] + m
        })
        .collect();
    Ok(Placement { row_idx, col_idx })
}

/// Side length `k a^(k^(d-1)/d)` of a `d`-dimensional analogue. This is an
/// estimate only; no `d >= 3` construction is provided.
pub fn higher_dim_side_estimate(k: usize, a: u32, d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let k = k as f64;
    let exponent = k.powi(d as i32 - 1) / d as f64;
    Ok(k * (a as f64).powf(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_omnimosaic, verify_placement};
    use Stroke::{H, V};

    fn alpha(a: u32) -> Alphabet {
        Alphabet::new(a).unwrap()
    }

    #[test]
    fn canonical_grid_small_cases() {
        let g2 = canonical_grid(2);
        assert_eq!(g2, GridDiagram::from_rows(&[&[H, V], &[V, H]]).unwrap());
        assert_eq!(g2.row_counts(), vec![1, 1]);
        assert_eq!(g2.col_counts(), vec![1, 1]);

        let g3 = canonical_grid(3);
        assert_eq!(
            g3,
            GridDiagram::from_rows(&[&[H, H, V], &[V, V, H], &[V, V, H]]).unwrap()
        );
        assert_eq!(g3.row_counts(), vec![2, 1, 1]);
        assert_eq!(g3.col_counts(), vec![2, 2, 1]);

        let g1 = canonical_grid(1);
        assert_eq!(g1.row_counts()[0] + g1.col_counts()[0], 1);
    }

    #[test]
    fn canonical_grid_multisets() {
        for k in 1..=12 {
            let g = canonical_grid(k);
            let (lo, hi) = (k / 2, k.div_ceil(2));
            let r = g.row_counts();
            let c = g.col_counts();
            assert_eq!(r.iter().sum::<usize>() + c.iter().sum::<usize>(), k * k);
            let count = |v: &[usize], x| v.iter().filter(|&&y| y == x).count();
            if lo == hi {
                assert_eq!(count(&r, hi), k);
                assert_eq!(count(&c, hi), k);
            } else {
                assert_eq!(count(&r, hi), lo, "k={k}");
                assert_eq!(count(&r, lo), hi, "k={k}");
                assert_eq!(count(&c, hi), hi, "k={k}");
                assert_eq!(count(&c, lo), lo, "k={k}");
            }
        }
    }

    #[test]
    fn build_small_cases() {
        let (m, map) = build_mosaic(&canonical_grid(2), alpha(2)).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        assert_eq!(map.row_offsets, vec![0, 2, 4]);
        assert!(is_omnimosaic(&m, 2).unwrap().is_omni);

        let (m, _) = build_mosaic(&canonical_grid(3), alpha(2)).unwrap();
        assert_eq!((m.rows(), m.cols()), (8, 10));
        assert!(is_omnimosaic(&m, 3).unwrap().is_omni);

        let one = GridDiagram::new(1, vec![H]).unwrap();
        let (m, _) = build_mosaic(&one, alpha(3)).unwrap();
        assert_eq!(m.to_rows(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn region_fill_rules_hold() {
        let grid = canonical_grid(3);
        let (m, map) = build_mosaic(&grid, alpha(3)).unwrap();
        for row in 0..m.rows() {
            let i = RegionMap::block_of(&map.row_offsets, row);
            let l = row - map.row_offsets[i];
            for col in 0..m.cols() {
                let j = RegionMap::block_of(&map.col_offsets, col);
                let want = match grid.cell(i, j) {
                    H => {
                        let t = map.f[i].iter().position(|&x| x == j).unwrap();
                        word_letter(l, map.f[i].len(), t, 3)
                    }
                    V => {
                        let s = map.f_prime[j].iter().position(|&x| x == i).unwrap();
                        word_letter(col - map.col_offsets[j], map.f_prime[j].len(), s, 3)
                    }
                };
                assert_eq!(m.get(row, col), want);
            }
        }
    }

    #[test]
    fn thin_strip_examples() {
        let s = thin_strip(2, alpha(2)).unwrap();
        assert_eq!((s.rows(), s.cols()), (8, 2));
        assert_eq!(
            s.to_rows(),
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1]
            ]
        );
        assert_eq!(thin_strip(1, alpha(2)).unwrap().to_rows(), vec![vec![0], vec![1]]);
        let s = thin_strip(2, alpha(3)).unwrap();
        assert_eq!((s.rows(), s.cols()), (18, 2));
        for (k, a) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            assert!(is_omnimosaic(&thin_strip(k, alpha(a)).unwrap(), k).unwrap().is_omni);
        }
    }

    #[test]
    fn square_sizes() {
        assert_eq!(square_omnimosaic(2, alpha(3)).unwrap().rows(), 6);
        let m = square_omnimosaic(3, alpha(2)).unwrap();
        assert_eq!((m.rows(), m.cols()), (10, 10));
        assert_eq!(m.row(8), m.row(7));
        assert_eq!(square_omnimosaic(2, alpha(2)).unwrap().rows(), 4);
        for k in 1..=8usize {
            for a in 2..=4u32 {
                let (lo, hi) = (k / 2, k.div_ceil(2));
                let want = hi * (a as usize).pow(hi as u32) + lo * (a as usize).pow(lo as u32);
                assert_eq!(square_side(k, alpha(a)), Some(want));
                let (m, _) = build_mosaic(&canonical_grid(k), alpha(a)).unwrap();
                assert_eq!(m.rows().max(m.cols()), want);
            }
        }
    }

    #[test]
    fn locate_zero_target_hits_block_starts() {
        let grid = canonical_grid(2);
        let (m, map) = build_mosaic(&grid, alpha(2)).unwrap();
        let t = MosaicMatrix::filled(2, 2, alpha(2), 0).unwrap();
        let p = locate(&map, &grid, &t).unwrap();
        assert_eq!(p.row_idx, vec![0, 2]);
        assert_eq!(p.col_idx, vec![0, 2]);
        assert!(verify_placement(&m, &p, &t));
    }

    #[test]
    fn locate_is_idempotent_on_read_back() {
        let grid = canonical_grid(3);
        let (m, map) = build_mosaic(&grid, alpha(2)).unwrap();
        let t = MosaicMatrix::from_rows(alpha(2), &[[1, 0, 1], [0, 0, 1], [1, 1, 0]]).unwrap();
        let p = locate(&map, &grid, &t).unwrap();
        let back = m.select(&p.row_idx, &p.col_idx).unwrap();
        assert_eq!(back, t);
        assert_eq!(locate(&map, &grid, &back).unwrap(), p);
    }

    #[test]
    fn locate_rejects_mismatches() {
        let grid = canonical_grid(2);
        let (_, map) = build_mosaic(&grid, alpha(2)).unwrap();
        let wrong_k = MosaicMatrix::filled(3, 3, alpha(2), 0).unwrap();
        assert!(locate(&map, &grid, &wrong_k).is_err());
        let wrong_a = MosaicMatrix::filled(2, 2, alpha(3), 0).unwrap();
        assert!(locate(&map, &grid, &wrong_a).is_err());
    }

    #[test]
    fn higher_dim_estimates() {
        let d2 = higher_dim_side_estimate(4, 3, 2).unwrap();
        assert!((d2 - 4.0 * 9.0).abs() < 1e-12);
        let v = higher_dim_side_estimate(2, 2, 3).unwrap();
        assert!((v - 2.0 * 2f64.powf(4.0 / 3.0)).abs() < 1e-12);
        assert!((v - 5.04).abs() < 0.01);
        let v = higher_dim_side_estimate(3, 2, 2).unwrap();
        assert!((v - 8.485).abs() < 0.01);
        assert!(higher_dim_side_estimate(3, 2, 1).is_err());
    }
}
