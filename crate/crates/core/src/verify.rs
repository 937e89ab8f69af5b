//! Deciding whether a matrix is an omnimosaic, and finding single targets.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial_u64, combinations, next_combination};
use crate::error::{Error, Result};
use crate::matrix::MosaicMatrix;
use crate::target::target_space;

/// Default coverage guard: bitsets of up to 2^32 bits (512 MiB).
pub const DEFAULT_GUARD_BITS: u32 = 32;
/// Default cap on the number of missing codes listed in a report.
pub const DEFAULT_MISSING_CAP: usize = 32;

/// Strictly increasing row and column indices of a `k`x`k` submatrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub row_idx: Vec<usize>,
    pub col_idx: Vec<usize>,
}

impl Placement {
    pub fn new(row_idx: Vec<usize>, col_idx: Vec<usize>) -> Result<Self> {
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&row_idx) || !increasing(&col_idx) {
            return Err(Error::InvalidArgument(
                "placement indices must be strictly increasing".into(),
            ));
        }
        Ok(Self { row_idx, col_idx })
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.row_idx.last().is_none_or(|&r| r < rows) && self.col_idx.last().is_none_or(|&c| c < cols)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub guard_bits: u32,
    pub missing_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            guard_bits: DEFAULT_GUARD_BITS,
            missing_cap: DEFAULT_MISSING_CAP,
        }
    }
}

/// Bitset over target codes; bit `c` is set iff target `c` occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageSet {
    k: usize,
    a: u32,
    space: u64,
    bits: Vec<u64>,
}

impl CoverageSet {
    pub fn empty(k: usize, a: u32, space: u64) -> Self {
        Self {
            k,
            a,
            space,
            bits: vec![0; space.div_ceil(64) as usize],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// Number of possible targets, `a^(k^2)`.
    pub fn space(&self) -> u64 {
        self.space
    }

    pub fn contains(&self, code: u64) -> bool {
        code < self.space && self.bits[(code / 64) as usize] >> (code % 64) & 1 == 1
    }

    pub fn insert(&mut self, code: u64) -> bool {
        let word = &mut self.bits[(code / 64) as usize];
        let mask = 1u64 << (code % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn remove(&mut self, code: u64) {
        self.bits[(code / 64) as usize] &= !(1u64 << (code % 64));
    }

    pub fn clear(&mut self) {
        self.bits.iter_mut().for_each(|w| *w = 0);
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.space
    }

    /// Uncovered codes in increasing order.
    pub fn missing(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.space).filter(move |&c| !self.contains(c))
    }

    pub fn union_with(&mut self, other: &CoverageSet) {
        for (w, o) in self.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub k: usize,
    pub a: u32,
    pub rows: usize,
    pub cols: usize,
    pub is_omni: bool,
    pub targets: u64,
    pub covered: u64,
    pub missing_sample: Vec<u64>,
    pub submatrices_enumerated: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_seconds: Option<f64>,
}

fn guarded_space(k: usize, a: u32, guard_bits: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    match target_space(k, a) {
        Some(s) if guard_bits >= 63 || s <= 1u64 << guard_bits => Ok(s),
        _ => Err(Error::CoverageGuard { k, a, guard_bits }),
    }
}

/// Per-row-subset column weights: `w[c] = sum_i M[rows_i][c] * a^(k(k-1-i))`,
/// so a column chosen at position `j` contributes `w[c] * a^(k-1-j)`.
pub(crate) fn column_weights(
    entries: &[u8],
    cols: usize,
    rows: &[usize],
    pow_row: &[u64],
    out: &mut [u64],
) {
    out.iter_mut().for_each(|w| *w = 0);
    for (i, &r) in rows.iter().enumerate() {
        let row = &entries[r * cols..(r + 1) * cols];
        for (w, &e) in out.iter_mut().zip(row) {
            *w += e as u64 * pow_row[i];
        }
    }
}

/// Visits the codes of every column `k`-subset given per-column weights.
pub(crate) fn for_each_column_code(
    weights: &[u64],
    k: usize,
    pow_col: &[u64],
    mut f: impl FnMut(u64),
) {
    fn rec(
        weights: &[u64],
        k: usize,
        pow_col: &[u64],
        depth: usize,
        start: usize,
        acc: u64,
        f: &mut impl FnMut(u64),
    ) {
        if depth == k {
            f(acc);
            return;
        }
        let last = weights.len() - (k - depth);
        for c in start..=last {
            rec(
                weights,
                k,
                pow_col,
                depth + 1,
                c + 1,
                acc + weights[c] * pow_col[depth],
                f,
            );
        }
    }
    if weights.len() >= k {
        rec(weights, k, pow_col, 0, 0, 0, &mut f);
    }
}

/// Powers used by the positional code: (row weights, column weights).
pub(crate) fn code_powers(k: usize, a: u32) -> (Vec<u64>, Vec<u64>) {
    let a = a as u64;
    let pow_col: Vec<u64> = (0..k).map(|j| a.pow((k - 1 - j) as u32)).collect();
    let ak = a.pow(k as u32);
    let pow_row: Vec<u64> = (0..k).map(|i| ak.pow((k - 1 - i) as u32)).collect();
    (pow_row, pow_col)
}

/// Single-threaded coverage of a raw row-major matrix into `set`.
pub(crate) fn cover_into(entries: &[u8], rows: usize, cols: usize, set: &mut CoverageSet) {
    let k = set.k;
    if k > rows || k > cols {
        return;
    }
    let (pow_row, pow_col) = code_powers(k, set.a);
    let mut weights = vec![0u64; cols];
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        column_weights(entries, cols, &idx, &pow_row, &mut weights);
        for_each_column_code(&weights, k, &pow_col, |code| {
            set.insert(code);
        });
        if !next_combination(&mut idx, rows) {
            break;
        }
    }
}

pub fn coverage(m: &MosaicMatrix, k: usize) -> Result<CoverageSet> {
    coverage_with(m, k, DEFAULT_GUARD_BITS)
}

pub fn coverage_with(m: &MosaicMatrix, k: usize, guard_bits: u32) -> Result<CoverageSet> {
    let a = m.alphabet().size();
    let space = guarded_space(k, a, guard_bits)?;
    let mut set = CoverageSet::empty(k, a, space);
    if k > m.rows() || k > m.cols() {
        return Ok(set);
    }
    let row_sets = combinations(m.rows(), k);
    if row_sets.len() < 8 {
        cover_into(m.entries(), m.rows(), m.cols(), &mut set);
        return Ok(set);
    }

    let shared: Vec<AtomicU64> = (0..set.bits.len()).map(|_| AtomicU64::new(0)).collect();
    let (pow_row, pow_col) = code_powers(k, a);
    let cols = m.cols();
    row_sets.par_iter().for_each_init(
        || vec![0u64; cols],
        |weights, rows| {
            column_weights(m.entries(), cols, rows, &pow_row, weights);
            for_each_column_code(weights, k, &pow_col, |code| {
                shared[(code / 64) as usize].fetch_or(1 << (code % 64), Ordering::Relaxed);
            });
        },
    );
    set.bits = shared.into_iter().map(AtomicU64::into_inner).collect();
    Ok(set)
}

pub fn is_omnimosaic(m: &MosaicMatrix, k: usize) -> Result<VerifyReport> {
    is_omnimosaic_with(m, k, VerifyOptions::default())
}

pub fn is_omnimosaic_with(m: &MosaicMatrix, k: usize, opts: VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let set = coverage_with(m, k, opts.guard_bits)?;
    let covered = set.count();
    let enumerated = binomial_u64(m.rows() as u64, k as u64)
        .zip(binomial_u64(m.cols() as u64, k as u64))
        .and_then(|(r, c)| r.checked_mul(c))
        .unwrap_or(u64::MAX);
    Ok(VerifyReport {
        k,
        a: set.a,
        rows: m.rows(),
        cols: m.cols(),
        is_omni: covered == set.space,
        targets: set.space,
        covered,
        missing_sample: set.missing().take(opts.missing_cap).collect(),
        submatrices_enumerated: enumerated,
        elapsed_seconds: Some(start.elapsed().as_secs_f64()),
    })
}

fn check_target(m: &MosaicMatrix, t: &MosaicMatrix) -> Result<usize> {
    if !t.is_square() {
        return Err(Error::Shape(format!(
            "target must be square, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if t.alphabet() != m.alphabet() {
        return Err(Error::Shape(format!(
            "target alphabet {} differs from matrix alphabet {}",
            t.alphabet().size(),
            m.alphabet().size()
        )));
    }
    let k = t.rows();
    if k > m.rows() || k > m.cols() {
        return Err(Error::Shape(format!(
            "{k}x{k} target does not fit in a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(k)
}

/// Leftmost column choice matching `t` on the given rows, if any.
fn greedy_columns(m: &MosaicMatrix, t: &MosaicMatrix, rows: &[usize]) -> Option<Vec<usize>> {
    let k = rows.len();
    let mut chosen = Vec::with_capacity(k);
    for c in 0..m.cols() {
        let j = chosen.len();
        if m.cols() - c < k - j {
            return None;
        }
        if rows.iter().enumerate().all(|(i, &r)| m.get(r, c) == t.get(i, j)) {
            chosen.push(c);
            if chosen.len() == k {
                return Some(chosen);
            }
        }
    }
    None
}

/// The lexicographically least placement of `t` in `m`, if there is one.
///
/// Rows are tried in lexicographic order; for fixed rows the leftmost greedy
/// column match is exact and also lexicographically least.
pub fn contains_target(m: &MosaicMatrix, t: &MosaicMatrix) -> Result<Option<Placement>> {
    const CHUNK: usize = 4096;
    let k = check_target(m, t)?;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chunk: Vec<Vec<usize>> = Vec::with_capacity(CHUNK);
    let mut exhausted = false;
    while !exhausted {
        chunk.clear();
        while chunk.len() < CHUNK {
            chunk.push(idx.clone());
            if !next_combination(&mut idx, m.rows()) {
                exhausted = true;
                break;
            }
        }
        let hit = chunk.par_iter().find_map_first(|rows| {
            greedy_columns(m, t, rows).map(|cols| Placement {
                row_idx: rows.clone(),
                col_idx: cols,
            })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

pub fn verify_placement(m: &MosaicMatrix, p: &Placement, t: &MosaicMatrix) -> bool {
    if p.row_idx.len() != t.rows() || p.col_idx.len() != t.cols() || !p.fits(m.rows(), m.cols()) {
        return false;
    }
    p.row_idx.iter().enumerate().all(|(i, &r)| {
        p.col_idx
            .iter()
            .enumerate()
            .all(|(j, &c)| m.get(r, c) == t.get(i, j))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Alphabet;
    use crate::target::{decode_target, encode_target, TargetCode};

    pub(crate) fn published_4x4() -> MosaicMatrix {
        MosaicMatrix::from_rows(
            Alphabet::new(2).unwrap(),
            &[[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0], [0, 1, 1, 1]],
        )
        .unwrap()
    }

    fn lcg(seed: &mut u64) -> u64 {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        *seed >> 33
    }

    fn random_matrix(rows: usize, cols: usize, a: u32, seed: &mut u64) -> MosaicMatrix {
        let entries = (0..rows * cols).map(|_| (lcg(seed) % a as u64) as u8).collect();
        MosaicMatrix::new(rows, cols, Alphabet::new(a).unwrap(), entries).unwrap()
    }

    /// Reference coverage straight from the definition.
    fn brute_coverage(m: &MosaicMatrix, k: usize) -> Vec<u64> {
        let mut codes = Vec::new();
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                codes.push(encode_target(&m.select(&rows, &cols).unwrap()).unwrap().code);
            }
        }
        codes.sort_unstable();
        codes.dedup();
        codes
    }

    #[test]
    fn published_example_is_omni() {
        let r = is_omnimosaic(&published_4x4(), 2).unwrap();
        assert!(r.is_omni);
        assert_eq!(r.covered, 16);
        assert_eq!(r.submatrices_enumerated, 36);
        assert!(r.missing_sample.is_empty());
    }

    #[test]
    fn all_zero_matrix_covers_only_zero() {
        let m = MosaicMatrix::filled(3, 3, Alphabet::new(2).unwrap(), 0).unwrap();
        let set = coverage(&m, 2).unwrap();
        assert_eq!(set.count(), 1);
        assert!(set.contains(0));
        let r = is_omnimosaic(&m, 2).unwrap();
        assert!(!r.is_omni);
        assert_eq!(r.missing_sample.len(), 15);
        assert_eq!(r.missing_sample[0], 1);
    }

    #[test]
    fn no_three_by_three_is_omni_for_k2() {
        for bits in 0u32..512 {
            let entries = (0..9).map(|i| (bits >> i & 1) as u8).collect();
            let m = MosaicMatrix::new(3, 3, Alphabet::new(2).unwrap(), entries).unwrap();
            let set = coverage(&m, 2).unwrap();
            assert!(set.count() <= 9);
            assert!(!set.is_full());
        }
    }

    #[test]
    fn coverage_matches_definition() {
        let mut seed = 7;
        for _ in 0..60 {
            let rows = 2 + (lcg(&mut seed) % 7) as usize;
            let cols = 2 + (lcg(&mut seed) % 7) as usize;
            let a = 2 + (lcg(&mut seed) % 2) as u32;
            let m = random_matrix(rows, cols, a, &mut seed);
            for k in 1..=rows.min(cols).min(3) {
                let set = coverage(&m, k).unwrap();
                assert_eq!(set.missing().count() as u64, set.space() - set.count());
                let got: Vec<u64> = (0..set.space()).filter(|&c| set.contains(c)).collect();
                assert_eq!(got, brute_coverage(&m, k));
            }
        }
    }

    #[test]
    fn guard_is_enforced() {
        let m = MosaicMatrix::filled(6, 6, Alphabet::new(3).unwrap(), 0).unwrap();
        assert!(matches!(
            coverage_with(&m, 3, 10),
            Err(Error::CoverageGuard { .. })
        ));
        assert!(coverage_with(&m, 3, 15).is_ok());
    }

    #[test]
    fn contains_target_examples() {
        let m = published_4x4();
        let t = MosaicMatrix::from_rows(Alphabet::new(2).unwrap(), &[[0, 1], [1, 0]]).unwrap();
        let p = contains_target(&m, &t).unwrap().unwrap();
        assert!(verify_placement(&m, &p, &t));
        // brute force agrees on the least placement
        let mut all = Vec::new();
        for rows in combinations(4, 2) {
            for cols in combinations(4, 2) {
                let q = Placement::new(rows.clone(), cols).unwrap();
                if verify_placement(&m, &q, &t) {
                    all.push(q);
                }
            }
        }
        assert_eq!(all.iter().min(), Some(&p));

        let zeros = MosaicMatrix::filled(3, 3, Alphabet::new(2).unwrap(), 0).unwrap();
        let ones = MosaicMatrix::filled(2, 2, Alphabet::new(2).unwrap(), 1).unwrap();
        assert_eq!(contains_target(&zeros, &ones).unwrap(), None);

        let p = contains_target(&m, &m).unwrap().unwrap();
        assert_eq!(p.row_idx, vec![0, 1, 2, 3]);
        assert_eq!(p.col_idx, vec![0, 1, 2, 3]);
    }

    #[test]
    fn contains_target_shape_errors() {
        let m = published_4x4();
        let rect = MosaicMatrix::filled(2, 3, Alphabet::new(2).unwrap(), 0).unwrap();
        assert!(contains_target(&m, &rect).is_err());
        let other = MosaicMatrix::filled(2, 2, Alphabet::new(3).unwrap(), 0).unwrap();
        assert!(contains_target(&m, &other).is_err());
        let big = MosaicMatrix::filled(5, 5, Alphabet::new(2).unwrap(), 0).unwrap();
        assert!(contains_target(&m, &big).is_err());
    }

    #[test]
    fn contains_agrees_with_coverage() {
        let mut seed = 99;
        for _ in 0..200 {
            let n = 2 + (lcg(&mut seed) % 7) as usize;
            let k = 1 + (lcg(&mut seed) % 3) as usize;
            let k = k.min(n);
            let m = random_matrix(n, n, 2, &mut seed);
            let set = coverage(&m, k).unwrap();
            let code = lcg(&mut seed) % set.space();
            let t = decode_target(TargetCode::new(code, k, m.alphabet()).unwrap()).unwrap();
            let found = contains_target(&m, &t).unwrap();
            assert_eq!(found.is_some(), set.contains(code));
            if let Some(p) = found {
                assert!(verify_placement(&m, &p, &t));
            }
        }
    }

    #[test]
    fn shifted_placement_fails_somewhere() {
        let mut seed = 3;
        let mut saw_false = false;
        for _ in 0..20 {
            let m = random_matrix(5, 5, 2, &mut seed);
            let p = Placement::new(vec![0, 2], vec![1, 3]).unwrap();
            let t = m.select(&p.row_idx, &p.col_idx).unwrap();
            assert!(verify_placement(&m, &p, &t));
            let shifted = Placement::new(vec![0, 2], vec![2, 4]).unwrap();
            saw_false |= !verify_placement(&m, &shifted, &t);
        }
        assert!(saw_false);
        let m = published_4x4();
        let out = Placement::new(vec![0, 4], vec![0, 1]).unwrap();
        assert!(!verify_placement(&m, &out, &m.select(&[0, 1], &[0, 1]).unwrap()));
    }
}
