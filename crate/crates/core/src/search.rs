//! Exact search for the smallest omnimosaic at tiny parameters.
//!
//! The search fills an `n`x`n` matrix cell by cell in row-major order and only
//! visits matrices whose letters first appear in the order `0, 1, 2, ...`.
//! Relabelling letters preserves the omnimosaic property, so an exhausted
//! search proves nonexistence.
//!
//! Sorting rows or columns is not a valid reduction: submatrices keep the
//! order of their rows and columns, and a row permutation of an omnimosaic
//! is in general not one. Both orders are available as diagnostics only.
//!
//! Pruning counts wasted placements: a placement whose cells are all filled
//! is final, and a final placement whose target was already seen is a
//! duplicate. An omnimosaic needs `covered >= a^(k^2)` out of `C(n,k)^2`
//! placements, so more than `C(n,k)^2 - a^(k^2)` duplicates is a dead end.
//!
//! A second bound groups targets by their top row. A placement's top row is
//! known as soon as its top-left to top-right cells are filled, long before
//! the placement is final. Each group of `a^(k(k-1))` targets can only be
//! completed by placements whose top row is still open or matches the
//! group, which settles most branches once the last possible top row of a
//! placement has been filled.
//!
//! Sizes at or above the side of the explicit square construction are
//! answered by that construction unless `use_construction` is off; the
//! search itself is only needed below it.

use std::collections::BTreeSet;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{construction_upper, pigeonhole_min_n};
use crate::combin::{binomial_big, binomial_u64, combinations};
use crate::construct::{square_omnimosaic, square_side};
use crate::error::{Error, Result};
use crate::matrix::{Alphabet, MosaicMatrix};
use crate::target::target_space;
use crate::verify::{coverage, CoverageSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: 1 << 40,
            max_time: Duration::from_secs(3600),
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub a: u32,
    pub status: SearchStatus,
    pub witness: Option<Vec<Vec<u8>>>,
    /// Where the witness came from: `search` or `construction`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_source: Option<String>,
    pub nodes: u64,
    /// Top-level branches (canonical first rows) in the search.
    pub branches: usize,
    /// Branches fully explored, including those skipped through a checkpoint.
    pub branches_exhausted: usize,
    /// False when the unproven column-order pruning was switched on; an
    /// `exhausted_none` verdict is then not a proof.
    pub sound: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_seconds: Option<f64>,
}

impl SearchResult {
    pub fn witness_matrix(&self) -> Option<MosaicMatrix> {
        let rows = self.witness.as_ref()?;
        MosaicMatrix::from_rows(Alphabet::new(self.a).ok()?, rows).ok()
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Split top-level branches across the current rayon pool. With `false`
    /// node counts are reproducible.
    pub parallel: bool,
    /// Require rows in nondecreasing order. Diagnostic only: the result is
    /// flagged as not sound.
    pub row_order: bool,
    /// Require columns in nondecreasing order. Diagnostic only.
    pub column_order: bool,
    /// File listing exhausted top-level branches, one decimal code per line.
    /// Listed branches are skipped and newly exhausted ones appended.
    pub checkpoint: Option<PathBuf>,
    /// Skip the search when `n` is at least the side of the explicit
    /// construction, which is then the witness.
    pub use_construction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            parallel: false,
            row_order: false,
            column_order: false,
            checkpoint: None,
            use_construction: true,
        }
    }
}

enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

struct Shared<'s> {
    nodes: &'s AtomicU64,
    stop: &'s AtomicBool,
    budget: SearchBudget,
    start: Instant,
}

impl Shared<'_> {
    fn over_budget(&self) -> bool {
        self.nodes.load(Ordering::Relaxed) >= self.budget.max_nodes
            || self.start.elapsed() >= self.budget.max_time
    }
}

/// Placements that become final when a given cell is filled: rows are `m`
/// plus `k-1` earlier rows, columns are `q` plus `k-1` earlier columns.
struct FinalPlacements {
    row_sets: Vec<Vec<Vec<usize>>>,
    col_sets: Vec<Vec<Vec<usize>>>,
}

impl FinalPlacements {
    fn new(n: usize, k: usize) -> Self {
        let sets = |last: usize| -> Vec<Vec<usize>> {
            if last + 1 < k {
                return Vec::new();
            }
            combinations(last, k - 1)
                .into_iter()
                .map(|mut s| {
                    s.push(last);
                    s
                })
                .collect()
        };
        let all: Vec<Vec<Vec<usize>>> = (0..n).map(sets).collect();
        Self {
            row_sets: all.clone(),
            col_sets: all,
        }
    }
}

struct Searcher<'s> {
    n: usize,
    k: usize,
    a: u8,
    slack: i64,
    row_order: bool,
    column_order: bool,
    grid: Vec<u8>,
    cover: CoverageSet,
    dups: i64,
    /// Codes finalized so far, tagged with `FRESH` when newly covered.
    final_log: Vec<u64>,
    placements: i64,
    finalized: i64,
    /// Missing targets that may remain at the end.
    allowed_missing: i64,
    /// Targets per top-row group, `a^(k(k-1))`.
    group_size: u64,
    group_covered: Vec<i64>,
    /// Non-final placements whose top row is already filled, per group.
    group_pending: Vec<i64>,
    pending_total: i64,
    /// Placements with top row `m`, per choice of columns.
    top_multiplicity: Vec<i64>,
    pow_top: Vec<u64>,
    /// `col_tie[m * n + q]`: columns `q-1` and `q` agree on rows `0..m`.
    col_tie: Vec<bool>,
    weights: Vec<u64>,
    finals: &'s FinalPlacements,
    shared: &'s Shared<'s>,
    local_nodes: u64,
}

const FLUSH_EVERY: u64 = 1024;
const FRESH: u64 = 1 << 63;

impl<'s> Searcher<'s> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        n: usize,
        k: usize,
        a: u32,
        space: u64,
        required: u64,
        opts: &SearchOptions,
        finals: &'s FinalPlacements,
        shared: &'s Shared<'s>,
    ) -> Self {
        let weights = (0..k * k).map(|p| (a as u64).pow((k * k - 1 - p) as u32)).collect();
        let placements = binomial_u64(n as u64, k as u64)
            .and_then(|c| c.checked_mul(c))
            .map_or(i64::MAX, |p| p.min(i64::MAX as u64) as i64);
        let groups = (a as u64).pow(k as u32) as usize;
        Self {
            n,
            k,
            a: a as u8,
            slack: placements - required as i64,
            row_order: opts.row_order,
            column_order: opts.column_order,
            grid: vec![0; n * n],
            cover: CoverageSet::empty(k, a, space),
            dups: 0,
            final_log: Vec::new(),
            placements,
            finalized: 0,
            allowed_missing: (space - required) as i64,
            group_size: space / groups as u64,
            group_covered: vec![0; groups],
            group_pending: vec![0; groups],
            pending_total: 0,
            top_multiplicity: (0..n)
                .map(|m| binomial_u64((n - 1 - m) as u64, (k - 1) as u64).unwrap_or(0) as i64)
                .collect(),
            pow_top: (0..k).map(|j| (a as u64).pow((k - 1 - j) as u32)).collect(),
            col_tie: vec![true; (n + 1) * n],
            weights,
            finals,
            shared,
            local_nodes: 0,
        }
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes.is_multiple_of(FLUSH_EVERY) {
            self.shared.nodes.fetch_add(FLUSH_EVERY, Ordering::Relaxed);
            if self.shared.stop.load(Ordering::Relaxed) || self.shared.over_budget() {
                return false;
            }
        }
        true
    }

    fn flush(&mut self) {
        self.shared
            .nodes
            .fetch_add(self.local_nodes % FLUSH_EVERY, Ordering::Relaxed);
        self.local_nodes = 0;
    }

    fn top_pattern(&self, m: usize, cols: &[usize]) -> usize {
        let row = &self.grid[m * self.n..];
        cols.iter().zip(&self.pow_top).map(|(&c, &w)| row[c] as u64 * w).sum::<u64>() as usize
    }

    fn mark_top_rows(&mut self, m: usize, q: usize, sign: i64) {
        let mult = self.top_multiplicity[m];
        if mult == 0 {
            return;
        }
        let finals = self.finals;
        for cols in &finals.col_sets[q] {
            let p = self.top_pattern(m, cols);
            self.group_pending[p] += sign * mult;
            self.pending_total += sign * mult;
        }
    }

    /// Records what filling `(m, q)` settles: top rows that become known and
    /// placements that become final.
    fn commit_cell(&mut self, m: usize, q: usize) {
        self.mark_top_rows(m, q, 1);
        let (n, k) = (self.n, self.k);
        let finals = self.finals;
        for rows in &finals.row_sets[m] {
            for cols in &finals.col_sets[q] {
                let mut code = 0u64;
                for (i, &r) in rows.iter().enumerate() {
                    let base = r * n;
                    for (j, &c) in cols.iter().enumerate() {
                        code += self.grid[base + c] as u64 * self.weights[i * k + j];
                    }
                }
                let g = (code / self.group_size) as usize;
                self.group_pending[g] -= 1;
                self.pending_total -= 1;
                self.finalized += 1;
                if self.cover.insert(code) {
                    self.group_covered[g] += 1;
                    self.final_log.push(code | FRESH);
                } else {
                    self.dups += 1;
                    self.final_log.push(code);
                }
            }
        }
    }

    fn undo_cell(&mut self, m: usize, q: usize) {
        let total = self.finals.row_sets[m].len() * self.finals.col_sets[q].len();
        for _ in 0..total {
            let entry = self.final_log.pop().expect("undo stack");
            let code = entry & !FRESH;
            let g = (code / self.group_size) as usize;
            if entry & FRESH != 0 {
                self.cover.remove(code);
                self.group_covered[g] -= 1;
            } else {
                self.dups -= 1;
            }
            self.group_pending[g] += 1;
            self.pending_total += 1;
            self.finalized -= 1;
        }
        self.mark_top_rows(m, q, -1);
    }

    fn feasible(&self) -> bool {
        if self.dups > self.slack {
            return false;
        }
        let open = self.placements - self.finalized - self.pending_total;
        let size = self.group_size as i64;
        if open >= size {
            return true;
        }
        let mut deficit = 0;
        for (covered, pending) in self.group_covered.iter().zip(&self.group_pending) {
            deficit += (size - covered - pending - open).max(0);
            if deficit > self.allowed_missing {
                return false;
            }
        }
        true
    }

    fn fill(&mut self, idx: usize, max_used: i32, row_tight: bool, forced: &[u8]) -> Outcome {
        let n = self.n;
        if idx == n * n {
            return Outcome::Found;
        }
        let (m, q) = (idx / n, idx % n);
        let row_tight = if q == 0 { m > 0 && self.row_order } else { row_tight };

        let mut lo = 0u8;
        if row_tight {
            lo = self.grid[idx - n];
        }
        let tie = q > 0 && self.column_order && self.col_tie[m * n + q];
        if tie {
            lo = lo.max(self.grid[idx - 1]);
        }
        let hi = ((max_used + 1) as u8).min(self.a - 1);
        let (lo, hi) = match forced.get(idx) {
            Some(&f) if f >= lo && f <= hi => (f, f),
            Some(_) => return Outcome::Exhausted,
            None => (lo, hi),
        };

        for letter in lo..=hi {
            if !self.tick() {
                return Outcome::Aborted;
            }
            self.grid[idx] = letter;
            self.commit_cell(m, q);
            if self.feasible() {
                if q > 0 {
                    self.col_tie[(m + 1) * n + q] =
                        self.col_tie[m * n + q] && self.grid[idx - 1] == letter;
                }
                let tight = row_tight && letter == self.grid.get(idx.wrapping_sub(n)).copied().unwrap_or(0);
                match self.fill(idx + 1, max_used.max(letter as i32), tight, forced) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.undo_cell(m, q);
        }
        Outcome::Exhausted
    }
}

/// Canonical first rows: letter-canonical, and nondecreasing under
/// `column_order`.
fn first_rows(n: usize, a: u32, column_order: bool) -> Vec<Vec<u8>> {
    fn rec(row: &mut Vec<u8>, n: usize, a: u8, max_used: i32, column_order: bool, out: &mut Vec<Vec<u8>>) {
        if row.len() == n {
            out.push(row.clone());
            return;
        }
        let lo = if column_order { row.last().copied().unwrap_or(0) } else { 0 };
        let hi = ((max_used + 1) as u8).min(a - 1);
        for letter in lo..=hi {
            row.push(letter);
            rec(row, n, a, max_used.max(letter as i32), column_order, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, a as u8, -1, column_order, &mut out);
    out
}

fn row_code(row: &[u8], a: u32) -> u64 {
    row.iter().fold(0u64, |acc, &x| acc * a as u64 + x as u64)
}

fn read_checkpoint(path: &PathBuf) -> Result<BTreeSet<u64>> {
    match std::fs::read_to_string(path) {
        Ok(text) => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                l.trim().parse::<u64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("invalid branch code `{}` in checkpoint", l.trim()),
                })
            })
            .collect(),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(BTreeSet::new()),
        Err(e) => Err(Error::InvalidArgument(format!(
            "cannot read checkpoint {}: {e}",
            path.display()
        ))),
    }
}

/// Decides whether an `n`x`n` omnimosaic for `k`x`k` targets exists.
pub fn exists_omnimosaic(n: usize, k: usize, a: u32, budget: SearchBudget) -> Result<SearchResult> {
    exists_omnimosaic_with(n, k, a, budget, &SearchOptions::default())
}

pub fn exists_omnimosaic_with(
    n: usize,
    k: usize,
    a: u32,
    budget: SearchBudget,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    search_covering(n, k, a, None, budget, opts)
}

/// Looks for a matrix covering at least `required` targets (all of them when
/// `None`).
fn search_covering(
    n: usize,
    k: usize,
    a: u32,
    required: Option<u64>,
    budget: SearchBudget,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let alphabet = Alphabet::new(a)?;
    if n == 0 || k == 0 || n < k {
        return Err(Error::InvalidArgument(format!("search needs 1 <= k <= n, got n={n}, k={k}")));
    }
    if budget.max_nodes == 0 || budget.max_time.is_zero() {
        return Err(Error::InvalidArgument("search budget must be positive".into()));
    }
    let space = target_space(k, a).filter(|&s| s <= 1 << 32).ok_or(Error::CoverageGuard {
        k,
        a,
        guard_bits: 32,
    })?;
    if (a as u64).checked_pow(n as u32).is_none_or(|c| c > 1 << 62) {
        return Err(Error::InvalidArgument(format!("{a}^{n} first rows do not fit branch codes")));
    }
    let required = required.unwrap_or(space).min(space);
    let start = Instant::now();
    let sound = !opts.column_order && !opts.row_order;
    let placements = binomial_u64(n as u64, k as u64)
        .and_then(|c| c.checked_mul(c))
        .unwrap_or(u64::MAX);
    let mut result = SearchResult {
        n,
        k,
        a,
        status: SearchStatus::ExhaustedNone,
        witness: None,
        witness_source: None,
        nodes: 0,
        branches: 0,
        branches_exhausted: 0,
        sound,
        elapsed_seconds: None,
    };
    if placements < required {
        result.elapsed_seconds = Some(start.elapsed().as_secs_f64());
        return Ok(result);
    }

    if opts.use_construction && required == space && square_side(k, alphabet).is_some_and(|s| s <= n) {
        let m = square_omnimosaic(k, alphabet)?;
        let last = m.rows() - 1;
        let m = m.pad_rows_with(n, last).pad_cols_with(n, last);
        assert!(coverage(&m, k)?.is_full(), "construction is not an omnimosaic");
        result.status = SearchStatus::Found;
        result.witness = Some(m.to_rows());
        result.witness_source = Some("construction".into());
        result.elapsed_seconds = Some(start.elapsed().as_secs_f64());
        return Ok(result);
    }

    let branches: Vec<Vec<u8>> = first_rows(n, a, opts.column_order);
    let done = match &opts.checkpoint {
        Some(p) => read_checkpoint(p)?,
        None => BTreeSet::new(),
    };
    let pending: Vec<&Vec<u8>> = branches
        .iter()
        .filter(|b| !done.contains(&row_code(b, a)))
        .collect();
    result.branches = branches.len();

    let finals = FinalPlacements::new(n, k);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let shared = Shared {
        nodes: &nodes,
        stop: &stop,
        budget,
        start,
    };
    let log = Mutex::new(());

    let run_branch = |prefix: &Vec<u8>| -> (Outcome, Option<Vec<u8>>) {
        if stop.load(Ordering::Relaxed) {
            return (Outcome::Aborted, None);
        }
        let mut s = Searcher::new(n, k, a, space, required, opts, &finals, &shared);
        let out = s.fill(0, -1, false, prefix);
        s.flush();
        match out {
            Outcome::Found => {
                stop.store(true, Ordering::Relaxed);
                (Outcome::Found, Some(s.grid))
            }
            Outcome::Exhausted => {
                if let Some(path) = &opts.checkpoint {
                    let _guard = log.lock().unwrap();
                    if let Ok(mut f) = OpenOptions::new().create(true).append(true).open(path) {
                        let _ = writeln!(f, "{}", row_code(prefix, a));
                    }
                }
                (Outcome::Exhausted, None)
            }
            Outcome::Aborted => (Outcome::Aborted, None),
        }
    };

    let outcomes: Vec<(Outcome, Option<Vec<u8>>)> = if opts.parallel {
        pending.par_iter().map(|b| run_branch(b)).collect()
    } else {
        let mut v = Vec::with_capacity(pending.len());
        for b in &pending {
            let o = run_branch(b);
            let stop_now = !matches!(o.0, Outcome::Exhausted);
            v.push(o);
            if stop_now {
                break;
            }
        }
        v
    };

    let exhausted = outcomes.iter().filter(|o| matches!(o.0, Outcome::Exhausted)).count();
    result.branches_exhausted = exhausted + (branches.len() - pending.len());
    result.nodes = nodes.load(Ordering::Relaxed);
    if let Some(grid) = outcomes.into_iter().find_map(|(_, g)| g) {
        let witness = MosaicMatrix::new(n, n, alphabet, grid)?;
        let covered = coverage(&witness, k)?.count();
        assert!(covered >= required, "search witness covers {covered} < {required} targets");
        result.status = SearchStatus::Found;
        result.witness = Some(witness.to_rows());
        result.witness_source = Some("search".into());
    } else if result.branches_exhausted < branches.len() {
        result.status = SearchStatus::BudgetExceeded;
    }
    result.elapsed_seconds = Some(start.elapsed().as_secs_f64());
    Ok(result)
}

/// Searches `n = pigeonhole_min_n(k, a), ...` until a witness turns up or the
/// budget runs out. The first `found` size is `omega(k, a)` when every earlier
/// size came back `exhausted_none` with a sound search.
pub fn min_omnimosaic_n(
    k: usize,
    a: u32,
    budget: SearchBudget,
    opts: &SearchOptions,
) -> Result<Vec<(usize, SearchResult)>> {
    let mut trace = Vec::new();
    let start = pigeonhole_min_n(k as u32, a).max(k as u64) as usize;
    let upper = usize::try_from(construction_upper(k as u32, a)).unwrap_or(usize::MAX);
    for n in start..=upper.max(start) {
        let r = exists_omnimosaic_with(n, k, a, budget, opts)?;
        let status = r.status;
        trace.push((n, r));
        if status != SearchStatus::ExhaustedNone {
            break;
        }
    }
    Ok(trace)
}

/// The letter-occurrence counting test: true iff the targets using a given
/// letter outnumber the placements in an `(n-1)`x`n` matrix,
/// `a^(k^2) - (a-1)^(k^2) > C(n-1,k) C(n,k)`.
pub fn row_letter_necessity(n: u64, k: u32, a: u32) -> bool {
    let with_letter = BigUint::from(a).pow(k * k) - BigUint::from(a - 1).pow(k * k);
    let capacity = binomial_big(n.saturating_sub(1), k as u64) * binomial_big(n, k as u64);
    with_letter > capacity
}

fn relabel_by_first_occurrence(m: &MosaicMatrix) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    m.entries()
        .iter()
        .map(|&e| {
            if map[e as usize] == u8::MAX {
                map[e as usize] = next;
                next += 1;
            }
            map[e as usize]
        })
        .collect()
}

fn sorted_rows(entries: &[u8], cols: usize) -> Vec<u8> {
    let mut rows: Vec<&[u8]> = entries.chunks(cols).collect();
    rows.sort();
    rows.concat()
}

/// Letter relabellings with more used letters than this fall back to
/// alternating relabel/sort until nothing changes.
const EXACT_CANON_LETTERS: usize = 8;

/// Canonical representative under row permutations and letter relabelling:
/// the lexicographically least row-major matrix of the orbit. Its letters
/// first appear as `0, 1, 2, ...` and its rows are sorted.
pub fn canonicalize(m: &MosaicMatrix) -> MosaicMatrix {
    let cols = m.cols();
    let base = relabel_by_first_occurrence(m);
    let used = base.iter().copied().max().map_or(0, |x| x as usize + 1);

    let best = if used <= EXACT_CANON_LETTERS {
        let mut perm: Vec<u8> = (0..used as u8).collect();
        let mut best = sorted_rows(&base, cols);
        loop {
            let relabelled: Vec<u8> = base.iter().map(|&e| perm[e as usize]).collect();
            let cand = sorted_rows(&relabelled, cols);
            if cand < best {
                best = cand;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best
    } else {
        let mut cur = sorted_rows(&base, cols);
        loop {
            let tmp = MosaicMatrix::from_parts_unchecked(m.rows(), cols, m.alphabet(), cur.clone());
            let next = sorted_rows(&relabel_by_first_occurrence(&tmp), cols);
            if next == cur {
                break cur;
            }
            cur = next;
        }
    };
    MosaicMatrix::from_parts_unchecked(m.rows(), cols, m.alphabet(), best)
}

fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Unrestricted enumeration of all `a^(n^2)` matrices; the reference the
/// pruned search is tested against.
pub fn brute_force_exists(n: usize, k: usize, a: u32) -> Result<Option<MosaicMatrix>> {
    let alphabet = Alphabet::new(a)?;
    let total = (a as u64)
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::EnumerationGuard(format!("{a}^({n}^2) matrices")))?;
    let found = (0..total).into_par_iter().find_map_first(|idx| {
        let mut x = idx;
        let entries = (0..n * n)
            .map(|_| {
                let d = (x % a as u64) as u8;
                x /= a as u64;
                d
            })
            .collect();
        let m = MosaicMatrix::from_parts_unchecked(n, n, alphabet, entries);
        coverage(&m, k).ok().filter(CoverageSet::is_full).map(|_| m)
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{apply_symmetry, SymmetryOp};
    use crate::verify::is_omnimosaic;

    fn max_coverage(n: usize, k: usize, a: u32) -> u64 {
        let alphabet = Alphabet::new(a).unwrap();
        let total = (a as u64).pow((n * n) as u32);
        (0..total)
            .into_par_iter()
            .map(|idx| {
                let mut x = idx;
                let entries = (0..n * n)
                    .map(|_| {
                        let d = (x % a as u64) as u8;
                        x /= a as u64;
                        d
                    })
                    .collect();
                let m = MosaicMatrix::from_parts_unchecked(n, n, alphabet, entries);
                coverage(&m, k).unwrap().count()
            })
            .max()
            .unwrap()
    }

    fn seq() -> SearchOptions {
        SearchOptions {
            use_construction: false,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn three_by_three_binary_is_impossible() {
        let r = exists_omnimosaic(3, 2, 2, SearchBudget::default()).unwrap();
        assert_eq!(r.status, SearchStatus::ExhaustedNone);
        assert!(r.sound);
    }

    #[test]
    fn four_by_four_binary_exists() {
        let r = exists_omnimosaic_with(4, 2, 2, SearchBudget::default(), &seq()).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert_eq!(r.witness_source.as_deref(), Some("search"));
        let w = r.witness_matrix().unwrap();
        assert!(is_omnimosaic(&w, 2).unwrap().is_omni);
    }

    #[test]
    fn pruning_agrees_with_brute_force_maximum() {
        for (n, k, a) in [(3, 2, 2), (4, 2, 2), (3, 2, 3), (4, 3, 2), (3, 1, 4), (2, 2, 4)] {
            let best = max_coverage(n, k, a);
            for required in [best.saturating_sub(1), best, best + 1] {
                let r = search_covering(n, k, a, Some(required), SearchBudget::default(), &seq()).unwrap();
                let space = target_space(k, a).unwrap();
                let expect = required.min(space) <= best;
                assert_eq!(r.status == SearchStatus::Found, expect, "n={n} k={k} a={a} t={required}");
                assert_ne!(r.status, SearchStatus::BudgetExceeded);
            }
        }
    }

    #[test]
    fn sorted_rows_and_columns_miss_every_binary_four_by_four() {
        let opts = SearchOptions {
            row_order: true,
            column_order: true,
            ..seq()
        };
        let r = exists_omnimosaic_with(4, 2, 2, SearchBudget::default(), &opts).unwrap();
        assert!(!r.sound);
        assert_eq!(r.status, SearchStatus::ExhaustedNone);
        assert!(brute_force_exists(4, 2, 2).unwrap().is_some());
    }

    #[test]
    fn row_permutation_can_destroy_the_property() {
        let a2 = Alphabet::new(2).unwrap();
        let m = MosaicMatrix::from_rows(a2, &[[1, 0, 1, 0], [0, 0, 1, 1], [1, 1, 1, 0], [0, 0, 0, 0]]).unwrap();
        assert!(is_omnimosaic(&m, 2).unwrap().is_omni);
        assert!(!is_omnimosaic(&canonicalize(&m), 2).unwrap().is_omni);
    }

    #[test]
    fn omega_small_values() {
        let trace = min_omnimosaic_n(2, 2, SearchBudget::default(), &seq()).unwrap();
        assert_eq!(trace.last().unwrap().0, 4);
        assert_eq!(trace.last().unwrap().1.status, SearchStatus::Found);

        let trace = min_omnimosaic_n(1, 2, SearchBudget::default(), &seq()).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].0, 2);
        assert_eq!(trace[0].1.status, SearchStatus::Found);
    }

    #[test]
    fn construction_answers_large_enough_sizes() {
        let r = exists_omnimosaic(7, 2, 3, SearchBudget::nodes(1)).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert_eq!(r.witness_source.as_deref(), Some("construction"));
        assert_eq!(r.nodes, 0);
        assert!(is_omnimosaic(&r.witness_matrix().unwrap(), 2).unwrap().is_omni);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let r = exists_omnimosaic_with(6, 2, 3, SearchBudget::nodes(10), &seq()).unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExceeded);
        assert!(r.witness.is_none());
    }

    #[test]
    fn agrees_with_brute_force() {
        let cases = [
            (1, 1, 2),
            (2, 1, 2),
            (2, 2, 2),
            (3, 1, 2),
            (3, 2, 2),
            (3, 3, 2),
            (4, 1, 2),
            (4, 2, 2),
            (4, 3, 2),
            (2, 1, 3),
            (2, 2, 3),
            (3, 1, 3),
            (3, 2, 3),
            (2, 1, 4),
        ];
        for (n, k, a) in cases {
            let brute = brute_force_exists(n, k, a).unwrap().is_some();
            for parallel in [false, true] {
                let opts = SearchOptions { parallel, ..seq() };
                let r = exists_omnimosaic_with(n, k, a, SearchBudget::default(), &opts).unwrap();
                assert!(r.sound);
                assert_ne!(r.status, SearchStatus::BudgetExceeded);
                assert_eq!(r.status == SearchStatus::Found, brute, "n={n} k={k} a={a}");
            }
        }
    }

    #[test]
    fn parallel_matches_sequential_verdicts() {
        for (n, k, a) in [(4, 2, 2), (3, 2, 3), (4, 3, 2)] {
            let s = exists_omnimosaic_with(n, k, a, SearchBudget::default(), &seq()).unwrap();
            let p = exists_omnimosaic_with(
                n,
                k,
                a,
                SearchBudget::default(),
                &SearchOptions { parallel: true, ..seq() },
            )
            .unwrap();
            assert_eq!(s.status, p.status);
        }
    }

    #[test]
    fn sequential_node_counts_are_reproducible() {
        let a = exists_omnimosaic_with(4, 2, 2, SearchBudget::default(), &seq()).unwrap();
        let b = exists_omnimosaic_with(4, 2, 2, SearchBudget::default(), &seq()).unwrap();
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn checkpoint_skips_exhausted_branches() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.txt");
        let opts = SearchOptions {
            checkpoint: Some(path.clone()),
            ..seq()
        };
        let first = exists_omnimosaic_with(5, 2, 3, SearchBudget::nodes(200_000), &opts).unwrap();
        let logged = std::fs::read_to_string(&path).unwrap_or_default().lines().count();
        assert_eq!(logged, first.branches_exhausted);

        // a checkpoint that lists every branch leaves nothing to do
        let all: Vec<String> = first_rows(5, 3, false).iter().map(|r| row_code(r, 3).to_string()).collect();
        std::fs::write(&path, all.join("\n") + "\n").unwrap();
        let done = exists_omnimosaic_with(5, 2, 3, SearchBudget::default(), &opts).unwrap();
        assert_eq!(done.status, SearchStatus::ExhaustedNone);
        assert_eq!(done.nodes, 0);
    }

    #[test]
    fn letter_counting_examples() {
        // 81 - 16 = 65 > C(4,2) C(5,2) = 60
        assert!(row_letter_necessity(5, 2, 3));
        // 15 vs 18
        assert!(!row_letter_necessity(4, 2, 2));
        // 65 vs 150
        assert!(!row_letter_necessity(6, 2, 3));
    }

    #[test]
    fn canonicalize_examples() {
        let a2 = Alphabet::new(2).unwrap();
        let m = MosaicMatrix::from_rows(a2, &[[1, 1], [0, 0]]).unwrap();
        assert_eq!(canonicalize(&m).to_rows(), vec![vec![0, 0], vec![1, 1]]);

        // one relabel/sort pass is not enough here
        let a3 = Alphabet::new(3).unwrap();
        let m = MosaicMatrix::from_rows(a3, &[[0, 1, 1], [0, 0, 2]]).unwrap();
        let c = canonicalize(&m);
        assert_eq!(canonicalize(&c), c);
        assert_eq!(c.to_rows(), vec![vec![0, 0, 1], vec![0, 2, 2]]);
    }

    #[test]
    fn canonical_form_collapses_orbits() {
        let a = Alphabet::new(3).unwrap();
        let mut s = 11u64;
        let mut rnd = |m: u64| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) % m
        };
        for _ in 0..100 {
            let entries: Vec<u8> = (0..20).map(|_| rnd(3) as u8).collect();
            let m = MosaicMatrix::new(5, 4, a, entries).unwrap();
            let mut rows: Vec<usize> = (0..5).collect();
            for i in (1..5).rev() {
                rows.swap(i, rnd(i as u64 + 1) as usize);
            }
            let letters = [[0u8, 1, 2], [2, 0, 1], [1, 2, 0], [1, 0, 2]][rnd(4) as usize].to_vec();
            let moved = apply_symmetry(&m, &SymmetryOp::RowPermutation(rows)).unwrap();
            let moved = apply_symmetry(&moved, &SymmetryOp::LetterPermutation(letters)).unwrap();
            let c = canonicalize(&m);
            assert_eq!(canonicalize(&moved), c);
            assert_eq!(canonicalize(&c), c);
        }
    }

    #[test]
    fn found_is_monotone_in_n() {
        let r = exists_omnimosaic_with(4, 2, 2, SearchBudget::default(), &seq()).unwrap();
        let w = r.witness_matrix().unwrap();
        let bigger = w.pad_rows_with(5, 0).pad_cols_with(5, 0);
        assert!(is_omnimosaic(&bigger, 2).unwrap().is_omni);
        assert_eq!(
            exists_omnimosaic_with(5, 2, 2, SearchBudget::default(), &seq()).unwrap().status,
            SearchStatus::Found
        );
    }
}
