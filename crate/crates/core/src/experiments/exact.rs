use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combin::combinations;
use crate::error::{Error, Result};
use crate::experiments::montecarlo::{stats_from_moments, MissingStats};
use crate::matrix::{Alphabet, MosaicMatrix};
use crate::target::{decode_unchecked, encode_target, target_space};
use crate::verify::{cover_into, CoverageSet};

/// Largest number of matrices `exact_enumeration` walks through.
pub const EXACT_GUARD: u64 = 1 << 25;

/// Exact tallies over all `a^(n^2)` matrices. Probabilities are the counts
/// divided by `total`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCounts {
    pub n: usize,
    pub k: usize,
    pub a: u32,
    pub total: u64,
    pub omni: u64,
    /// Sum over all matrices of the number of missing targets.
    pub missing_sum: u128,
    pub missing_sq_sum: u128,
    /// `per_target[code]`: matrices in which target `code` is missing.
    pub per_target: Vec<u64>,
}

impl ExactCounts {
    fn ratio(&self, num: u128) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(self.total))
    }

    pub fn p_omni(&self) -> BigRational {
        self.ratio(self.omni as u128)
    }

    pub fn ex_missing(&self) -> BigRational {
        self.ratio(self.missing_sum)
    }

    pub fn p_missing(&self, code: u64) -> BigRational {
        self.ratio(self.per_target[code as usize] as u128)
    }

    /// Same shape as a Monte-Carlo estimate, with zero standard errors.
    pub fn to_stats(&self) -> MissingStats {
        let mut s = stats_from_moments(
            self.n,
            self.k,
            self.a,
            self.total,
            self.omni,
            self.missing_sum,
            self.missing_sq_sum,
        );
        s.p_omni_stderr = 0.0;
        s.ex_missing_stderr = 0.0;
        s.per_target = Some(
            self.per_target
                .iter()
                .map(|&c| c as f64 / self.total as f64)
                .collect(),
        );
        s
    }
}

fn matrix_from_index(mut idx: u64, n: usize, a: u32, out: &mut [u8]) {
    for cell in out.iter_mut().take(n * n) {
        *cell = (idx % a as u64) as u8;
        idx /= a as u64;
    }
}

/// Walks all `a^(n^2)` matrices and counts omnimosaics and missing targets.
pub fn exact_enumeration(n: usize, k: usize, a: u32) -> Result<ExactCounts> {
    Alphabet::new(a)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let total = (a as u64)
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= EXACT_GUARD)
        .ok_or_else(|| Error::EnumerationGuard(format!("{a}^({n}^2) matrices exceed 2^25")))?;
    let space = target_space(k, a)
        .filter(|&s| s <= 1 << 20)
        .ok_or(Error::CoverageGuard { k, a, guard_bits: 20 })?;

    struct Acc {
        omni: u64,
        missing: u128,
        missing_sq: u128,
        per_target: Vec<u64>,
    }
    let empty = || Acc {
        omni: 0,
        missing: 0,
        missing_sq: 0,
        per_target: vec![0; space as usize],
    };
    let acc = (0..total)
        .into_par_iter()
        .fold(
            || (empty(), CoverageSet::empty(k, a, space), vec![0u8; n * n]),
            |(mut acc, mut set, mut buf), idx| {
                matrix_from_index(idx, n, a, &mut buf);
                set.clear();
                cover_into(&buf, n, n, &mut set);
                let missing = (space - set.count()) as u128;
                acc.omni += (missing == 0) as u64;
                acc.missing += missing;
                acc.missing_sq += missing * missing;
                for code in set.missing() {
                    acc.per_target[code as usize] += 1;
                }
                (acc, set, buf)
            },
        )
        .map(|(acc, _, _)| acc)
        .reduce(empty, |mut x, y| {
            x.omni += y.omni;
            x.missing += y.missing;
            x.missing_sq += y.missing_sq;
            x.per_target.iter_mut().zip(&y.per_target).for_each(|(p, q)| *p += q);
            x
        });
    Ok(ExactCounts {
        n,
        k,
        a,
        total,
        omni: acc.omni,
        missing_sum: acc.missing,
        missing_sq_sum: acc.missing_sq,
        per_target: acc.per_target,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub code: u64,
    pub target: Vec<Vec<u8>>,
    pub missing_count: u64,
    pub p_missing: f64,
    pub monochromatic: bool,
}

/// Exact per-target probability of being missing, most likely first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureTable {
    pub n: usize,
    pub k: usize,
    pub a: u32,
    pub total: u64,
    pub rows: Vec<ConjectureRow>,
    /// Every target attaining the maximum is monochromatic.
    pub max_is_monochromatic: bool,
    /// Largest `P(T missing) / P(J missing)` over targets `T`, `J` constant.
    pub max_ratio_to_monochromatic: Option<f64>,
    /// Probabilities are equal within every letter-permutation class.
    pub letter_invariant: bool,
    /// Probabilities are equal for every target and its transpose.
    pub transpose_invariant: bool,
    /// Table total equals the exact expected number of missing targets.
    pub sums_to_expectation: bool,
}

fn permutations(a: u32) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x as u8);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; a as usize], &mut out);
    out
}

pub fn conjecture_table(n: usize, k: usize, a: u32) -> Result<ConjectureTable> {
    let counts = exact_enumeration(n, k, a)?;
    let alphabet = Alphabet::new(a)?;
    let decode = |code: u64| decode_unchecked(code, k, alphabet);
    let code_of = |m: &MosaicMatrix| encode_target(m).expect("target in range").code;

    let mut rows: Vec<ConjectureRow> = counts
        .per_target
        .iter()
        .enumerate()
        .map(|(code, &c)| {
            let t = decode(code as u64);
            let first = t.entries()[0];
            ConjectureRow {
                code: code as u64,
                monochromatic: t.entries().iter().all(|&e| e == first),
                target: t.to_rows(),
                missing_count: c,
                p_missing: c as f64 / counts.total as f64,
            }
        })
        .collect();
    rows.sort_by(|x, y| y.missing_count.cmp(&x.missing_count).then(x.code.cmp(&y.code)));

    let max = rows.first().map_or(0, |r| r.missing_count);
    let max_is_monochromatic = rows
        .iter()
        .take_while(|r| r.missing_count == max)
        .all(|r| r.monochromatic);
    let mono = counts.per_target[0];
    let max_ratio_to_monochromatic = (mono > 0).then(|| max as f64 / mono as f64);

    let perms = if a <= 6 { permutations(a) } else { Vec::new() };
    let mut letter_invariant = true;
    let mut transpose_invariant = true;
    for code in 0..counts.per_target.len() as u64 {
        let t = decode(code);
        let c = counts.per_target[code as usize];
        for p in &perms {
            let entries = t.entries().iter().map(|&e| p[e as usize]).collect();
            let moved = MosaicMatrix::from_parts_unchecked(k, k, alphabet, entries);
            letter_invariant &= counts.per_target[code_of(&moved) as usize] == c;
        }
        let tr = (0..k * k).map(|i| t.entries()[(i % k) * k + i / k]).collect();
        let tr = MosaicMatrix::from_parts_unchecked(k, k, alphabet, tr);
        transpose_invariant &= counts.per_target[code_of(&tr) as usize] == c;
    }
    let table_sum: u128 = counts.per_target.iter().map(|&c| c as u128).sum();

    Ok(ConjectureTable {
        n,
        k,
        a,
        total: counts.total,
        rows,
        max_is_monochromatic,
        max_ratio_to_monochromatic,
        letter_invariant,
        transpose_invariant,
        sums_to_expectation: table_sum == counts.missing_sum,
    })
}

/// Exact inputs of the correlation inequality for a monochromatic target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuenInputs {
    pub n: usize,
    pub k: usize,
    pub a: u32,
    #[serde(skip)]
    pub mu_exact: BigRational,
    #[serde(skip)]
    pub delta_pairs_exact: BigRational,
    #[serde(skip)]
    pub delta_max_exact: BigRational,
    pub mu: f64,
    /// Sum over unordered overlapping placement pairs of `P(both show J)`.
    pub delta_pairs: f64,
    /// Largest sum, over the placements overlapping a fixed one, of
    /// `P(that placement shows J)`.
    pub delta_max: f64,
    /// Pairs counted by shared (rows, columns).
    pub overlap_counts: Vec<(usize, usize, u64)>,
}

impl SuenInputs {
    /// `exp(-mu + delta_pairs * e^(2 delta_max))`.
    pub fn upper_bound(&self) -> f64 {
        (-self.mu + self.delta_pairs * (2.0 * self.delta_max).exp()).exp()
    }
}

fn pow_rational(a: u32, e: usize) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(a).pow(e as u32))
}

fn shared(x: &[usize], y: &[usize]) -> usize {
    x.iter().filter(|v| y.contains(v)).count()
}

pub fn exact_suen_inputs(n: usize, k: usize, a: u32) -> Result<SuenInputs> {
    Alphabet::new(a)?;
    if k == 0 || n < k || n > 8 || k > 3 {
        return Err(Error::EnumerationGuard(format!(
            "pair enumeration supports 1 <= k <= 3, k <= n <= 8; got n={n}, k={k}"
        )));
    }
    let sets = combinations(n, k);
    let m = sets.len();
    // overlaps between index sets, by size of the intersection
    let inter: Vec<Vec<usize>> = sets
        .iter()
        .map(|x| sets.iter().map(|y| shared(x, y)).collect())
        .collect();
    let mut by_overlap: HashMap<(usize, usize), u64> = HashMap::new();
    let mut max_neighbours = 0u64;
    for r1 in 0..m {
        for c1 in 0..m {
            let mut neighbours = 0u64;
            for r2 in 0..m {
                let r = inter[r1][r2];
                if r == 0 {
                    continue;
                }
                for (c2, &c) in inter[c1].iter().enumerate() {
                    if c == 0 || (r1 == r2 && c1 == c2) {
                        continue;
                    }
                    neighbours += 1;
                    if (r2, c2) > (r1, c1) {
                        *by_overlap.entry((r, c)).or_default() += 1;
                    }
                }
            }
            max_neighbours = max_neighbours.max(neighbours);
        }
    }
    let mut overlap_counts: Vec<(usize, usize, u64)> =
        by_overlap.into_iter().map(|((r, c), cnt)| (r, c, cnt)).collect();
    overlap_counts.sort_unstable();

    let kk = k * k;
    let mu_exact = BigRational::from_integer(BigInt::from((m * m) as u64)) * pow_rational(a, kk);
    let mut delta_pairs_exact = BigRational::zero();
    for &(r, c, cnt) in &overlap_counts {
        delta_pairs_exact += BigRational::from_integer(BigInt::from(cnt)) * pow_rational(a, 2 * kk - r * c);
    }
    let delta_max_exact = BigRational::from_integer(BigInt::from(max_neighbours)) * pow_rational(a, kk);
    let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
    Ok(SuenInputs {
        n,
        k,
        a,
        mu: f(&mu_exact),
        delta_pairs: f(&delta_pairs_exact),
        delta_max: f(&delta_max_exact),
        mu_exact,
        delta_pairs_exact,
        delta_max_exact,
        overlap_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_omnimosaic;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn pigeonhole_cases_are_never_omni() {
        for n in [2, 3] {
            let c = exact_enumeration(n, 2, 2).unwrap();
            assert_eq!(c.omni, 0);
            assert!(c.p_omni().is_zero());
        }
    }

    #[test]
    fn four_by_four_binary_counts() {
        let c = exact_enumeration(4, 2, 2).unwrap();
        assert_eq!(c.total, 65536);
        // independent count with the public verifier
        let a = Alphabet::new(2).unwrap();
        let mut omni = 0;
        let mut missing = 0u128;
        for idx in 0..65536u64 {
            let entries = (0..16).map(|i| ((idx >> i) & 1) as u8).collect();
            let m = MosaicMatrix::new(4, 4, a, entries).unwrap();
            let r = is_omnimosaic(&m, 2).unwrap();
            omni += r.is_omni as u64;
            missing += (r.targets - r.covered) as u128;
        }
        assert_eq!(c.omni, omni);
        assert!(omni > 0);
        assert_eq!(c.missing_sum, missing);
        let per: u128 = c.per_target.iter().map(|&x| x as u128).sum();
        assert_eq!(per, c.missing_sum);
        assert_eq!(c.ex_missing(), rat(missing as i64, 65536));
    }

    #[test]
    fn guard_rejects_big_spaces() {
        assert!(matches!(exact_enumeration(6, 2, 2), Err(Error::EnumerationGuard(_))));
    }

    #[test]
    fn conjecture_table_symmetries() {
        for (n, a) in [(3, 2), (4, 2), (3, 3)] {
            let t = conjecture_table(n, 2, a).unwrap();
            assert_eq!(t.rows.len() as u64, (a as u64).pow(4));
            assert!(t.letter_invariant && t.transpose_invariant && t.sums_to_expectation);
            assert!(t.rows.windows(2).all(|w| w[0].missing_count >= w[1].missing_count));
        }
    }

    #[test]
    fn suen_inputs_small_case() {
        let s = exact_suen_inputs(4, 2, 2).unwrap();
        assert_eq!(s.mu_exact, rat(36, 16));
        // a placement meets 24 others: 6*6 minus itself minus the 11 disjoint ones
        assert_eq!(s.delta_max_exact, rat(24, 16));
        assert_eq!(s.delta_pairs_exact, rat(9, 2));
        let pairs: u64 = s.overlap_counts.iter().map(|x| x.2).sum();
        assert_eq!(pairs, 36 * 24 / 2);
    }

    #[test]
    fn suen_pairs_below_cap_in_window() {
        // n k^3 / a^k cap from the lemma chain, where its preconditions hold
        for (n, k, a) in [(8, 2, 3), (6, 2, 3), (8, 3, 3)] {
            let s = exact_suen_inputs(n, k, a).unwrap();
            let cap = s.mu * (n * k * k * k) as f64 / (a as f64).powi(k as i32);
            let pre = crate::bounds::Preconditions::evaluate(n as u64, k as u32, a);
            if pre.all() {
                assert!(s.delta_pairs <= cap, "{s:?} cap {cap}");
            }
        }
    }

    #[test]
    fn suen_inequality_holds_against_enumeration() {
        for n in [4, 5] {
            if (2u64).pow((n * n) as u32) > EXACT_GUARD {
                continue;
            }
            let s = exact_suen_inputs(n, 2, 2).unwrap();
            let c = exact_enumeration(n, 2, 2).unwrap();
            let p = c.p_missing(0).to_f64().unwrap();
            assert!(s.upper_bound() >= p);
        }
    }
}
