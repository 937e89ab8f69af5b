//! Closed-form quantities: counting lower bounds, the construction upper
//! bound, the overlap weights `phi(r, c)`, correlation-inequality estimates
//! for uniformly random matrices, and one-dimensional thresholds.
//!
//! Every logarithm here is natural.

mod lemmas;
mod oned;
mod phi;
mod suen;

use std::f64::consts::{E, SQRT_2};

use num_bigint::BigUint;

use crate::combin::binomial_big;

pub use lemmas::{check_lemma_properties, LemmaProperty, LemmaReport, LemmaVerdict};
pub use oned::{
    oned_ex_threshold_ratio, oned_expected_missing, oned_expected_missing_exact, oned_threshold,
};
pub use phi::{ln_binomial, ln_big, ln_phi, phi_exact};
pub use suen::{suen_report, suen_threshold_n, BoundsReport, Preconditions, ThresholdEstimate};

/// Smallest `n` with `C(n, k)^2 >= a^(k^2)`: fewer rows and columns cannot
/// host every target even once.
pub fn pigeonhole_min_n(k: u32, a: u32) -> u64 {
    let need = BigUint::from(a).pow(k * k);
    let enough = |n: u64| {
        let c = binomial_big(n, k as u64);
        &c * &c >= need
    };
    let mut lo = (k as u64).max(1);
    if enough(lo) {
        return lo;
    }
    let mut hi = lo * 2;
    while !enough(hi) {
        lo = hi;
        hi *= 2;
    }
    // invariant: !enough(lo), enough(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if enough(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `k a^(k/2) / e`, the asymptotic form of the counting bound.
pub fn asymptotic_lower(k: u32, a: u32) -> f64 {
    k as f64 * (a as f64).powf(k as f64 / 2.0) / E
}

/// `ceil(k/2) a^ceil(k/2) + floor(k/2) a^floor(k/2)`, saturating.
pub fn construction_upper(k: u32, a: u32) -> u128 {
    let (lo, hi) = (k / 2, k.div_ceil(2));
    let term = |m: u32| (m as u128).saturating_mul((a as u128).saturating_pow(m));
    term(hi).saturating_add(term(lo))
}

/// `(sqrt 2 / e) k 2^(k/2)`, the counting bound for induced-universal graphs.
pub fn ramsey_n0(k: u32) -> f64 {
    SQRT_2 / E * k as f64 * 2f64.powf(k as f64 / 2.0)
}
