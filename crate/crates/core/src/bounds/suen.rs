//! Upper bound on the probability that a uniformly random `n`x`n` matrix
//! fails to be an omnimosaic, via Suen's correlation inequality
//!
//! ```text
//! P(target missing) <= exp(-mu + Delta * e^(2 delta))
//! ```
//!
//! with `mu = C(n,k)^2 / a^(k^2)` the expected number of placements of a
//! fixed target, `Delta <= mu n k^3 / a^k` and `delta <= mu 2 k^4 / n^2`.
//! The `Delta` cap only holds when the largest overlap weight sits at
//! `phi(k-1, k)`, which needs `n` inside a window; outside it the report is
//! advisory. A union bound over the `a^(k^2)` targets gives the total.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use super::phi::ln_binomial;

/// Whether `n` sits inside the window where the overlap-weight maximum is
/// known to be `phi(k-1, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preconditions {
    /// `n >= k^2 a / 2 + k - 2`, so `phi(1,1) >= phi(2,1)`.
    pub low_corner_descends: bool,
    /// `n <= a^k / k`, so `phi(k,k) >= phi(k-1,k)`.
    pub top_corner_dominates: bool,
    /// `n <= a^(k-1) / k`, so `phi(k-1,k) >= phi(k-1,k-1)`.
    pub near_top_beats_diagonal: bool,
}

impl Preconditions {
    pub fn evaluate(n: u64, k: u32, a: u32) -> Self {
        let (nf, kf, af) = (n as f64, k as f64, a as f64);
        Self {
            low_corner_descends: 2.0 * nf >= kf * kf * af + 2.0 * kf - 4.0,
            top_corner_dominates: nf * kf <= af.powf(kf),
            near_top_beats_diagonal: nf * kf <= af.powf(kf - 1.0),
        }
    }

    pub fn all(&self) -> bool {
        self.low_corner_descends && self.top_corner_dominates && self.near_top_beats_diagonal
    }
}

/// Log-domain bound report for one `(n, k, a)`.
///
/// Values that overflow the log domain serialize as `null` (e.g. a missing
/// bound of `-inf`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: u64,
    pub k: u32,
    pub a: u32,
    pub log_mu: f64,
    /// `ln(mu n k^3 / a^k)`.
    pub log_delta_cap: f64,
    /// `ln(mu 2 k^4 / n^2)`.
    pub log_delta_small: f64,
    /// `ln` of the per-target missing bound, capped at 0.
    pub log_missing_bound: f64,
    /// `k^2 ln a + log_missing_bound`.
    pub log_total_bound: f64,
    pub certifies_existence: bool,
    pub preconditions: Preconditions,
    /// True when some precondition fails; the numbers are then only indicative.
    pub advisory: bool,
}

pub fn suen_report(n: u64, k: u32, a: u32) -> BoundsReport {
    let (nf, kf, af) = (n as f64, k as f64, a as f64);
    let ln_a = af.ln();
    let log_mu = 2.0 * ln_binomial(nf, kf) - kf * kf * ln_a;
    let log_delta_cap = log_mu + nf.ln() + 3.0 * kf.ln() - kf * ln_a;
    let log_delta_small = log_mu + (2.0 * kf.powi(4)).ln() - 2.0 * nf.ln();

    // exponent = -mu + Delta e^(2 delta) = -mu (1 - f),
    // ln f = ln(Delta / mu) + 2 delta.
    let ln_f = (log_delta_cap - log_mu) + 2.0 * log_delta_small.exp();
    let log_missing_bound = if ln_f >= 0.0 || log_mu == f64::NEG_INFINITY {
        0.0
    } else {
        // -(1 - f) mu, computed as -exp(ln mu + ln(1 - f))
        -(log_mu + (-ln_f.exp_m1()).ln()).exp()
    };
    let log_total_bound = kf * kf * ln_a + log_missing_bound;
    let preconditions = Preconditions::evaluate(n, k, a);
    BoundsReport {
        n,
        k,
        a,
        log_mu,
        log_delta_cap,
        log_delta_small,
        log_missing_bound,
        log_total_bound,
        certifies_existence: log_total_bound < 0.0,
        preconditions,
        advisory: !preconditions.all(),
    }
}

/// Threshold side lengths for the random construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    /// `ceil(k + (k a^(k/2)/e) (2 pi k)^(1/2k) (1 + 1/12k)^(1/k)
    ///   exp(ln k / k + ln ln a / 2k))`, with the vanishing correction term
    /// dropped. This is an estimate, not a certified value.
    pub estimate: u64,
    /// `ceil((k a^(k/2)/e) (1 + 2 ln k / k))`.
    pub theorem_form: u64,
}

fn ceil_u64(x: f64) -> u64 {
    if x >= u64::MAX as f64 {
        u64::MAX
    } else {
        x.ceil() as u64
    }
}

pub fn suen_threshold_n(k: u32, a: u32) -> ThresholdEstimate {
    let (kf, af) = (k as f64, a as f64);
    let base = kf * af.powf(kf / 2.0) / E;
    let stirling = (2.0 * PI * kf).powf(1.0 / (2.0 * kf)) * (1.0 + 1.0 / (12.0 * kf)).powf(1.0 / kf);
    // ln ln 2 < 0; that is fine.
    let tail = (kf.ln() / kf + af.ln().ln() / (2.0 * kf)).exp();
    ThresholdEstimate {
        estimate: ceil_u64(kf + base * stirling * tail),
        theorem_form: ceil_u64(base * (1.0 + 2.0 * kf.ln() / kf)),
    }
}
