//! One-dimensional analogue: length-`n` sequences containing every length-`k`
//! word as a (scattered) subsequence.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combin::binomial_big;

/// `a H(a)` with `H(a) = 1 + 1/2 + ... + 1/a`: the ratio `n/k` past which a
/// random sequence is `k`-omni with high probability.
pub fn oned_threshold(a: u32) -> f64 {
    a as f64 * (1..=a).map(|i| 1.0 / i as f64).sum::<f64>()
}

/// Expected number of missing `k`-words in a uniform length-`n` sequence,
/// `a^k P(Bin(n, 1/a) <= k-1)`.
///
/// A fixed word is missing iff its greedy left-to-right match completes
/// fewer than `k` letters; each position advances the match with
/// probability `1/a` regardless of the word.
pub fn oned_expected_missing(n: u64, k: u32, a: u32) -> f64 {
    let (af, nf) = (a as f64, n as f64);
    let p: f64 = 1.0 / af;
    let log_q = (1.0 - p).ln();
    let cdf: f64 = (0..k as u64)
        .filter(|&i| i <= n)
        .map(|i| {
            let i = i as f64;
            (super::ln_binomial(nf, i) + i * p.ln() + (nf - i) * log_q).exp()
        })
        .sum();
    af.powi(k as i32) * cdf
}

/// Exact rational form of [`oned_expected_missing`]:
/// `a^k sum_{i<k} C(n,i) (a-1)^(n-i) / a^n`.
pub fn oned_expected_missing_exact(n: u64, k: u32, a: u32) -> BigRational {
    let mut num = BigUint::zero();
    for i in 0..(k as u64).min(n + 1) {
        num += binomial_big(n, i) * BigUint::from(a - 1).pow((n - i) as u32);
    }
    num *= BigUint::from(a).pow(k);
    BigRational::new(num.into(), BigUint::from(a).pow(n as u32).into())
}

fn kl_bernoulli(x: f64, p: f64) -> f64 {
    let term = |u: f64, v: f64| if u == 0.0 { 0.0 } else { u * (u / v).ln() };
    term(x, p) + term(1.0 - x, 1.0 - p)
}

/// The ratio `r = n/k > a` at which the expected number of missing words
/// switches from growing to vanishing: the root of
/// `ln a = r D(1/r || 1/a)`, found by bisection to within `1e-6`.
pub fn oned_ex_threshold_ratio(a: u32) -> f64 {
    let af = a as f64;
    let f = |r: f64| r * kl_bernoulli(1.0 / r, 1.0 / af) - af.ln();
    let mut lo = af;
    let mut hi = 2.0 * af;
    while f(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
