use num_bigint::BigUint;
use statrs::function::gamma::ln_gamma;

use crate::combin::binomial_big;

/// `ln C(n, k)` through the log-gamma function.
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    if k < 0.0 || k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// Natural log of an arbitrary-size positive integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        let digits = x.to_u64_digits();
        let mut v = 0f64;
        for d in digits.iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        return v.ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let top = top.to_u64_digits().first().copied().unwrap_or(0) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln phi(r, c)` with
/// `phi(r, c) = C(k,r) C(k,c) C(n,k-r) C(n,k-c) a^(rc)`,
/// the weight of placement pairs sharing `r` rows and `c` columns.
pub fn ln_phi(r: u32, c: u32, n: u64, k: u32, a: u32) -> f64 {
    let (kf, nf) = (k as f64, n as f64);
    ln_binomial(kf, r as f64)
        + ln_binomial(kf, c as f64)
        + ln_binomial(nf, (k - r) as f64)
        + ln_binomial(nf, (k - c) as f64)
        + (r as f64 * c as f64) * (a as f64).ln()
}

pub fn phi_exact(r: u32, c: u32, n: u64, k: u32, a: u32) -> BigUint {
    let k64 = k as u64;
    binomial_big(k64, r as u64)
        * binomial_big(k64, c as u64)
        * binomial_big(n, k64 - r as u64)
        * binomial_big(n, k64 - c as u64)
        * BigUint::from(a).pow(r * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        assert_eq!(phi_exact(1, 1, 10, 3, 2), BigUint::from(36450u32));
        assert!((ln_phi(1, 1, 10, 3, 2) - 36450f64.ln()).abs() < 1e-10);
        // boundary probe: only the a^(k^2) factor survives
        assert_eq!(phi_exact(4, 4, 9, 4, 3), BigUint::from(3u32).pow(16));
    }

    #[test]
    fn near_top_corner_closed_form() {
        for (n, k, a) in [(10u64, 3u32, 2u32), (20, 5, 3), (40, 6, 2)] {
            let want = BigUint::from(n) * k * BigUint::from(a).pow(k * (k - 1));
            assert_eq!(phi_exact(k - 1, k, n, k, a), want);
        }
    }

    #[test]
    fn log_matches_exact() {
        for n in 1..=30u64 {
            for k in 1..=5u32 {
                if (k as u64) > n {
                    continue;
                }
                for a in 2..=4u32 {
                    for r in 1..=k {
                        for c in 1..=k {
                            let exact = ln_big(&phi_exact(r, c, n, k, a));
                            let approx = ln_phi(r, c, n, k, a);
                            let tol = 1e-9 * exact.abs().max(1.0);
                            assert!(
                                (exact - approx).abs() <= tol,
                                "n={n} k={k} a={a} r={r} c={c}: {exact} vs {approx}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ln_big_handles_wide_values() {
        let x = BigUint::from(3u32).pow(2000);
        assert!((ln_big(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9 * 2000.0);
        assert_eq!(ln_big(&BigUint::from(1u32)), 0.0);
    }
}
