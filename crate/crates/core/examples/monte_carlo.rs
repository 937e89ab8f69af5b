//! Random matrices: how often they are omnimosaics and how many targets they
//! miss, against the exact answer for 4x4 binary matrices.

use num_traits::ToPrimitive;
use omnikit::experiments::{estimate, exact_enumeration, sweep, ExperimentConfig};

fn main() {
    let exact = exact_enumeration(4, 2, 2).expect("enumeration");
    let est = estimate(&ExperimentConfig::new(4, 2, 2, 100_000, 1)).expect("estimate");
    println!(
        "4x4, k=2, a=2: exact P(omni) = {} = {:.5}, estimate {:.5} +- {:.5}",
        exact.p_omni(),
        exact.p_omni().to_f64().unwrap(),
        est.p_omni_hat,
        est.p_omni_stderr
    );
    println!(
        "exact E(missing) = {} = {:.4}, estimate {:.4} +- {:.4}",
        exact.ex_missing(),
        exact.ex_missing().to_f64().unwrap(),
        est.ex_missing_hat,
        est.ex_missing_stderr
    );

    println!("\nn,p_omni,stderr,ex_missing,stderr");
    for s in sweep(&[4, 5, 6, 7, 8, 10, 12], 2, 2, 20_000, 7).expect("sweep") {
        println!(
            "{},{:.4},{:.4},{:.4},{:.4}",
            s.n, s.p_omni_hat, s.p_omni_stderr, s.ex_missing_hat, s.ex_missing_stderr
        );
    }
}
