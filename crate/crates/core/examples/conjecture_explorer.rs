//! Which target is most likely to be missing from a random matrix? Exact
//! answers for tiny sizes, plus the exact inputs of the correlation bound.

use num_traits::ToPrimitive;
use omnikit::experiments::{conjecture_table, exact_enumeration, exact_suen_inputs};

fn main() {
    for (n, k, a) in [(3, 2, 2), (4, 2, 2), (5, 2, 2), (3, 2, 3)] {
        let t = conjecture_table(n, k, a).expect("table");
        println!(
            "n={n} k={k} a={a}: max at a constant target = {}, max ratio to constant = {:?}",
            t.max_is_monochromatic, t.max_ratio_to_monochromatic
        );
        for row in t.rows.iter().take(4) {
            println!("  {:?}  P(missing) = {:.5}", row.target, row.p_missing);
        }
    }

    let s = exact_suen_inputs(4, 2, 2).expect("inputs");
    let p = exact_enumeration(4, 2, 2).unwrap().p_missing(0).to_f64().unwrap();
    println!(
        "\n4x4 binary, constant target: mu = {}, Delta = {}, delta = {}",
        s.mu_exact, s.delta_pairs_exact, s.delta_max_exact
    );
    println!("bound {:.3e} vs exact P(missing) {p:.5}", s.upper_bound());
}
