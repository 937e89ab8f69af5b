//! Exact checks of the shape of the overlap weight `phi(r, c)` that the
//! correlation bound relies on.

use omnikit::bounds::{check_lemma_properties, ln_phi, LemmaProperty};

fn main() {
    for (n, k, a) in [(400u64, 12u32, 2u32), (700, 16, 2), (300, 8, 3), (3000, 10, 3)] {
        let report = check_lemma_properties(n, k, a);
        println!("n={n} k={k} a={a}: all gating checks pass = {}", report.all_pass());
        for p in LemmaProperty::ALL {
            let v = report.verdict(p);
            let status = match v.holds {
                None => "outside window".to_string(),
                Some(true) => "holds".to_string(),
                Some(false) => format!("fails at {:?}", v.counterexample),
            };
            println!("  {p:?}: {status}");
        }
    }

    let (n, k, a) = (700u64, 16u32, 2u32);
    println!("\nln phi(r, c) for n={n} k={k} a={a}, rows r, columns c = 1, 4, 8, 12, 15, 16");
    for r in [1, 4, 8, 12, 15, 16] {
        let row: Vec<String> = [1, 4, 8, 12, 15, 16]
            .iter()
            .map(|&c| format!("{:>9.2}", ln_phi(r, c, n, k, a)))
            .collect();
        println!("r={r:>2} {}", row.join(""));
    }
}
