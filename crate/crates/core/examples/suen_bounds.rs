//! Where random matrices become omnimosaics: the counting lower bound, the
//! threshold estimate and what the correlation bound certifies.

use omnikit::bounds::{asymptotic_lower, pigeonhole_min_n, suen_report, suen_threshold_n};

fn main() {
    let a = 2;
    println!("  k  pigeonhole   estimate  ratio   theorem_form  certifies(est)  certifies(thm)");
    for k in [10u32, 20, 30, 40, 50, 60, 80, 100] {
        let t = suen_threshold_n(k, a);
        let ratio = t.estimate as f64 / asymptotic_lower(k, a);
        let est = suen_report(t.estimate, k, a);
        let thm = suen_report(t.theorem_form, k, a);
        println!(
            "{k:>3} {:>11} {:>10} {ratio:>6.3} {:>14} {:>15} {:>15}",
            pigeonhole_min_n(k, a),
            t.estimate,
            t.theorem_form,
            est.certifies_existence,
            thm.certifies_existence
        );
    }

    let k = 60;
    let t = suen_threshold_n(k, a);
    let r = suen_report(t.theorem_form, k, a);
    println!("\n{}", serde_json::to_string_pretty(&r).unwrap());
}
