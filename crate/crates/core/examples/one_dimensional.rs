//! The one-dimensional case: sequences containing every word of length `k`
//! as a subsequence.
//!
//! Usage: `cargo run --example one_dimensional [text-file]`

use omnikit::bounds::{oned_ex_threshold_ratio, oned_expected_missing, oned_threshold};
use omnikit::experiments::{oned_count_collections, oned_is_omni, oned_missing_count, text_to_sequence};

fn main() {
    for a in [2, 3, 4, 26] {
        println!(
            "a={a}: typical length per letter of k {:.3}, expectation threshold {:.3}",
            oned_threshold(a),
            oned_ex_threshold_ratio(a)
        );
    }
    let k = 8;
    for n in [16u64, 24, 32, 36, 48] {
        println!("n={n} k={k}: E(missing words) = {:.4}", oned_expected_missing(n, k, 2));
    }

    let seq = [0u8, 1, 1, 0, 0, 1, 0, 1];
    println!(
        "{seq:?}: {} collections, omni for k=3: {}, missing 3-words: {}",
        oned_count_collections(&seq, 2),
        oned_is_omni(&seq, 3, 2),
        oned_missing_count(&seq, 3, 2)
    );

    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("read text");
        let seq = text_to_sequence(&text);
        println!(
            "{path}: {} letters, contains every word of length {} over a-z",
            seq.len(),
            oned_count_collections(&seq, 26)
        );
    }
}
