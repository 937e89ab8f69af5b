//! Exact values of omega(k, a) for tiny parameters.
//!
//! Usage: `cargo run --release --example search_small_omega [k] [a] [max_seconds]`

use std::time::Duration;

use omnikit::search::{min_omnimosaic_n, SearchBudget, SearchOptions, SearchStatus};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let a: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let secs: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(600);

    let budget = SearchBudget {
        max_nodes: u64::MAX,
        max_time: Duration::from_secs(secs),
    };
    let opts = SearchOptions {
        parallel: true,
        ..SearchOptions::default()
    };
    let trace = min_omnimosaic_n(k, a, budget, &opts).expect("search");
    for (n, r) in &trace {
        println!(
            "n={n}: {:?} after {} nodes in {:.2}s",
            r.status,
            r.nodes,
            r.elapsed_seconds.unwrap_or(0.0)
        );
        if let Some(w) = r.witness_matrix() {
            print!("{w}");
        }
    }
    match trace.last() {
        Some((n, r)) if r.status == SearchStatus::Found => println!("omega({k},{a}) = {n}"),
        _ => println!("omega({k},{a}) undetermined within budget"),
    }
}
