//! Explicit omnimosaics from grid diagrams, with their sizes next to the
//! counting lower bound.
//!
//! Usage: `cargo run --example construct_square [k] [a]`

use omnikit::bounds::{asymptotic_lower, construction_upper, pigeonhole_min_n};
use omnikit::{
    build_mosaic, canonical_grid, higher_dim_side_estimate, is_omnimosaic, square_omnimosaic, Alphabet,
};

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let k = *args.first().unwrap_or(&3) as usize;
    let a = Alphabet::new(*args.get(1).unwrap_or(&2)).expect("alphabet");

    let grid = canonical_grid(k);
    println!("grid diagram for k={k} (H: letter read along the row, V: along the column)");
    for i in 0..k {
        let row: String = (0..k).map(|j| format!("{:?}", grid.cell(i, j))).collect();
        println!("  {row}");
    }
    let (m, map) = build_mosaic(&grid, a).expect("build");
    println!("row blocks {:?}, column blocks {:?}", map.row_offsets, map.col_offsets);
    println!("{}x{} matrix", m.rows(), m.cols());

    let sq = square_omnimosaic(k, a).expect("square");
    let report = is_omnimosaic(&sq, k).expect("verify");
    println!(
        "square version: {}x{}, covers {}/{} targets",
        sq.rows(),
        sq.cols(),
        report.covered,
        report.targets
    );
    if sq.rows() <= 12 {
        print!("{sq}");
    }

    println!("\n k  a  lower(asym)  pigeonhole  construction");
    for k in 1..=8u32 {
        for a in 2..=3u32 {
            println!(
                "{k:>2} {a:>2} {:>12.2} {:>11} {:>13}",
                asymptotic_lower(k, a),
                pigeonhole_min_n(k, a),
                construction_upper(k, a)
            );
        }
    }
    for d in 2..=4 {
        let side = higher_dim_side_estimate(k, a.size(), d).expect("estimate");
        println!("d={d}: side about {side:.1}");
    }
}
