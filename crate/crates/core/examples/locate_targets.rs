//! Placing targets in the grid construction directly, without searching.
//!
//! Usage: `cargo run --example locate_targets [k] [a] [code]`

use omnikit::{
    build_mosaic, canonical_grid, decode_target, locate, verify_placement, Alphabet, TargetCode,
};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let k = *args.first().unwrap_or(&3) as usize;
    let a = Alphabet::new(*args.get(1).unwrap_or(&2) as u32).expect("alphabet");
    let space = (a.size() as u64).pow((k * k) as u32);
    let code = args.get(2).copied().unwrap_or(space / 3);

    let grid = canonical_grid(k);
    let (m, map) = build_mosaic(&grid, a).expect("build");
    let target = decode_target(TargetCode::new(code, k, a).expect("code")).unwrap();
    let p = locate(&map, &grid, &target).expect("locate");
    println!("target {code}:\n{target}");
    println!("rows {:?}\ncolumns {:?}", p.row_idx, p.col_idx);
    println!("confirmed: {}", verify_placement(&m, &p, &target));

    let all = (0..space.min(1 << 16)).all(|c| {
        let t = decode_target(TargetCode::new(c, k, a).unwrap()).unwrap();
        verify_placement(&m, &locate(&map, &grid, &t).unwrap(), &t)
    });
    println!("first {} targets all located: {all}", space.min(1 << 16));
}
