//! The classic 4x4 binary omnimosaic: check it, find a few targets in it and
//! show that a 3x3 matrix can never work.

use omnikit::{
    contains_target, is_omnimosaic, parse_matrix, serialize_matrix, Alphabet, MosaicMatrix,
};

fn main() {
    let text = "omnimosaic v1\n4 4 2\n0 1 0 1\n1 0 1 0\n0 1 0 0\n0 1 1 1\n";
    let m = parse_matrix(text).expect("parse");
    let report = is_omnimosaic(&m, 2).expect("verify");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let a = Alphabet::new(2).unwrap();
    for rows in [[[0u8, 0], [0, 0]], [[1, 1], [1, 1]], [[0, 1], [1, 0]]] {
        let t = MosaicMatrix::from_rows(a, &rows).unwrap();
        let p = contains_target(&m, &t).unwrap().expect("omnimosaic contains every target");
        println!("{rows:?} at rows {:?}, columns {:?}", p.row_idx, p.col_idx);
    }

    // 9 placements cannot show 16 targets
    let small = MosaicMatrix::from_rows(a, &[[0, 1, 0], [1, 0, 1], [0, 1, 1]]).unwrap();
    let r = is_omnimosaic(&small, 2).unwrap();
    println!("3x3: {}/{} targets, missing codes {:?}", r.covered, r.targets, r.missing_sample);
    print!("{}", serialize_matrix(&small));
}
