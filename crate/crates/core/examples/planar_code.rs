//! PLANAR_CODE output of candidate lists and canonical codes.
//!
//! ```text
//! cargo run --release --example planar_code -- 7 /tmp/l7.pc
//! ```

use sphere_contact::plane_graph::{canonical_code, generate_candidates, read_planar_code, write_planar_code};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let set = generate_candidates(n).expect("supported n");
    let bytes = write_planar_code(&set.graphs);
    if let Some(path) = args.next() {
        std::fs::write(&path, &bytes).expect("writable path");
        println!("wrote {path}");
    }
    let back = read_planar_code(&bytes).expect("own output decodes");
    assert_eq!(back, set.graphs);
    println!("n={n}: {} graphs, {} bytes, round trip ok", back.len(), bytes.len());
    for g in back.iter().take(5) {
        println!("  {} edges={} isolated={:?}", canonical_code(g), g.edge_count(), g.isolated());
    }
}
