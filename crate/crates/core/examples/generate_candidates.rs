//! Candidate plane graphs per point count.
//!
//! Prints the number of 3-connected plane graphs on `n` vertices, the number
//! of filter-passing candidates (with isolated-vertex placements), and the
//! face-size profile of the candidates.
//!
//! ```text
//! cargo run --release --example generate_candidates -- 6 9
//! ```

use std::time::Instant;

use sphere_contact::plane_graph::{generate_candidates, polyhedra};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (lo, hi) = match args.as_slice() {
        [a, b] => (*a, *b),
        [a] => (*a, *a),
        _ => (6, 8),
    };
    for n in lo..=hi {
        let t = Instant::now();
        let all = if n <= 9 { Some(polyhedra(n, n - 1).len()) } else { None };
        let c = generate_candidates(n).expect("supported n");
        let with_isolated = c.graphs.iter().filter(|g| !g.isolated().is_empty()).count();
        println!(
            "n={n:2} polyhedra={} candidates={} (underlying {}, with isolated vertices {}) in {:.2?}",
            all.map_or("-".to_string(), |x| x.to_string()),
            c.graphs.len(),
            c.underlying,
            with_isolated,
            t.elapsed()
        );
    }
}
