//! Branch and bound on one graph.
//!
//! Without arguments the octahedron is searched; with `n index` the
//! `index`-th candidate for `n` is used.
//!
//! ```text
//! cargo run --release --example search_graph -- 8 3
//! ```

use sphere_contact::certifier::d_hull;
use sphere_contact::feasibility::{branch_and_bound, SearchConfig, SearchError};
use sphere_contact::plane_graph::{canonical_code, fixtures, generate_candidates};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let g = match args.as_slice() {
        [n, i] => generate_candidates(*n).expect("supported n").graphs.swap_remove(*i),
        _ => fixtures::octahedron(),
    };
    println!("{} ({} vertices, {} edges)", canonical_code(&g), g.vertex_count(), g.edge_count());
    match branch_and_bound(&g, &SearchConfig::default()) {
        Ok(r) if r.survived() => {
            let hull = d_hull(r.boxes()).unwrap();
            println!(
                "survived: {} boxes after {} levels, {} nodes; d in [{:.5}, {:.5}]",
                r.boxes().len(),
                r.levels,
                r.nodes,
                hull.lo,
                hull.hi
            );
        }
        Ok(r) => println!("pruned after {} levels ({} nodes)", r.levels, r.nodes),
        Err(SearchError::BudgetExceeded { level, live, .. }) => println!("budget exceeded: {live} boxes at level {level}"),
        Err(e) => println!("error: {e}"),
    }
}
