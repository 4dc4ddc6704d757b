//! Search and certification of every candidate for a small `n`.
//!
//! ```text
//! cargo run --release --example certify_graph -- 7
//! ```

use sphere_contact::certifier::{certify, CertifyConfig, Status};
use sphere_contact::feasibility::{branch_and_bound, SearchConfig};
use sphere_contact::plane_graph::generate_candidates;
use sphere_contact::sphere_geom::psi;

fn main() {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let (search, cfg) = (SearchConfig::default(), CertifyConfig::default());
    for (i, g) in generate_candidates(n).expect("supported n").graphs.iter().enumerate() {
        let rec = certify(g, &branch_and_bound(g, &search), &cfg);
        if rec.status != Status::Embedded {
            continue;
        }
        let emb = rec.embedding.as_ref().unwrap();
        println!(
            "#{i:<4} d in [{:.5}, {:.5}] representative d={:.5} psi={:.5} residual={:.1e} d-irreducible={}",
            rec.d_min,
            rec.d_max,
            emb.d,
            psi(&emb.points).unwrap(),
            emb.residual(),
            rec.flags.d_irreducible
        );
        for p in &emb.points {
            println!("       [{:+.6}, {:+.6}, {:+.6}]", p.x, p.y, p.z);
        }
    }
}
