//! Full run for one `n` followed by the comparison with the published tables.
//!
//! ```text
//! cargo run --release --example enumerate_catalog -- 8 /tmp/n8.jsonl
//! ```

use sphere_contact::pipeline::{enumerate, load_reference, verify_reference, RunConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let out = args.next().unwrap_or_else(|| format!("n{n}.jsonl"));
    let cfg = RunConfig {
        verbose: true,
        jobs: std::thread::available_parallelism().map_or(1, |p| p.get()),
        ..RunConfig::new(n, out)
    };
    let catalog = enumerate(&cfg).expect("enumeration");
    for r in &catalog.records {
        println!(
            "{} {:<10} [{:.5}, {:.5}] maximal={} d-irreducible={}",
            r.code,
            r.status.as_str(),
            r.d_min,
            r.d_max,
            r.flags.maximal,
            r.flags.d_irreducible
        );
    }
    print!("{}", verify_reference(&catalog, &load_reference(None).unwrap()));
}
