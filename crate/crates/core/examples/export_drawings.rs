//! SVG drawings of a catalog, or of the octahedron when none is given.
//!
//! ```text
//! cargo run --release --example export_drawings -- n7.jsonl /tmp/svg
//! ```

use std::path::PathBuf;

use sphere_contact::certifier::{certify, CertifyConfig};
use sphere_contact::feasibility::{branch_and_bound, SearchConfig};
use sphere_contact::pipeline::{count_elements, export_svg, sphere_svg, Catalog, ExportOptions, ViewAxis};
use sphere_contact::plane_graph::fixtures;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [catalog, dir] = args.as_slice() {
        let c = Catalog::read(&PathBuf::from(catalog)).expect("readable catalog");
        let files = export_svg(&c, &PathBuf::from(dir), &ExportOptions { view: ViewAxis::Y }).expect("export");
        for f in files {
            println!("{}", f.display());
        }
        return;
    }
    let g = fixtures::octahedron();
    let rec = certify(&g, &branch_and_bound(&g, &SearchConfig::default()), &CertifyConfig::default());
    let svg = sphere_svg(rec.embedding.as_ref().unwrap(), ViewAxis::Z);
    let (v, e) = count_elements(&svg);
    println!("octahedron drawing: {v} vertices, {e} edges, {} bytes", svg.len());
}
