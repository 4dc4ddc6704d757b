//! Linear enclosures of the nonlinear terms and the assembled relaxation.
//!
//! ```text
//! cargo run --example enclosures
//! ```

use sphere_contact::feasibility::{propagate, DomainBox, VariableSystem};
use sphere_contact::linear_relax::{assemble_system, enclose_product, enclose_trig, enclose_triple, Interval, Trig};
use sphere_contact::plane_graph::fixtures;

fn main() {
    let x = Interval::new(0.9, 1.3);
    for kind in [Trig::Sin, Trig::Cos] {
        let e = enclose_trig(kind, x).unwrap();
        println!("{kind:?} on [0.9, 1.3]: {:.6} x - f(x) in [{:.3e}, {:.3e}]", e.k[0], e.lower, e.upper);
    }
    let p = enclose_product(Interval::new(0.5, 0.7), Interval::new(-0.2, 0.4));
    println!("xy: k={:.3?} width {:.3e}", p.k, p.upper - p.lower);
    let t = enclose_triple(Interval::new(0.5, 0.7), Interval::new(0.1, 0.4), Interval::new(0.9, 1.0));
    println!("xyz: k={:.3?} width {:.3e}", t.k, t.upper - t.lower);

    let sys = VariableSystem::new(&fixtures::cube()).unwrap();
    let root = DomainBox::initial(&sys);
    let cons = assemble_system(&sys, &root.0);
    println!("cube: {} variables, {} constraints at the root", sys.len(), cons.len());
    match propagate(&cons, &root) {
        Some(b) => {
            for v in 0..sys.len().min(4) {
                println!("  {:>6} {:.5} .. {:.5}", sys.name(v), b.0[v].lo, b.0[v].hi);
            }
        }
        None => println!("  pruned at the root"),
    }
}
