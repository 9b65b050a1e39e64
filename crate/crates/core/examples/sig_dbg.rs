use octoplane::canonical::CanonicalSystem;
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::signature::{coarse_signature, fine_signature};

fn main() {
    let c12 = CanonicalSystem::new(0.3, 0.6, 1.0, 0.9, 0.75, 0.5);
    let c13 = CanonicalSystem::new(0.7, 0.6, 1.0, 1.0, 1.0, 0.4);
    for (name, c) in [("1.2", c12), ("1.3", c13)] {
        let ctl = Controls::default();
        let skel = trace_separatrices(&c, &ctl).unwrap();
        let inv = Inventory::of(&c);
        println!("== {name}");
        for row in fine_signature(&skel) { println!("  {row:?}"); }
        println!("coarse: {:?}", coarse_signature(&skel, &inv));
    }
}
