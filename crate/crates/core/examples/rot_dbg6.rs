use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::signature::debug_map_graph;

fn main() {
    for (name, lam) in [("lam0.05", 0.05), ("lam4.95", 4.95)] {
        let c = CanonicalSystem::new(0.5, 0.5, lam, 5.0, 1.0, -0.5);
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        let inv = Inventory::of(&n);
        println!("== {name}");
        println!("{}", debug_map_graph(&n, &skel, &inv));
    }
}
