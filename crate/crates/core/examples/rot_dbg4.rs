use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::signature::debug_map_graph;

fn main() {
    for (name, c) in [
        ("1.2", CanonicalSystem::new(0.3, 0.6, 1.0, 0.9, 0.75, 0.5)),
        ("1.3", CanonicalSystem::new(0.7, 0.6, 1.0, 1.0, 1.0, 0.4)),
    ] {
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        let inv = Inventory::of(&n);
        println!("== {name}");
        println!("{}", debug_map_graph(&n, &skel, &inv));
    }
}
