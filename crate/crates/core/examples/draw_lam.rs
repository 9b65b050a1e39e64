use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::render::render_disk;

fn main() {
    for lam in [0.05f64, 2.5, 4.95] {
        let c = CanonicalSystem::new(0.5, 0.5, lam, 5.0, 1.0, -0.5);
        let (n, _) = normalize_to_family(&c).unwrap();
        let ctl = Controls::default();
        let skel = trace_separatrices(&n, &ctl).unwrap();
        let inv = Inventory::of(&n);
        let svg = render_disk(&n, &inv, &skel, None, &ctl);
        std::fs::write(format!("/tmp/lam_{lam}.svg"), svg).unwrap();
        println!("wrote /tmp/lam_{lam}.svg");
    }
}
