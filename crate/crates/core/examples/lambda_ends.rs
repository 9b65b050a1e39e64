use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::signature::fine_signature;
use octoplane::singularities::{Location, LocalType};

fn main() {
    for lambda in [0.05f64, 2.5, 4.95] {
        let c = CanonicalSystem::new(0.5, 0.5, lambda, 5.0, 1.0, -0.5);
        let (n, _) = normalize_to_family(&c).unwrap();
        println!("== lambda = {lambda}  (normalized a01={}, b10={}, b01={})", n.a01, n.b10, n.b01);
        let inv = Inventory::of(&n);
        for r in &inv.reports {
            let loc = match r.location { Location::Finite(p) => format!("({:.3},{:.3})", p.x, p.y), Location::Infinity{angle} => format!("inf@{:.3}", angle) };
            println!("   {:<20} {:<14} {:?}", r.id.to_string(), loc, r.local_type);
        }
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        for row in fine_signature(&skel) { println!("  {row:?}"); }
        let _ = LocalType::Saddle;
    }
}
