use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory, Endpoint};
use octoplane::singularities::{Location, LocalType};
use octoplane::algebra::Vec2;

fn main() {
    for (name, c) in [
        ("1.2", CanonicalSystem::new(0.3, 0.6, 1.0, 0.9, 0.75, 0.5)),
        ("1.3", CanonicalSystem::new(0.7, 0.6, 1.0, 1.0, 1.0, 0.4)),
    ] {
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        let inv = Inventory::of(&n);
        println!("== {name}  (alpha={}, beta={})", n.alpha, n.beta);
        for r in &inv.reports {
            let loc = match r.location { Location::Finite(p) => format!("({:.3},{:.3})", p.x, p.y), Location::Infinity{angle} => format!("inf@{:.3}", angle) };
            println!("   {:<20} {:<16} {:?}", r.id.to_string(), loc, r.local_type);
        }
        for s in &skel.separatrices {
            let end = match &s.endpoint { Endpoint::Singularity(id) => id.to_string(), e => format!("{e:?}") };
            println!("     {} {}{} -> {}", s.from, if s.stable {"s"} else {"u"}, s.side, end);
        }
        let _ = (Vec2::new(0.0,0.0), LocalType::Saddle);
    }
}
