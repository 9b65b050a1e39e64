use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory, Endpoint};
use octoplane::algebra::Vec2;

fn main() {
    for (name, c) in [
        ("1.2", CanonicalSystem::new(0.3, 0.6, 1.0, 0.9, 0.75, 0.5)),
        ("1.3", CanonicalSystem::new(0.7, 0.6, 1.0, 1.0, 1.0, 0.4)),
        ("2.1a lam=0.05", CanonicalSystem::new(0.5, 0.5, 0.05, 5.0, 1.0, -0.5)),
        ("2.1a lam=4.95", CanonicalSystem::new(0.5, 0.5, 4.95, 5.0, 1.0, -0.5)),
    ] {
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        let inv = Inventory::of(&n);
        println!("== {name}");
        // per-node incident ends with angles
        let mut per: std::collections::BTreeMap<String, Vec<(f64, String)>> = Default::default();
        for s in &skel.separatrices {
            if s.arc.len() < 2 { continue; }
            let from_disk = inv.get(s.from).map(Inventory::disk_of).unwrap();
            let k = (s.arc.len()/16).clamp(1, s.arc.len()-1);
            let d0 = s.arc[k].sub(from_disk);
            let a0 = d0.y.atan2(d0.x).rem_euclid(std::f64::consts::TAU);
            let endname = match &s.endpoint {
                Endpoint::Singularity(id) => id.to_string(),
                e => format!("{e:?}"),
            };
            per.entry(s.from.to_string()).or_default().push((a0, format!("{}{}->{}", if s.stable {"s"} else {"u"}, s.side, endname)));
            if let Endpoint::Singularity(id) = &s.endpoint {
                let nd = inv.get(*id).map(Inventory::disk_of).unwrap();
                let tail = s.arc[s.arc.len()-1-(s.arc.len()/16).min(s.arc.len()-2)];
                let d1 = tail.sub(nd);
                let a1 = d1.y.atan2(d1.x).rem_euclid(std::f64::consts::TAU);
                per.entry(id.to_string()).or_default().push((a1, format!("{}{}<-{}", if s.stable {"S"} else {"U"}, s.side, s.from)));
            }
        }
        for (node, mut ends) in per {
            ends.sort_by(|a,b| a.0.total_cmp(&b.0));
            let line: Vec<String> = ends.iter().map(|(a, s)| format!("{s}@{a:.2}")).collect();
            println!("  {node:<14} {}", line.join("  "));
        }
        let _ = Vec2::new(0.0,0.0);
    }
}
