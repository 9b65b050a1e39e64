use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::signature::{coarse_signature_variants};

fn main() {
    let mut all = vec![];
    for (name, c) in [
        ("1.2", CanonicalSystem::new(0.3, 0.6, 1.0, 0.9, 0.75, 0.5)),
        ("1.3", CanonicalSystem::new(0.7, 0.6, 1.0, 1.0, 1.0, 0.4)),
    ] {
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        let inv = Inventory::of(&n);
        let vs = coarse_signature_variants(&n, &skel, &inv);
        println!("{name}: variant hashes: {:?}", vs.iter().map(|v| v.iter().fold(0u64,|a,b| a^b.rotate_left(7))).collect::<Vec<_>>());
        all.push(vs);
    }
    for (i, a) in all[0].iter().enumerate() {
        for (j, b) in all[1].iter().enumerate() {
            if a == b { println!("variant {i} of 1.2 == variant {j} of 1.3"); }
        }
    }
    println!("done");
}
