use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::signature::coarse_signature_variants;

fn main() {
    let mut all = vec![];
    for lam in [0.05f64, 2.5, 4.95] {
        let c = CanonicalSystem::new(0.5, 0.5, lam, 5.0, 1.0, -0.5);
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        let inv = Inventory::of(&n);
        all.push((lam, coarse_signature_variants(&n, &skel, &inv)));
    }
    // variants: 0 = (id), 1 = mirror, 2 = flip, 3 = mirror+flip
    for i in 0..all.len() {
        for j in i..all.len() {
            let (la, va) = &all[i];
            let (lb, vb) = &all[j];
            for (x, a) in va.iter().enumerate() {
                for (y, b) in vb.iter().enumerate() {
                    if a == b && (i != j || x < y) {
                        println!("lam {la} variant {x} == lam {lb} variant {y}");
                    }
                }
            }
        }
    }
}
