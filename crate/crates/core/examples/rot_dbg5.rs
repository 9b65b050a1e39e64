use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory};
use octoplane::portrait::signature::coarse_signature_variants;

fn main() {
    let mut vs = vec![];
    for c in [
        CanonicalSystem::new(0.3, 0.6, 1.0, 0.9, 0.75, 0.5),
        CanonicalSystem::new(0.7, 0.6, 1.0, 1.0, 1.0, 0.4),
    ] {
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        let inv = Inventory::of(&n);
        vs.push(coarse_signature_variants(&n, &skel, &inv));
    }
    for v in 0..4 {
        let a = &vs[0][v];
        let b = &vs[1][v];
        println!("variant {v}: len {} vs {}", a.len(), b.len());
        if a.len() == b.len() {
            if let Some(i) = (0..a.len()).find(|i| a[*i] != b[*i]) {
                println!("  first diff at {}: {:?} vs {:?}", i, &a[i.saturating_sub(6)..(i+6).min(a.len())], &b[i.saturating_sub(6)..(i+6).min(b.len())]);
            } else { println!("  EQUAL"); }
        }
    }
}
