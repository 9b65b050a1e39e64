// dev exploration: subcase signatures across the 2.1a lambda family and
// cross-row class matching
use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::classifier::{classify_case, witness::find_row_witness, tables::family_rows};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory, Endpoint};
use octoplane::portrait::signature::{coarse_signature, fine_signature};
use std::collections::BTreeMap;

fn sig_of(c: &CanonicalSystem) -> (String, String) {
    let ctl = Controls::default();
    let (n, _tag) = normalize_to_family(c).unwrap();
    let skel = trace_separatrices(&n, &ctl).unwrap();
    let inv = Inventory::of(&n);
    let unres = skel.separatrices.iter().filter(|s| matches!(s.endpoint, Endpoint::Unresolved(_))).count();
    let coarse = format!("{:?}", coarse_signature(&skel, &inv));
    let fine = format!("{:?}", fine_signature(&skel));
    if unres > 0 { eprintln!("  ({unres} unresolved branches)"); }
    (coarse, fine)
}

fn main() {
    let mut key = BTreeMap::new();
    println!("== 2.1a lambda family ==");
    for lambda in [0.05f64, 0.5, 1.0, 2.0, 2.5, 3.0, 4.0, 4.5, 4.95] {
        let c = CanonicalSystem::new(0.5, 0.5, lambda, 5.0, 1.0, -0.5);
        let (coarse, _fine) = sig_of(&c);
        let id = key.len();
        let k = *key.entry(coarse.clone()).or_insert(id);
        println!("lambda = {lambda:<5} sig#{k}");
    }
    println!("== two-parameter variant (beta near 1) ==");
    for (lambda, beta) in [(0.05, 0.93), (0.05, 0.9), (0.1, 0.95)] {
        let c = CanonicalSystem::new(0.5, beta, lambda, 5.0, 1.0, -0.5);
        let (n, tag) = normalize_to_family(&c).unwrap();
        let label = classify_case(&n, &tag).unwrap();
        let (coarse, _f) = sig_of(&c);
        let id = key.len();
        let k = *key.entry(coarse.clone()).or_insert(id);
        println!("lambda={lambda} beta={beta} case {} sig#{k}", label.case);
    }
    println!("== cross-row: 4.4b.i witness ==");
    let row = family_rows(4).iter().find(|r| r.label == "4.4b.i").unwrap();
    for seed in [1u64, 2, 3, 4, 5, 6, 7, 8] {
        if let Some((c, tag)) = find_row_witness(row, seed) {
            let label = classify_case(&c, &tag).unwrap();
            let (coarse, _f) = sig_of(&c);
            let id = key.len();
            let k = *key.entry(coarse.clone()).or_insert(id);
            println!("seed {seed}: case {} sig#{k}", label.case);
        }
    }
    println!("== cross-row: 2.2a (C-row) witness ==");
    let row = family_rows(2).iter().find(|r| r.label == "2.2a").unwrap();
    for seed in [1u64, 2, 3, 4, 5, 6] {
        if let Some((c, _tag)) = find_row_witness(row, seed) {
            let (coarse, _f) = sig_of(&c);
            let id = key.len();
            let k = *key.entry(coarse.clone()).or_insert(id);
            println!("seed {seed}: sig#{k}");
        }
    }
    println!("== cross-row: 4.6b.i witness ==");
    let row = family_rows(4).iter().find(|r| r.label == "4.6b.i").unwrap();
    for seed in [1u64, 2, 3, 4, 5, 6] {
        if let Some((c, _tag)) = find_row_witness(row, seed) {
            let (coarse, _f) = sig_of(&c);
            let id = key.len();
            let k = *key.entry(coarse.clone()).or_insert(id);
            println!("seed {seed}: sig#{k}");
        }
    }
    println!("total distinct coarse sigs: {}", key.len());
}
