use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::{trace_separatrices, Inventory, Endpoint};
use octoplane::portrait::signature::{coarse_signature, fine_signature};
use std::collections::BTreeMap;

fn main() {
    let mut key: BTreeMap<_, usize> = BTreeMap::new();
    for lam in [0.001f64, 0.005, 0.01, 0.02, 0.05, 0.1, 0.3, 1.0, 2.0, 3.0, 4.0, 4.5, 4.9, 4.99, 4.999] {
        let c = CanonicalSystem::new(0.5, 0.55, lam, 5.0, 1.0, -0.5);
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = match trace_separatrices(&n, &Controls::default()) {
            Ok(s) => s,
            Err(e) => { println!("lam={lam}: trace failed: {e}"); continue; }
        };
        let inv = Inventory::of(&n);
        let unres = skel.separatrices.iter().filter(|s| matches!(s.endpoint, Endpoint::Unresolved(_))).count();
        // endpoint multiset per saddle (no side labels)
        let mut conn: Vec<String> = fine_signature(&skel).into_iter().map(|(f, st, _, e)| format!("{f}|{st}|{e}")).collect();
        conn.sort();
        let cs = coarse_signature(&n, &skel, &inv);
        let nk = key.len();
        let k = *key.entry(format!("{cs:?}")).or_insert(nk);
        println!("lam={lam:<6} unresolved={unres} connhash={:016x} coarse sig#{k}", conn.iter().fold(0u64, |a, s| { let mut h = a; for b in s.bytes() { h = (h ^ b as u64).wrapping_mul(0x100000001b3); } h }));
    }
}
