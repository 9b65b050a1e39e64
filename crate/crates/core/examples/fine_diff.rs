use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::separatrix::trace_separatrices;
use octoplane::portrait::signature::fine_signature;

fn main() {
    let mut tables = vec![];
    for lam in [0.05f64, 2.0, 4.9] {
        let c = CanonicalSystem::new(0.5, 0.55, lam, 5.0, 1.0, -0.5);
        let (n, _) = normalize_to_family(&c).unwrap();
        let skel = trace_separatrices(&n, &Controls::default()).unwrap();
        tables.push(fine_signature(&skel));
    }
    for i in 0..tables[0].len() {
        let a = &tables[0][i]; let b = &tables[1][i]; let c = &tables[2][i];
        let m = if a.3 == b.3 && b.3 == c.3 { " " } else { "*" };
        println!("{m} {:<30} | {:<18} | {:<18} | {}", format!("{}.{}{}", a.0, if a.1 {"s"} else {"u"}, a.2), a.3, b.3, c.3);
    }
}
