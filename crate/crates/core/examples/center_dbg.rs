use octoplane::canonical::CanonicalSystem;
use octoplane::portrait::integrate::Controls;
use octoplane::portrait::cycle::{return_map, detect_limit_cycle};

fn main() {
    let c = CanonicalSystem::new(0.5, 0.5, 1.0, 2.0, -2.0, -1.0);
    for k in 1..=12 {
        let r = 0.05 * k as f64;
        let p = return_map(&c, r, &Controls::default());
        println!("r = {r:.3}  P(r) = {p:?}  diff = {:?}", p.map(|v| v - r));
    }
    println!("{:?}", detect_limit_cycle(&c, None, &Controls::default()));
}
