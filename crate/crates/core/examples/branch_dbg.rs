use octoplane::canonical::{normalize_to_family, CanonicalSystem};
use octoplane::portrait::integrate::{integrate, Controls, Patch, State};
use octoplane::portrait::separatrix::Inventory;
use octoplane::algebra::Vec2;

fn main() {
    for lam in [0.05f64, 4.95] {
        let c0 = CanonicalSystem::new(0.5, 0.5, lam, 5.0, 1.0, -0.5);
        let (n, _) = normalize_to_family(&c0).unwrap();
        let inv = Inventory::of(&n);
        // inf_root_plus: u0+ root, stable transverse branch (e_v<0?) -> trace backward? 
        // Reproduce the launch: chart X at (u0,0), v>0 side.
        let b01 = n.b01; let b10 = n.b10; let a01 = n.a01;
        let delta = (b10 - a01).powi(2) + 4.0 * b01;
        let u0p = (a01 - b10 + delta.sqrt()) / (2.0 * b01);
        let e_u = 2.0 + (a01 - b10) * u0p;
        let e_v = -(a01 * u0p + 1.0);
        println!("lam={lam}: u0+ = {u0p:.4}, e_u={e_u:.4}, e_v={e_v:.4}");
        // transverse eigvec via numeric jacobian of chart field
        let h = 1e-7;
        let f = |u: f64, v: f64| octoplane::compactification::chart_rhs(&n, octoplane::compactification::ChartId::U1, u, v);
        let jb = (f(u0p + h, 0.0).x - f(u0p - h, 0.0).x) / (2.0*h);
        let jb2 = (f(u0p, h).x - f(u0p, -h).x) / (2.0*h);
        let w = Vec2::new(jb2 / (e_v - jb), 1.0).normalized();
        let start = Vec2::new(u0p, 0.0).add(w.scale(1e-6 * w.y.signum()));
        let fwd = e_v > 0.0;
        let targets: Vec<_> = inv.targets_for(fwd).into_iter().filter(|t| t.id != octoplane::singularities::SingId::InfRootPlus).collect();
        let traj = integrate(&n, State { patch: Patch::XDir, pos: start }, fwd, &targets, &Controls::default()).unwrap();
        println!("  termination: {:?}", traj.termination);
        // closest approach to p2 and to inf_x_pos along the arc
        let p2 = octoplane::portrait::integrate::plane_to_disk(Vec2::new(0.5, -0.5));
        let pole = Vec2::new(1.0, 0.0);
        let dmin_p2 = traj.samples.iter().map(|s| s.disk.sub(p2).norm()).fold(f64::INFINITY, f64::min);
        let dmin_pole = traj.samples.iter().map(|s| s.disk.sub(pole).norm()).fold(f64::INFINITY, f64::min);
        println!("  min dist to p2 = {dmin_p2:.2e}, to x-pole = {dmin_pole:.2e}, samples = {}", traj.samples.len());
    }
}
