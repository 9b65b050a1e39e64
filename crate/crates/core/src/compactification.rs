//! Poincaré compactification of the canonical cubic field: chart right-hand
//! sides, the equatorial singularities, and their hyperbolic types.

use crate::algebra::{Mat2, Vec2, ZERO_TOL};
use crate::canonical::CanonicalSystem;
use crate::singularities::{hyperbolic_type, Location, LocalType, SingId, SingularityReport};
use serde::{Deserialize, Serialize};

/// Local charts of the sphere. V-charts carry the same field expressions as
/// their U counterparts because the degree is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChartId {
    U1,
    V1,
    U2,
    V2,
}

/// Compactified field in the given chart at (u, v). The expressions carry the
/// v^{n-1} rescaling of the compactification, so they are polynomial and
/// regular on v = 0.
pub fn chart_rhs(c: &CanonicalSystem, chart: ChartId, u: f64, v: f64) -> Vec2 {
    let (al, be) = (c.alpha, c.beta);
    match chart {
        ChartId::U1 | ChartId::V1 => {
            let fx = (1.0 + al * v) * (1.0 + (al - 1.0) * v) * (c.a10 + c.a01 * u);
            let fy = (u + be * v) * (u + (be - 1.0) * v) * (c.b10 + c.b01 * u);
            Vec2::new(fy - u * fx, -v * fx)
        }
        ChartId::U2 | ChartId::V2 => {
            let fx = (u + al * v) * (u + (al - 1.0) * v) * (c.a10 * u + c.a01);
            let fy = (1.0 + be * v) * (1.0 + (be - 1.0) * v) * (c.b10 * u + c.b01);
            Vec2::new(fx - u * fy, -v * fy)
        }
    }
}

/// Roots of the equatorial polynomial g(u) = b01·u² + (b10−a01)·u − a10.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum EquatorRoots {
    /// Two simple real roots, labelled by the sign in the quadratic formula.
    RealPair { u_plus: f64, u_minus: f64 },
    Double { u0: f64 },
    Complex,
    /// b01 = 0 degenerates g to a linear polynomial (outside the generic family).
    DegenerateLinear { root: Option<f64> },
}

/// Equatorial data: the pole reports and the g-roots with the discriminant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfinitySet {
    pub delta: f64,
    pub roots: EquatorRoots,
    pub reports: Vec<SingularityReport>,
}

pub fn g_poly(c: &CanonicalSystem, u: f64) -> f64 {
    c.b01 * u * u + (c.b10 - c.a01) * u - c.a10
}

/// Discriminant Δ = (b10−a01)² + 4·a10·b01.
pub fn delta(c: &CanonicalSystem) -> f64 {
    let d = c.b10 - c.a01;
    d * d + 4.0 * c.a10 * c.b01
}

fn equator_roots(c: &CanonicalSystem) -> (f64, EquatorRoots) {
    let dl = delta(c);
    if c.b01.abs() <= ZERO_TOL {
        let slope = c.b10 - c.a01;
        let root = (slope.abs() > ZERO_TOL).then(|| c.a10 / slope);
        return (dl, EquatorRoots::DegenerateLinear { root });
    }
    let scale = (c.b10 - c.a01).powi(2).max(1.0);
    if dl.abs() <= ZERO_TOL * scale {
        (dl, EquatorRoots::Double { u0: (c.a01 - c.b10) / (2.0 * c.b01) })
    } else if dl < 0.0 {
        (dl, EquatorRoots::Complex)
    } else {
        let s = dl.sqrt();
        (
            dl,
            EquatorRoots::RealPair {
                u_plus: (c.a01 - c.b10 + s) / (2.0 * c.b01),
                u_minus: (c.a01 - c.b10 - s) / (2.0 * c.b01),
            },
        )
    }
}

fn pole_report(id: SingId, angle: f64, lambda: f64) -> SingularityReport {
    let j = Mat2::diag(-lambda, -lambda);
    let (eigenvalues, local_type) = hyperbolic_type(j);
    SingularityReport {
        id,
        location: Location::Infinity { angle },
        jacobian: j,
        eigenvalues,
        local_type,
        notes: (local_type == LocalType::NonHyperbolic)
            .then(|| "pole eigenvalue vanishes".to_string()),
    }
}

fn root_report(c: &CanonicalSystem, id: SingId, u0: f64, antipode: bool) -> SingularityReport {
    let e_u = 2.0 * c.a10 + (c.a01 - c.b10) * u0;
    let e_v = -(c.a01 * u0 + c.a10);
    // Upper-triangular per the equatorial Jacobian; the star entry is not
    // needed for the type.
    let j = Mat2::new(e_u, 0.0, 0.0, e_v);
    let (eigenvalues, local_type) = hyperbolic_type(j);
    let mut angle = u0.atan2(1.0);
    if antipode {
        angle += std::f64::consts::PI;
    }
    let notes = if local_type == LocalType::NonHyperbolic {
        // Vanishing diagonal happens exactly at a root collision: either the
        // double root or a collision with the pole.
        let dl = delta(c);
        Some(format!(
            "degenerate equatorial root: delta = {dl:e}, u0 = {u0:e}"
        ))
    } else {
        None
    };
    SingularityReport { id, location: Location::Infinity { angle }, jacobian: j, eigenvalues, local_type, notes }
}

/// Equatorial singularities of the compactified field, classified from the
/// chart Jacobians. Antipodal points carry the same local type (odd degree).
pub fn infinite_singularities(c: &CanonicalSystem) -> InfinitySet {
    let (dl, roots) = equator_roots(c);
    let mut reports = vec![
        pole_report(SingId::InfXPos, 0.0, c.a10),
        pole_report(SingId::InfXNeg, std::f64::consts::PI, c.a10),
        pole_report(SingId::InfYPos, std::f64::consts::FRAC_PI_2, c.b01),
        pole_report(SingId::InfYNeg, -std::f64::consts::FRAC_PI_2, c.b01),
    ];
    match roots {
        EquatorRoots::RealPair { u_plus, u_minus } => {
            reports.push(root_report(c, SingId::InfRootPlus, u_plus, false));
            reports.push(root_report(c, SingId::InfRootPlusAnti, u_plus, true));
            reports.push(root_report(c, SingId::InfRootMinus, u_minus, false));
            reports.push(root_report(c, SingId::InfRootMinusAnti, u_minus, true));
        }
        EquatorRoots::Double { u0 } => {
            reports.push(root_report(c, SingId::InfRootPlus, u0, false));
            reports.push(root_report(c, SingId::InfRootPlusAnti, u0, true));
        }
        EquatorRoots::DegenerateLinear { root: Some(u0) } => {
            reports.push(root_report(c, SingId::InfRootPlus, u0, false));
            reports.push(root_report(c, SingId::InfRootPlusAnti, u0, true));
        }
        EquatorRoots::Complex | EquatorRoots::DegenerateLinear { root: None } => {}
    }
    InfinitySet { delta: dl, roots, reports }
}

/// Classified equatorial singularities (the report list of [`infinite_singularities`]).
pub fn classify_infinite(c: &CanonicalSystem) -> Vec<SingularityReport> {
    infinite_singularities(c).reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_canonical(rng: &mut ChaCha8Rng) -> CanonicalSystem {
        CanonicalSystem::new(
            rng.gen_range(-1.0..2.0),
            rng.gen_range(-1.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
    }

    #[test]
    fn equator_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let c = random_canonical(&mut rng);
            for chart in [ChartId::U1, ChartId::U2, ChartId::V1, ChartId::V2] {
                let u = rng.gen_range(-3.0..3.0);
                let v = chart_rhs(&c, chart, u, 0.0);
                assert_eq!(v.y, 0.0);
            }
        }
    }

    /// Push the planar field through the chart map; chart_rhs must equal
    /// v^{n-1} times that pushforward.
    #[test]
    fn chart_field_matches_chain_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let c = random_canonical(&mut rng);
            let u = rng.gen_range(-2.0..2.0);
            let v = rng.gen_range(0.05..0.5);

            // U1: (x, y) = (1/v, u/v); the chart field is v^2 times the
            // planar-time derivative of (u, v) along the flow.
            let p = Vec2::new(1.0 / v, u / v);
            let w = c.eval(p);
            let du = v * (w.y - u * w.x);
            let dv = -v * v * w.x;
            let got = chart_rhs(&c, ChartId::U1, u, v);
            assert!(
                (got.x - v * v * du).abs() <= 1e-8 * (1.0 + got.x.abs()),
                "u-dot mismatch {} vs {}",
                got.x,
                v * v * du
            );
            assert!((got.y - v * v * dv).abs() <= 1e-8 * (1.0 + got.y.abs()));

            // U2: (x, y) = (u/v, 1/v)
            let p2 = Vec2::new(u / v, 1.0 / v);
            let w2 = c.eval(p2);
            let du2 = v * (w2.x - u * w2.y);
            let dv2 = -v * v * w2.y;
            let got2 = chart_rhs(&c, ChartId::U2, u, v);
            assert!((got2.x - v * v * du2).abs() <= 1e-8 * (1.0 + got2.x.abs()));
            assert!((got2.y - v * v * dv2).abs() <= 1e-8 * (1.0 + got2.y.abs()));
        }
    }

    #[test]
    fn v_charts_equal_u_charts_for_odd_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let c = random_canonical(&mut rng);
            let u = rng.gen_range(-2.0..2.0);
            let v = rng.gen_range(-0.5..0.5);
            assert_eq!(chart_rhs(&c, ChartId::U1, u, v), chart_rhs(&c, ChartId::V1, u, v));
            assert_eq!(chart_rhs(&c, ChartId::U2, u, v), chart_rhs(&c, ChartId::V2, u, v));
        }
    }

    /// With the equilibrium at the origin and a00 = b00 = 0, the canonical
    /// chart field reduces to the raw-system chart expansion's leading terms.
    #[test]
    fn alpha_beta_zero_reduces_to_raw_chart() {
        let c = CanonicalSystem::new(0.0, 0.0, 1.3, -0.7, 0.4, -1.1);
        let v = chart_rhs(&c, ChartId::U1, 0.8, 0.0);
        // On v = 0: u-dot = -a10 u + (b10 - a01) u^2 + b01 u^3 = u * g(u).
        let expect = 0.8 * g_poly(&c, 0.8);
        assert!((v.x - expect).abs() < 1e-12);
    }

    #[test]
    fn symmetric_quadratic_roots() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 0.7, 0.7, 1.0);
        let set = infinite_singularities(&c);
        match set.roots {
            EquatorRoots::RealPair { u_plus, u_minus } => {
                assert!((u_plus - 1.0).abs() < 1e-12);
                assert!((u_minus + 1.0).abs() < 1e-12);
            }
            other => panic!("expected real pair, got {other:?}"),
        }
    }

    #[test]
    fn family_one_roots_straddle_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..100 {
            let c = CanonicalSystem::new(
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.5..0.95),
                1.0,
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.1..2.0),
            );
            match infinite_singularities(&c).roots {
                EquatorRoots::RealPair { u_plus, u_minus } => {
                    assert!(u_minus < 0.0 && 0.0 < u_plus);
                }
                other => panic!("family 1 must have a real pair, got {other:?}"),
            }
        }
    }

    #[test]
    fn spec_example_roots_negative() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 5.0, 1.0, -0.5);
        let set = infinite_singularities(&c);
        assert!((set.delta - 14.0).abs() < 1e-12);
        match set.roots {
            EquatorRoots::RealPair { u_plus, u_minus } => {
                assert!(u_plus < 0.0 && u_minus < 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn poles_are_nodes_matching_sign() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 0.3, 0.4, 2.0);
        let set = infinite_singularities(&c);
        let x_pole = set.reports.iter().find(|r| r.id == SingId::InfXPos).unwrap();
        assert_eq!(x_pole.local_type, LocalType::StableNode);
        let y_pole = set.reports.iter().find(|r| r.id == SingId::InfYPos).unwrap();
        assert_eq!(y_pole.local_type, LocalType::StableNode);
        let rev = CanonicalSystem::new(0.5, 0.5, -1.0, 0.3, 0.4, -2.0);
        let set = infinite_singularities(&rev);
        assert_eq!(
            set.reports.iter().find(|r| r.id == SingId::InfXPos).unwrap().local_type,
            LocalType::UnstableNode
        );
    }

    #[test]
    fn family_one_root_types() {
        // b01 > 0, detA < 0 configuration: u- root is an unstable node, u+ a saddle.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 5.0, 1.0, 0.5);
        assert!(c.det_a() < 0.0);
        let set = infinite_singularities(&c);
        let plus = set.reports.iter().find(|r| r.id == SingId::InfRootPlus).unwrap();
        let minus = set.reports.iter().find(|r| r.id == SingId::InfRootMinus).unwrap();
        assert_eq!(minus.local_type, LocalType::UnstableNode);
        assert_eq!(plus.local_type, LocalType::Saddle);
        // Antipodes share the type.
        let plus_anti = set.reports.iter().find(|r| r.id == SingId::InfRootPlusAnti).unwrap();
        assert_eq!(plus_anti.local_type, plus.local_type);
    }

    #[test]
    fn double_root_flagged_degenerate() {
        // Δ = (b10-a01)^2 + 4 a10 b01 = 4 - 4 = 0.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 2.0, 0.0, -1.0);
        let set = infinite_singularities(&c);
        assert!(matches!(set.roots, EquatorRoots::Double { .. }));
        let rep = set.reports.iter().find(|r| r.id == SingId::InfRootPlus).unwrap();
        assert_eq!(rep.local_type, LocalType::NonHyperbolic);
        assert!(rep.notes.is_some());
    }

    /// The equatorial eigenvalue vanishes only at a double root or when a10 = 0.
    #[test]
    fn degeneracy_equivalences_hold_over_sweeps() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..2000 {
            let c = random_canonical(&mut rng);
            if c.b01.abs() < 0.05 {
                continue;
            }
            if let EquatorRoots::RealPair { u_plus, u_minus } = infinite_singularities(&c).roots {
                for u0 in [u_plus, u_minus] {
                    let e_u = 2.0 * c.a10 + (c.a01 - c.b10) * u0;
                    let dl = delta(&c);
                    if e_u.abs() < 1e-9 {
                        assert!(
                            dl.abs() < 1e-6 || c.a10.abs() < 1e-6,
                            "equatorial eigenvalue vanished away from the stated degeneracies"
                        );
                    }
                    let e_v = c.a01 * u0 + c.a10;
                    if e_v.abs() < 1e-9 {
                        assert!(u0.abs() < 1e-6 || c.a10.abs() < 1e-5);
                    }
                }
            }
        }
    }
}
