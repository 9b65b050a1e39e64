//! Genericity gate, polycycle analysis and the algebraic limit-cycle criterion.

use crate::algebra::{Sign, ZERO_TOL};
use crate::canonical::{position_of_origin, CanonicalSystem};
use crate::compactification::{classify_infinite, delta};
use crate::error::{Error, Result};
use crate::replicator::RawSystem;
use crate::singularities::{
    classify_origin, p_singularities, relative_positions, LocalType, Rel, SingId,
};
use serde::{Deserialize, Serialize};

/// Ratio r(Γ) counts as 1 when |log r| falls below this.
pub const POLYCYCLE_RATIO_TOL: f64 = 1e-10;

/// The discriminant bundle used by the case tables.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Discriminants {
    pub det_a: f64,
    pub delta: f64,
    pub sign_b10_minus_a01: Sign,
    /// Trace of the Jacobian at the origin.
    pub t: f64,
    /// Cherkas quantity: r(Γ) > 1 exactly when k > 0.
    pub k: f64,
    /// Tangency slope 2|b01|/a01 + (b10 − a01); +∞ when a01 = 0.
    pub small_delta: f64,
}

pub fn discriminants(c: &CanonicalSystem) -> Discriminants {
    let pa = (c.alpha - 1.0) * c.alpha;
    let pb = (c.beta - 1.0) * c.beta;
    Discriminants {
        det_a: c.det_a(),
        delta: delta(c),
        sign_b10_minus_a01: Sign::of(c.b10 - c.a01, ZERO_TOL),
        t: c.a10 * pa + c.b01 * pb,
        k: c.a01 * c.b01 * pb - c.a10 * c.b10 * pa,
        small_delta: if c.a01.abs() > ZERO_TOL {
            2.0 * c.b01.abs() / c.a01 + (c.b10 - c.a01)
        } else {
            f64::INFINITY
        },
    }
}

/// Outcome of the necessary genericity condition a10·b01·det A ≠ 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateReport {
    pub pass: bool,
    /// Name of the first vanishing factor: "a10", "b01" or "detA".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub product: f64,
}

fn gate_from_block(a10: f64, a01: f64, b10: f64, b01: f64) -> GateReport {
    let det_a = a10 * b01 - a01 * b10;
    let product = a10 * b01 * det_a;
    let witness = if a10.abs() <= ZERO_TOL {
        Some("a10")
    } else if b01.abs() <= ZERO_TOL {
        Some("b01")
    } else if det_a.abs() <= ZERO_TOL {
        Some("detA")
    } else {
        None
    };
    GateReport { pass: witness.is_none() && product.abs() > ZERO_TOL, witness: witness.map(String::from), product }
}

pub fn necessary_condition_raw(s: &RawSystem) -> GateReport {
    gate_from_block(s.a10, s.a01, s.b10, s.b01)
}

pub fn necessary_condition(c: &CanonicalSystem) -> GateReport {
    gate_from_block(c.a10, c.a01, c.b10, c.b01)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolycycleStability {
    Stable,
    Unstable,
    Inconclusive,
}

/// Report on the boundary polycycle of the central octothorpe square.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolycycleReport {
    pub exists: bool,
    pub saddles: Vec<SingId>,
    /// Hyperbolicity ratios |μ|/ν of the four corner saddles, in p1..p4 order.
    pub ratios: Vec<f64>,
    pub r_gamma: f64,
    pub stability: PolycycleStability,
}

/// Polycycle analysis of the central square for a position-1 system: exists
/// only when all four p-corners are hyperbolic saddles and no q-singularity
/// sits on a square edge.
pub fn polycycle_report(c: &CanonicalSystem) -> PolycycleReport {
    let rel = relative_positions(c);
    // q strictly inside an edge: q1 in (p1,p2), q2 in (p2,p3), q3 in (p4,p3), q4 in (p1,p4).
    let q_inside = [
        rel.q1_p1 == Rel::Greater && rel.q1_p2 == Rel::Less,
        rel.q2_p2 == Rel::Greater && rel.q2_p3 == Rel::Less,
        rel.q3_p4 == Rel::Greater && rel.q3_p3 == Rel::Less,
        rel.q4_p1 == Rel::Greater && rel.q4_p4 == Rel::Less,
    ];
    let collision = rel.has_equality();
    let p_reports = p_singularities(c);
    let all_saddles = p_reports.iter().all(|r| r.local_type == LocalType::Saddle);
    let exists = all_saddles && !q_inside.iter().any(|b| *b) && !collision;

    let mut ratios = Vec::with_capacity(4);
    if all_saddles {
        for r in &p_reports {
            let (l1, l2) = match r.eigenvalues {
                crate::algebra::EigenPair::Real(a, b) => (a, b),
                _ => unreachable!("saddle eigenvalues are real"),
            };
            let (mu, nu) = if l1 < l2 { (l1, l2) } else { (l2, l1) };
            ratios.push(mu.abs() / nu);
        }
    }
    let r_gamma: f64 = if ratios.len() == 4 { ratios.iter().product() } else { f64::NAN };
    let stability = if !exists || !r_gamma.is_finite() {
        PolycycleStability::Inconclusive
    } else if r_gamma.ln().abs() <= POLYCYCLE_RATIO_TOL {
        PolycycleStability::Inconclusive
    } else if r_gamma > 1.0 {
        PolycycleStability::Stable
    } else {
        PolycycleStability::Unstable
    };
    PolycycleReport {
        exists,
        saddles: if exists { vec![SingId::P1, SingId::P2, SingId::P3, SingId::P4] } else { vec![] },
        ratios,
        r_gamma,
        stability,
    }
}

/// Algebraic limit-cycle criterion T·K < 0. Requires a focus/node origin in
/// the central region with the boundary polycycle present; when a cycle
/// exists it is unique and hyperbolic for this family.
pub fn limit_cycle_exists(c: &CanonicalSystem) -> Result<bool> {
    let pos = position_of_origin(c);
    if pos.index != 1 || pos.boundary_flag {
        return Err(Error::HypothesesNotMet {
            reason: format!("origin not strictly inside the central region (position {})", pos.index),
        });
    }
    let origin = classify_origin(c);
    let focus_node = origin.local_type.is_attracting() || origin.local_type.is_repelling();
    if !focus_node {
        if origin.local_type == LocalType::Center {
            // A center has a period annulus, no isolated cycle.
            return Ok(false);
        }
        return Err(Error::HypothesesNotMet {
            reason: format!("origin is {:?}, not a focus/node", origin.local_type),
        });
    }
    let poly = polycycle_report(c);
    if !poly.exists {
        return Err(Error::HypothesesNotMet { reason: "no boundary polycycle".to_string() });
    }
    let d = discriminants(c);
    if d.t.abs() <= ZERO_TOL {
        // Weak focus: no limit cycles in this family.
        return Ok(false);
    }
    Ok(d.t * d.k < 0.0)
}

/// One audited property.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// True when the item rests on a numerical search rather than algebra.
    pub numerical: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditReport {
    pub items: Vec<AuditItem>,
    pub pass: bool,
}

/// Audit the genericity requirements. Saddle-connection evidence comes from
/// the caller's separatrix trace: `connections_outside_lambda` lists offending
/// pairs when known, `None` means the numerical check was not run.
pub fn genericity_audit(
    c: &CanonicalSystem,
    connections_outside_lambda: Option<&[(String, String)]>,
) -> AuditReport {
    let mut items = Vec::new();

    // (a) finitely many singularities, all hyperbolic — symbolic.
    let gate = necessary_condition(c);
    let origin = classify_origin(c);
    let mut non_hyp: Vec<String> = Vec::new();
    if !matches!(
        origin.local_type,
        LocalType::Saddle
            | LocalType::StableNode
            | LocalType::UnstableNode
            | LocalType::StableFocus
            | LocalType::UnstableFocus
    ) {
        non_hyp.push(format!("origin ({:?})", origin.local_type));
    }
    for r in p_singularities(c) {
        if r.local_type == LocalType::NonHyperbolic {
            non_hyp.push(r.id.to_string());
        }
    }
    for r in crate::singularities::q_singularities(c) {
        if r.local_type == LocalType::NonHyperbolic {
            non_hyp.push(r.id.to_string());
        }
    }
    for r in classify_infinite(c) {
        if r.local_type == LocalType::NonHyperbolic {
            non_hyp.push(r.id.to_string());
        }
    }
    if !gate.pass {
        non_hyp.push(format!("gate witness {}", gate.witness.clone().unwrap_or_default()));
    }
    items.push(AuditItem {
        name: "finite_and_infinite_singularities_hyperbolic".to_string(),
        pass: non_hyp.is_empty(),
        detail: if non_hyp.is_empty() { "all hyperbolic".to_string() } else { non_hyp.join(", ") },
        numerical: false,
    });

    // (b) closed orbits hyperbolic — certified by the at-most-one-hyperbolic-
    // limit-cycle theorem for cubics with two pairs of parallel invariant lines.
    items.push(AuditItem {
        name: "closed_orbits_hyperbolic".to_string(),
        pass: true,
        detail: "at most one limit cycle, hyperbolic when present (invariant-line theorem)"
            .to_string(),
        numerical: false,
    });

    // (c) no saddle connection outside the invariant set Λ — numerical.
    match connections_outside_lambda {
        Some(list) => items.push(AuditItem {
            name: "no_saddle_connections_outside_lambda".to_string(),
            pass: list.is_empty(),
            detail: if list.is_empty() {
                "no connection found at tolerance".to_string()
            } else {
                format!("{list:?}")
            },
            numerical: true,
        }),
        None => items.push(AuditItem {
            name: "no_saddle_connections_outside_lambda".to_string(),
            pass: true,
            detail: "not traced".to_string(),
            numerical: true,
        }),
    }

    // (d) generic polycycle: r(Γ) ≠ 1.
    let poly = polycycle_report(c);
    let poly_pass = !poly.exists || poly.stability != PolycycleStability::Inconclusive;
    items.push(AuditItem {
        name: "polycycle_generic".to_string(),
        pass: poly_pass,
        detail: if poly.exists {
            format!("r_gamma = {}", poly.r_gamma)
        } else {
            "no boundary polycycle".to_string()
        },
        numerical: false,
    });

    let pass = items.iter().all(|i| i.pass);
    AuditReport { items, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gate_witnesses() {
        let s = RawSystem::new(0.1, 0.0, 1.0, 0.2, 1.0, 1.0).unwrap();
        let g = necessary_condition_raw(&s);
        assert!(!g.pass);
        assert_eq!(g.witness.as_deref(), Some("a10"));

        // Parallel kernel lines: detA = 0 with a10, b01 nonzero.
        let s = RawSystem::new(0.1, 1.0, 2.0, 0.2, 2.0, 4.0).unwrap();
        let g = necessary_condition_raw(&s);
        assert!(!g.pass);
        assert_eq!(g.witness.as_deref(), Some("detA"));

        let s = RawSystem::new(0.1, 1.0, 5.0, 0.2, 1.0, -0.5).unwrap();
        let g = necessary_condition_raw(&s);
        assert!(g.pass, "product {} should pass", g.product);
    }

    #[test]
    fn gate_failure_matches_nonhyperbolic_singularity() {
        // a10 = 0 makes the x-direction poles non-hyperbolic.
        let c = CanonicalSystem::new(0.4, 0.6, 0.0, 1.0, 0.7, 1.0);
        let audit = genericity_audit(&c, None);
        assert!(!audit.items[0].pass);
    }

    #[test]
    fn polycycle_example_stable() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -0.5);
        let rep = polycycle_report(&c);
        assert!(rep.exists);
        let d = discriminants(&c);
        assert!((d.k - 0.125).abs() < 1e-12);
        assert!((d.t + 0.125).abs() < 1e-12);
        assert_eq!(rep.stability, PolycycleStability::Stable);
        assert!(rep.r_gamma > 1.0);
    }

    #[test]
    fn family3_polycycle_always_unstable() {
        // b10 <= 0, b01 > 0 with the polycycle configuration: K < 0 always.
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let mut done = 0;
        while done < 100 {
            let alpha = rng.gen_range(0.1..0.9);
            let beta = rng.gen_range(0.5..0.9);
            let a01 = rng.gen_range(0.1..4.0);
            let b10 = -rng.gen_range(0.1..4.0);
            let b01 = rng.gen_range(0.1..4.0);
            let c = CanonicalSystem::new(alpha, beta, 1.0, a01, b10, b01);
            let rel = relative_positions(&c);
            let config = rel.q1_p2 == Rel::Greater
                && rel.q2_p3 == Rel::Greater
                && rel.q3_p4 == Rel::Less
                && rel.q4_p1 == Rel::Less;
            if !config {
                continue;
            }
            done += 1;
            let rep = polycycle_report(&c);
            assert!(rep.exists, "configuration implies the boundary polycycle");
            assert_eq!(rep.stability, PolycycleStability::Unstable);
            assert!(discriminants(&c).k < 0.0);
        }
    }

    #[test]
    fn q_on_edge_kills_polycycle() {
        // q1 inside the bottom edge: a01*beta/a10 between -alpha and 1-alpha.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 0.5, -1.0, -0.5);
        let rel = relative_positions(&c);
        assert_eq!(rel.q1_p1, Rel::Greater);
        assert_eq!(rel.q1_p2, Rel::Less);
        assert!(!polycycle_report(&c).exists);
    }

    #[test]
    fn cherkas_sign_identity_on_random_polycycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let mut done = 0;
        while done < 500 {
            let alpha: f64 = rng.gen_range(0.05..0.95);
            let beta: f64 = rng.gen_range(0.5..0.95);
            let lo = ((1.0 - alpha) / beta).max(alpha / (1.0 - beta));
            let a01 = lo + rng.gen_range(0.01..4.0);
            let r = -(beta / (1.0 - alpha)).max((1.0 - beta) / alpha) - rng.gen_range(0.01..4.0);
            let b01 = -rng.gen_range(0.05..4.0);
            let b10 = -r * b01; // b10 = -r*b01 < 0
            let c = CanonicalSystem::new(alpha, beta, 1.0, a01, b10, b01);
            let rep = polycycle_report(&c);
            if !rep.exists {
                continue;
            }
            let k = discriminants(&c).k;
            if k.abs() < 1e-10 {
                continue;
            }
            done += 1;
            assert_eq!(rep.r_gamma > 1.0, k > 0.0, "r_gamma {} vs K {}", rep.r_gamma, k);
        }
    }

    #[test]
    fn limit_cycle_criterion_examples() {
        let with_cycle = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -0.5);
        assert!(limit_cycle_exists(&with_cycle).unwrap());
        let without = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -4.0, -2.0);
        let d = discriminants(&without);
        assert!((d.t - 0.25).abs() < 1e-12 && (d.k - 0.5).abs() < 1e-12);
        assert!(!limit_cycle_exists(&without).unwrap());
    }

    #[test]
    fn weak_focus_has_no_cycle_by_criterion() {
        // T = 0 via b01 = -1 at alpha = beta = 1/2; polycycle configuration holds.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -2.0, -1.0);
        let d = discriminants(&c);
        assert!(d.t.abs() <= ZERO_TOL);
        assert!(!limit_cycle_exists(&c).unwrap());
    }

    #[test]
    fn criterion_rejects_saddle_origin() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 5.0, 1.0, -0.5);
        assert!(matches!(limit_cycle_exists(&c), Err(Error::HypothesesNotMet { .. })));
    }

    #[test]
    fn audit_passes_on_clean_case() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -0.5);
        let audit = genericity_audit(&c, Some(&[]));
        assert!(audit.pass, "{:?}", audit.items);
    }

    #[test]
    fn audit_fails_on_boundary_alpha() {
        let c = CanonicalSystem::new(0.0, 0.6, 1.0, 1.0, 0.7, 1.0);
        let audit = genericity_audit(&c, None);
        assert!(!audit.items[0].pass, "alpha = 0 must break hyperbolicity");
        assert!(!audit.pass);
    }

    #[test]
    fn audit_fails_on_ratio_one_polycycle() {
        // K = 0 with the polycycle present: r(Γ) = 1.
        // alpha = beta = 1/2 makes K = -b01/4 * (r + a01) with b10 = -r b01; pick r = -a01.
        let a01 = 3.0;
        let b01 = -0.5;
        let b10 = a01 * b01; // r = -a01  =>  b10 = -r b01 = a01*b01
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, a01, b10, b01);
        let d = discriminants(&c);
        assert!(d.k.abs() < 1e-12, "K = {}", d.k);
        let rep = polycycle_report(&c);
        assert!(rep.exists);
        assert_eq!(rep.stability, PolycycleStability::Inconclusive);
        let audit = genericity_audit(&c, None);
        assert!(!audit.items[3].pass);
    }
}
