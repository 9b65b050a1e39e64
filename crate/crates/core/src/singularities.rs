//! Finite singularities of the canonical system: the four octothorpe
//! intersections (p), the four line/kernel intersections (q), the origin,
//! and the relative-position predicates that drive classification.

use crate::algebra::{EigenPair, Mat2, Sign, Vec2, ZERO_TOL};
use crate::canonical::CanonicalSystem;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Relative hyperbolicity threshold on |Re λ| / ‖J‖.
pub const HYPERBOLICITY_TOL: f64 = 1e-10;

/// Linear forms f1(x,y) = a10·x + a01·y and f2(x,y) = b10·x + b01·y whose
/// kernels carry the q-singularities.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LinearForms {
    pub a10: f64,
    pub a01: f64,
    pub b10: f64,
    pub b01: f64,
}

impl LinearForms {
    pub fn of(c: &CanonicalSystem) -> Self {
        LinearForms { a10: c.a10, a01: c.a01, b10: c.b10, b01: c.b01 }
    }

    pub fn f1(&self, p: Vec2) -> f64 {
        self.a10 * p.x + self.a01 * p.y
    }

    pub fn f2(&self, p: Vec2) -> f64 {
        self.b10 * p.x + self.b01 * p.y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SingId {
    Origin,
    P1,
    P2,
    P3,
    P4,
    Q1,
    Q2,
    Q3,
    Q4,
    /// Pole of the x-direction chart (positive end) and its antipode.
    InfXPos,
    InfXNeg,
    /// Pole of the y-direction chart (positive end) and its antipode.
    InfYPos,
    InfYNeg,
    /// Roots of the equatorial polynomial in the x-chart, plus antipodes.
    InfRootPlus,
    InfRootPlusAnti,
    InfRootMinus,
    InfRootMinusAnti,
}

impl fmt::Display for SingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SingId::Origin => "origin",
            SingId::P1 => "p1",
            SingId::P2 => "p2",
            SingId::P3 => "p3",
            SingId::P4 => "p4",
            SingId::Q1 => "q1",
            SingId::Q2 => "q2",
            SingId::Q3 => "q3",
            SingId::Q4 => "q4",
            SingId::InfXPos => "inf_x_pos",
            SingId::InfXNeg => "inf_x_neg",
            SingId::InfYPos => "inf_y_pos",
            SingId::InfYNeg => "inf_y_neg",
            SingId::InfRootPlus => "inf_root_plus",
            SingId::InfRootPlusAnti => "inf_root_plus_anti",
            SingId::InfRootMinus => "inf_root_minus",
            SingId::InfRootMinusAnti => "inf_root_minus_anti",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Location {
    Finite(Vec2),
    /// Point on the equator of the Poincaré sphere, as an angle in the disk.
    Infinity { angle: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalType {
    Saddle,
    StableNode,
    UnstableNode,
    StableFocus,
    UnstableFocus,
    WeakStableFocus,
    WeakUnstableFocus,
    Center,
    NonHyperbolic,
    Undefined,
}

impl LocalType {
    pub fn is_saddle(self) -> bool {
        matches!(self, LocalType::Saddle)
    }

    pub fn is_attracting(self) -> bool {
        matches!(self, LocalType::StableNode | LocalType::StableFocus | LocalType::WeakStableFocus)
    }

    pub fn is_repelling(self) -> bool {
        matches!(
            self,
            LocalType::UnstableNode | LocalType::UnstableFocus | LocalType::WeakUnstableFocus
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularityReport {
    pub id: SingId,
    pub location: Location,
    pub jacobian: Mat2,
    pub eigenvalues: EigenPair,
    pub local_type: LocalType,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// Hyperbolic type from the Jacobian, or NonHyperbolic when an eigenvalue's
/// real part falls under the relative threshold.
pub fn hyperbolic_type(j: Mat2) -> (EigenPair, LocalType) {
    let eig = j.eigenvalues();
    let scale = j.norm().max(f64::MIN_POSITIVE);
    let ty = match eig {
        EigenPair::Real(l1, l2) => {
            if l1.abs() <= HYPERBOLICITY_TOL * scale || l2.abs() <= HYPERBOLICITY_TOL * scale {
                LocalType::NonHyperbolic
            } else if l1 * l2 < 0.0 {
                LocalType::Saddle
            } else if l1 > 0.0 {
                LocalType::UnstableNode
            } else {
                LocalType::StableNode
            }
        }
        EigenPair::Complex { re, .. } => {
            if re.abs() <= HYPERBOLICITY_TOL * scale {
                LocalType::NonHyperbolic
            } else if re > 0.0 {
                LocalType::UnstableFocus
            } else {
                LocalType::StableFocus
            }
        }
    };
    (eig, ty)
}

fn report(id: SingId, loc: Vec2, j: Mat2) -> SingularityReport {
    let (eigenvalues, local_type) = hyperbolic_type(j);
    SingularityReport {
        id,
        location: Location::Finite(loc),
        jacobian: j,
        eigenvalues,
        local_type,
        notes: None,
    }
}

/// Locations of the four octothorpe intersections.
pub fn p_locations(c: &CanonicalSystem) -> [Vec2; 4] {
    let (a, b) = (c.alpha, c.beta);
    [
        Vec2::new(-a, -b),
        Vec2::new(1.0 - a, -b),
        Vec2::new(1.0 - a, 1.0 - b),
        Vec2::new(-a, 1.0 - b),
    ]
}

/// The p-singularities with their diagonal Jacobians.
pub fn p_singularities(c: &CanonicalSystem) -> [SingularityReport; 4] {
    let lf = LinearForms::of(c);
    let [p1, p2, p3, p4] = p_locations(c);
    [
        report(SingId::P1, p1, Mat2::diag(-lf.f1(p1), -lf.f2(p1))),
        report(SingId::P2, p2, Mat2::diag(lf.f1(p2), -lf.f2(p2))),
        report(SingId::P3, p3, Mat2::diag(lf.f1(p3), lf.f2(p3))),
        report(SingId::P4, p4, Mat2::diag(-lf.f1(p4), lf.f2(p4))),
    ]
}

/// Locations of the q-singularities; None where the defining denominator vanishes.
pub fn q_locations(c: &CanonicalSystem) -> [Option<Vec2>; 4] {
    let (a, b) = (c.alpha, c.beta);
    let q13 = c.a10.abs() > ZERO_TOL;
    let q24 = c.b01.abs() > ZERO_TOL;
    [
        q13.then(|| Vec2::new(c.a01 / c.a10 * b, -b)),
        q24.then(|| Vec2::new(1.0 - a, c.b10 / c.b01 * (a - 1.0))),
        q13.then(|| Vec2::new(c.a01 / c.a10 * (b - 1.0), 1.0 - b)),
        q24.then(|| Vec2::new(-a, c.b10 / c.b01 * a)),
    ]
}

/// The q-singularities. Entries whose denominator vanishes are reported as
/// `Undefined` rather than omitted.
pub fn q_singularities(c: &CanonicalSystem) -> [SingularityReport; 4] {
    let ids = [SingId::Q1, SingId::Q2, SingId::Q3, SingId::Q4];
    let locs = q_locations(c);
    let mut out = Vec::with_capacity(4);
    for (id, loc) in ids.into_iter().zip(locs) {
        match loc {
            Some(p) => {
                // Exact triangular structure, off-diagonal from the analytic Jacobian.
                out.push(report(id, p, c.jacobian(p)));
            }
            None => out.push(SingularityReport {
                id,
                location: Location::Finite(Vec2::new(f64::NAN, f64::NAN)),
                jacobian: Mat2::diag(0.0, 0.0),
                eigenvalues: EigenPair::Real(0.0, 0.0),
                local_type: LocalType::Undefined,
                notes: Some("defining denominator vanishes".to_string()),
            }),
        }
    }
    out.try_into().expect("four entries")
}

/// Expected Jacobian diagonal of each defined q-singularity.
pub fn q_jacobian_diagonals(c: &CanonicalSystem) -> [Option<(f64, f64)>; 4] {
    let lf = LinearForms::of(c);
    let [p1, p2, p3, p4] = p_locations(c);
    let det_a = c.det_a();
    let q13 = c.a10.abs() > ZERO_TOL;
    let q24 = c.b01.abs() > ZERO_TOL;
    [
        q13.then(|| (lf.f1(p1) * lf.f1(p2) / c.a10, c.beta * det_a / c.a10)),
        q24.then(|| ((1.0 - c.alpha) * det_a / c.b01, lf.f2(p2) * lf.f2(p3) / c.b01)),
        q13.then(|| (lf.f1(p3) * lf.f1(p4) / c.a10, (1.0 - c.beta) * det_a / c.a10)),
        q24.then(|| (c.alpha * det_a / c.b01, lf.f2(p1) * lf.f2(p4) / c.b01)),
    ]
}

/// First focal value of a monodromic origin.
pub fn first_focal_value(c: &CanonicalSystem) -> Option<f64> {
    if c.b10.abs() <= ZERO_TOL {
        return None;
    }
    Some(c.b01 * (c.a01 + c.b10) / (8.0 * c.b10))
}

/// Full decision tree for the origin, including the monodromic branch.
pub fn classify_origin(c: &CanonicalSystem) -> SingularityReport {
    let j = c.jacobian(Vec2::new(0.0, 0.0));
    let eig = j.eigenvalues();
    let position_factor = (c.alpha - 1.0) * c.alpha * (c.beta - 1.0) * c.beta * c.det_a();
    let trace = c.a10 * (c.alpha - 1.0) * c.alpha + c.b01 * (c.beta - 1.0) * c.beta;

    let mut notes = None;
    let local_type = if position_factor < -ZERO_TOL {
        LocalType::Saddle
    } else if position_factor > ZERO_TOL {
        if trace.abs() > ZERO_TOL {
            let (_, ty) = hyperbolic_type(j);
            match ty {
                LocalType::NonHyperbolic => LocalType::NonHyperbolic,
                other => other,
            }
        } else {
            // Monodromic branch: stability from V1 = b01(a01+b10)/(8 b10).
            let v1_numer = c.b01 * (c.a01 + c.b10);
            if v1_numer.abs() <= ZERO_TOL {
                LocalType::Center
            } else if c.b10.abs() <= ZERO_TOL {
                notes = Some(
                    "monodromic origin with b10 = 0 should be impossible for this family".to_string(),
                );
                LocalType::NonHyperbolic
            } else {
                let s = Sign::of(c.b10 * v1_numer, 0.0);
                if s == Sign::Pos {
                    LocalType::WeakUnstableFocus
                } else {
                    // Stated as "weak stable node" in the source material's
                    // proposition; recorded verbatim, classified as a focus.
                    notes = Some("stated as weak stable node; treated as weak stable focus".to_string());
                    LocalType::WeakStableFocus
                }
            }
        }
    } else {
        LocalType::NonHyperbolic
    };
    SingularityReport {
        id: SingId::Origin,
        location: Location::Finite(Vec2::new(0.0, 0.0)),
        jacobian: j,
        eigenvalues: eig,
        local_type,
        notes,
    }
}

/// q_i vs p_j outcome on their shared octothorpe line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    Less,
    Equal,
    Greater,
}

impl Rel {
    fn from_predicate(product: f64, form_value: f64) -> Rel {
        if form_value.abs() <= ZERO_TOL {
            Rel::Equal
        } else if product > 0.0 {
            Rel::Less
        } else {
            Rel::Greater
        }
    }
}

/// The eight relative positions: q1 vs p1/p2, q2 vs p2/p3, q3 vs p3/p4, q4 vs p4/p1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelativePositions {
    pub q1_p1: Rel,
    pub q1_p2: Rel,
    pub q2_p2: Rel,
    pub q2_p3: Rel,
    pub q3_p3: Rel,
    pub q3_p4: Rel,
    pub q4_p4: Rel,
    pub q4_p1: Rel,
}

impl RelativePositions {
    pub fn has_equality(&self) -> bool {
        [
            self.q1_p1, self.q1_p2, self.q2_p2, self.q2_p3, self.q3_p3, self.q3_p4, self.q4_p4,
            self.q4_p1,
        ]
        .iter()
        .any(|r| *r == Rel::Equal)
    }
}

/// Evaluate the eight algebraic predicates; q_i < p_j exactly when the stated
/// product is positive.
pub fn relative_positions(c: &CanonicalSystem) -> RelativePositions {
    let lf = LinearForms::of(c);
    let [p1, p2, p3, p4] = p_locations(c);
    RelativePositions {
        q1_p1: Rel::from_predicate(c.a10 * lf.f1(p1), lf.f1(p1)),
        q1_p2: Rel::from_predicate(c.a10 * lf.f1(p2), lf.f1(p2)),
        q2_p2: Rel::from_predicate(c.b01 * lf.f2(p2), lf.f2(p2)),
        q2_p3: Rel::from_predicate(c.b01 * lf.f2(p3), lf.f2(p3)),
        q3_p3: Rel::from_predicate(c.a10 * lf.f1(p3), lf.f1(p3)),
        q3_p4: Rel::from_predicate(c.a10 * lf.f1(p4), lf.f1(p4)),
        q4_p4: Rel::from_predicate(c.b01 * lf.f2(p4), lf.f2(p4)),
        q4_p1: Rel::from_predicate(c.b01 * lf.f2(p1), lf.f2(p1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn numeric_jacobian(c: &CanonicalSystem, p: Vec2, h: f64) -> Mat2 {
        let fx1 = c.eval(Vec2::new(p.x + h, p.y));
        let fx0 = c.eval(Vec2::new(p.x - h, p.y));
        let fy1 = c.eval(Vec2::new(p.x, p.y + h));
        let fy0 = c.eval(Vec2::new(p.x, p.y - h));
        Mat2::new(
            (fx1.x - fx0.x) / (2.0 * h),
            (fy1.x - fy0.x) / (2.0 * h),
            (fx1.y - fx0.y) / (2.0 * h),
            (fy1.y - fy0.y) / (2.0 * h),
        )
    }

    #[test]
    fn p_locations_direct() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 0.0, 0.0, 1.0);
        let [p1, p2, p3, p4] = p_locations(&c);
        assert_eq!(p1, Vec2::new(-0.5, -0.5));
        assert_eq!(p2, Vec2::new(0.5, -0.5));
        assert_eq!(p3, Vec2::new(0.5, 0.5));
        assert_eq!(p4, Vec2::new(-0.5, 0.5));
    }

    #[test]
    fn p1_saddle_example() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -0.5);
        let reps = p_singularities(&c);
        // f1(p1) = -2, f2(p1) = 0.75
        assert_eq!(reps[0].jacobian, Mat2::diag(2.0, -0.75));
        assert_eq!(reps[0].local_type, LocalType::Saddle);
    }

    #[test]
    fn p_jacobians_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let c = CanonicalSystem::new(
                rng.gen_range(0.1..0.9),
                rng.gen_range(0.1..0.9),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            for rep in p_singularities(&c) {
                let Location::Finite(p) = rep.location else { panic!() };
                let num = numeric_jacobian(&c, p, 1e-6);
                assert!((rep.jacobian.a - num.a).abs() < 1e-6);
                assert!((rep.jacobian.b - num.b).abs() < 1e-6);
                assert!((rep.jacobian.c - num.c).abs() < 1e-6);
                assert!((rep.jacobian.d - num.d).abs() < 1e-6);
                // Field residual at the reported location.
                let v = c.eval(p);
                assert!(v.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn q_locations_example() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 5.0, 1.0, -0.5);
        let [q1, q2, q3, q4] = q_locations(&c).map(Option::unwrap);
        assert_eq!(q1, Vec2::new(2.5, -0.5));
        assert_eq!(q2, Vec2::new(0.5, 1.0));
        assert_eq!(q3, Vec2::new(-2.5, 0.5));
        assert_eq!(q4, Vec2::new(-0.5, -1.0));
    }

    #[test]
    fn q1_on_axis_when_a01_zero() {
        let c = CanonicalSystem::new(0.3, 0.7, 1.5, 0.0, 0.4, 1.0);
        let q1 = q_locations(&c)[0].unwrap();
        assert_eq!(q1, Vec2::new(0.0, -0.7));
    }

    #[test]
    fn q_diagonals_match_finite_differences_and_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..20 {
            let c = CanonicalSystem::new(
                rng.gen_range(0.1..0.9),
                rng.gen_range(0.1..0.9),
                rng.gen_range(0.3..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.3..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
            );
            let reps = q_singularities(&c);
            let diags = q_jacobian_diagonals(&c);
            for (k, rep) in reps.iter().enumerate() {
                let Some((d1, d2)) = diags[k] else { continue };
                let Location::Finite(p) = rep.location else { panic!() };
                // Stated diagonal matches the analytic Jacobian...
                assert!((rep.jacobian.a - d1).abs() < 1e-9 * (1.0 + d1.abs()), "q{} d1", k + 1);
                assert!((rep.jacobian.d - d2).abs() < 1e-9 * (1.0 + d2.abs()), "q{} d2", k + 1);
                // ...and the triangular zero is structural.
                if k % 2 == 0 {
                    assert!(rep.jacobian.c.abs() < 1e-12, "q1/q3 lower-left zero");
                } else {
                    assert!(rep.jacobian.b.abs() < 1e-12, "q2/q4 upper-right zero");
                }
                let num = numeric_jacobian(&c, p, 1e-6);
                assert!((num.a - d1).abs() < 2e-5 * (1.0 + d1.abs()));
                assert!((num.d - d2).abs() < 2e-5 * (1.0 + d2.abs()));
                let v = c.eval(p);
                assert!(v.norm() < 1e-10 * (1.0 + p.norm().powi(3)));
            }
        }
    }

    #[test]
    fn undefined_q_entries_flagged() {
        let c = CanonicalSystem::new(0.3, 0.7, 0.0, 1.0, 0.4, 1.0);
        let reps = q_singularities(&c);
        assert_eq!(reps[0].local_type, LocalType::Undefined);
        assert_eq!(reps[2].local_type, LocalType::Undefined);
        assert_ne!(reps[1].local_type, LocalType::Undefined);
    }

    #[test]
    fn origin_stable_example() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -0.5);
        // det A = 2.5, position factor 0.15625 > 0, trace -0.125 < 0.
        let rep = classify_origin(&c);
        assert!(rep.local_type.is_attracting(), "got {:?}", rep.local_type);
    }

    #[test]
    fn origin_saddle_when_factor_negative() {
        // Family-2 style: detA < 0, position factor > 0 times detA < 0.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 5.0, 1.0, -0.5);
        assert_eq!(classify_origin(&c).local_type, LocalType::Saddle);
    }

    #[test]
    fn origin_center_when_trace_zero_and_a01_is_minus_b10() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 2.0, -2.0, -1.0);
        let rep = classify_origin(&c);
        assert_eq!(rep.local_type, LocalType::Center);
    }

    #[test]
    fn origin_weak_focus_signs() {
        // trace = 0 via b01 = -a10 at alpha = beta = 1/2.
        let unstable = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -1.0);
        assert_eq!(classify_origin(&unstable).local_type, LocalType::WeakUnstableFocus);
        let stable = CanonicalSystem::new(0.5, 0.5, 1.0, 1.0, -4.0, -1.0);
        // det A = 3 > 0, b10*b01*(a01+b10) = (-4)(-1)(-3) = -12 < 0
        let rep = classify_origin(&stable);
        assert_eq!(rep.local_type, LocalType::WeakStableFocus);
        assert!(rep.notes.as_deref().unwrap_or("").contains("weak stable node"));
    }

    #[test]
    fn relative_positions_example() {
        let c = CanonicalSystem::new(0.5, 0.5, 0.1, 5.0, 1.0, -0.5);
        let rel = relative_positions(&c);
        assert_eq!(rel.q1_p2, Rel::Greater);
        assert_eq!(rel.q2_p3, Rel::Greater);
        assert_eq!(rel.q3_p4, Rel::Less);
        assert_eq!(rel.q4_p1, Rel::Less);
    }

    #[test]
    fn equality_flag_on_exact_alignment() {
        // f1(p2) = a10(1-alpha) + a01(-beta) = 0 with alpha=0.5, beta=0.5, a10=1, a01=1.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 1.0, 0.3, 0.7);
        let rel = relative_positions(&c);
        assert_eq!(rel.q1_p2, Rel::Equal);
        assert!(rel.has_equality());
    }

    #[test]
    fn predicates_agree_with_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mut done = 0;
        while done < 1000 {
            let c = CanonicalSystem::new(
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
            );
            let rel = relative_positions(&c);
            if rel.has_equality() {
                continue;
            }
            done += 1;
            let [p1, p2, p3, p4] = p_locations(&c);
            let [q1, q2, q3, q4] = q_locations(&c).map(Option::unwrap);
            let ord = |qv: f64, pv: f64| if qv < pv { Rel::Less } else { Rel::Greater };
            assert_eq!(rel.q1_p1, ord(q1.x, p1.x));
            assert_eq!(rel.q1_p2, ord(q1.x, p2.x));
            assert_eq!(rel.q2_p2, ord(q2.y, p2.y));
            assert_eq!(rel.q2_p3, ord(q2.y, p3.y));
            assert_eq!(rel.q3_p3, ord(q3.x, p3.x));
            assert_eq!(rel.q3_p4, ord(q3.x, p4.x));
            assert_eq!(rel.q4_p4, ord(q4.y, p4.y));
            assert_eq!(rel.q4_p1, ord(q4.y, p1.y));
        }
    }

    #[test]
    fn eigen_consistency_with_trace_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..200 {
            let c = CanonicalSystem::new(
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.05..0.95),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            for rep in p_singularities(&c).iter().chain(q_singularities(&c).iter()) {
                if rep.local_type == LocalType::Undefined {
                    continue;
                }
                let (s, p) = match rep.eigenvalues {
                    EigenPair::Real(l1, l2) => (l1 + l2, l1 * l2),
                    EigenPair::Complex { re, im } => (2.0 * re, re * re + im * im),
                };
                let j = rep.jacobian;
                assert!((s - j.trace()).abs() <= 1e-12 * (1.0 + j.trace().abs()));
                assert!((p - j.det()).abs() <= 1e-12 * (1.0 + j.det().abs()));
            }
        }
    }

    #[test]
    fn finite_singularity_count_is_odd_for_generic_position_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let mut done = 0;
        while done < 200 {
            let c = CanonicalSystem::new(
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
            );
            if relative_positions(&c).has_equality() || c.det_a().abs() < 1e-3 {
                continue;
            }
            let origin = classify_origin(&c);
            let reports: Vec<_> = std::iter::once(origin)
                .chain(p_singularities(&c))
                .chain(q_singularities(&c))
                .collect();
            if reports.iter().any(|r| {
                !matches!(r.local_type, LocalType::Saddle
                    | LocalType::StableNode
                    | LocalType::UnstableNode
                    | LocalType::StableFocus
                    | LocalType::UnstableFocus)
            }) {
                continue;
            }
            done += 1;
            let mut saddles = 0usize;
            let mut antisaddles = 0usize;
            for rep in &reports {
                match rep.local_type {
                    LocalType::Saddle => saddles += 1,
                    _ => antisaddles += 1,
                }
            }
            assert_eq!(
                (saddles + antisaddles) % 2,
                1,
                "saddles {saddles} antisaddles {antisaddles}"
            );
        }
    }
}
