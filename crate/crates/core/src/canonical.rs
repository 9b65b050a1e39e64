//! Canonical octothorpe-centered form, the nine origin positions, and the
//! symmetry maps that reduce everything to positions 1–3 and their families.

use crate::algebra::{Mat2, Vec2, ZERO_TOL};
use crate::error::{Error, Result};
use crate::replicator::RawSystem;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Interior equilibrium of the raw system, solved by Cramer's rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InteriorPoint {
    pub p1: f64,
    pub p2: f64,
}

/// A symmetry of the family, recorded in the transform log.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TransformStep {
    Phi1,
    Phi2,
    Phi3,
    Phi4,
    Phi5,
    TimeReversal,
    TimeScale(f64),
}

impl TransformStep {
    pub fn inverse(self) -> TransformStep {
        match self {
            TransformStep::TimeScale(l) => TransformStep::TimeScale(1.0 / l),
            other => other, // the maps and time reversal are involutions
        }
    }

    /// Point map on the phase plane.
    pub fn map_point(self, p: Vec2) -> Vec2 {
        match self {
            TransformStep::Phi1 => Vec2::new(p.y, p.x),
            TransformStep::Phi2 => Vec2::new(-p.y, -p.x),
            TransformStep::Phi3 => Vec2::new(-p.x, p.y),
            TransformStep::Phi4 => Vec2::new(p.x, -p.y),
            TransformStep::Phi5 => Vec2::new(-p.x, -p.y),
            TransformStep::TimeReversal | TransformStep::TimeScale(_) => p,
        }
    }

    /// Linear part of the point map, applied to a velocity.
    pub fn map_velocity(self, v: Vec2) -> Vec2 {
        match self {
            TransformStep::TimeReversal => Vec2::new(-v.x, -v.y),
            TransformStep::TimeScale(l) => Vec2::new(v.x / l, v.y / l),
            m => m.map_point(v),
        }
    }

    pub fn flips_time(self) -> bool {
        matches!(self, TransformStep::TimeReversal)
    }
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformStep::Phi1 => write!(f, "phi1"),
            TransformStep::Phi2 => write!(f, "phi2"),
            TransformStep::Phi3 => write!(f, "phi3"),
            TransformStep::Phi4 => write!(f, "phi4"),
            TransformStep::Phi5 => write!(f, "phi5"),
            TransformStep::TimeReversal => write!(f, "time_reversal"),
            TransformStep::TimeScale(l) => write!(f, "time_scale({l})"),
        }
    }
}

impl FromStr for TransformStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi1" => Ok(TransformStep::Phi1),
            "phi2" => Ok(TransformStep::Phi2),
            "phi3" => Ok(TransformStep::Phi3),
            "phi4" => Ok(TransformStep::Phi4),
            "phi5" => Ok(TransformStep::Phi5),
            "time_reversal" => Ok(TransformStep::TimeReversal),
            other => {
                if let Some(arg) = other.strip_prefix("time_scale(").and_then(|r| r.strip_suffix(')')) {
                    let l: f64 = arg.parse().map_err(|_| Error::UnknownMap(other.to_string()))?;
                    if l > 0.0 {
                        return Ok(TransformStep::TimeScale(l));
                    }
                    return Err(Error::BadTimeScale(l));
                }
                Err(Error::UnknownMap(other.to_string()))
            }
        }
    }
}

/// System in the form
/// ẋ = (x+α)(x+α−1)(a10·x + a01·y), ẏ = (y+β)(y+β−1)(b10·x + b01·y),
/// together with the log of symmetries applied to reach it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalSystem {
    pub alpha: f64,
    pub beta: f64,
    pub a10: f64,
    pub a01: f64,
    pub b10: f64,
    pub b01: f64,
    pub transform_log: Vec<TransformStep>,
}

impl CanonicalSystem {
    pub fn new(alpha: f64, beta: f64, a10: f64, a01: f64, b10: f64, b01: f64) -> Self {
        CanonicalSystem { alpha, beta, a10, a01, b10, b01, transform_log: Vec::new() }
    }

    pub fn eval(&self, p: Vec2) -> Vec2 {
        let (x, y) = (p.x, p.y);
        Vec2::new(
            (x + self.alpha) * (x + self.alpha - 1.0) * (self.a10 * x + self.a01 * y),
            (y + self.beta) * (y + self.beta - 1.0) * (self.b10 * x + self.b01 * y),
        )
    }

    /// Analytic Jacobian of the field.
    pub fn jacobian(&self, p: Vec2) -> Mat2 {
        let (x, y) = (p.x, p.y);
        let u = x + self.alpha;
        let f1 = self.a10 * x + self.a01 * y;
        let v = y + self.beta;
        let f2 = self.b10 * x + self.b01 * y;
        Mat2::new(
            (2.0 * u - 1.0) * f1 + u * (u - 1.0) * self.a10,
            u * (u - 1.0) * self.a01,
            v * (v - 1.0) * self.b10,
            (2.0 * v - 1.0) * f2 + v * (v - 1.0) * self.b01,
        )
    }

    /// Linear block A = [[a10, a01], [b10, b01]].
    pub fn linear_block(&self) -> Mat2 {
        Mat2::new(self.a10, self.a01, self.b10, self.b01)
    }

    pub fn det_a(&self) -> f64 {
        self.a10 * self.b01 - self.a01 * self.b10
    }

    /// Reconstruct the raw system this canonical form came from, ignoring the
    /// transform log (translation only).
    pub fn to_raw(&self) -> RawSystem {
        RawSystem {
            a00: -(self.a10 * self.alpha + self.a01 * self.beta),
            a10: self.a10,
            a01: self.a01,
            b00: -(self.b10 * self.alpha + self.b01 * self.beta),
            b10: self.b10,
            b01: self.b01,
        }
    }

    /// True when time reversal was applied an odd number of times; stability
    /// read off this system is flipped relative to the original.
    pub fn time_reversed(&self) -> bool {
        self.transform_log.iter().filter(|s| s.flips_time()).count() % 2 == 1
    }

    /// Net time-scale factor accumulated in the log.
    pub fn time_scale_factor(&self) -> f64 {
        self.transform_log
            .iter()
            .map(|s| if let TransformStep::TimeScale(l) = s { *l } else { 1.0 })
            .product()
    }
}

/// Position of the origin relative to the octothorpe lines
/// x = −α, x = 1−α, y = −β, y = 1−β.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OctothorpePosition {
    pub index: u8,
    pub boundary_flag: bool,
}

/// Cramer solution of A·p = (−a00, −b00).
pub fn interior_equilibrium(s: &RawSystem) -> Result<InteriorPoint> {
    let a = Mat2::new(s.a10, s.a01, s.b10, s.b01);
    let det = a.det();
    if det.abs() <= ZERO_TOL {
        return Err(Error::SingularPayoffMatrix { det });
    }
    let p = a.solve(Vec2::new(-s.a00, -s.b00)).expect("det checked above");
    Ok(InteriorPoint { p1: p.x, p2: p.y })
}

/// Translate the raw system so the interior equilibrium sits at the origin.
pub fn to_canonical(s: &RawSystem) -> Result<CanonicalSystem> {
    let p = interior_equilibrium(s)?;
    Ok(CanonicalSystem::new(p.p1, p.p2, s.a10, s.a01, s.b10, s.b01))
}

/// Which of the nine octothorpe regions the origin occupies.
pub fn position_of_origin(c: &CanonicalSystem) -> OctothorpePosition {
    let near = |v: f64, t: f64| (v - t).abs() <= ZERO_TOL;
    let boundary_flag =
        near(c.alpha, 0.0) || near(c.alpha, 1.0) || near(c.beta, 0.0) || near(c.beta, 1.0);
    // Column: left (α<0), middle (0..1), right (α>1); row likewise for β.
    let col = if c.alpha > 1.0 {
        2
    } else if c.alpha < 0.0 {
        0
    } else {
        1
    };
    let row = if c.beta > 1.0 {
        2
    } else if c.beta < 0.0 {
        0
    } else {
        1
    };
    let index = match (col, row) {
        (1, 1) => 1,
        (2, 1) => 2,
        (2, 2) => 3,
        (1, 2) => 4,
        (0, 2) => 5,
        (0, 1) => 6,
        (0, 0) => 7,
        (1, 0) => 8,
        (2, 0) => 9,
        _ => unreachable!(),
    };
    OctothorpePosition { index, boundary_flag }
}

/// Apply one symmetry to the parameters, appending it to the log.
pub fn apply_symmetry(c: &CanonicalSystem, step: TransformStep) -> Result<CanonicalSystem> {
    let (alpha, beta, a10, a01, b10, b01) = (c.alpha, c.beta, c.a10, c.a01, c.b10, c.b01);
    let (alpha, beta, a10, a01, b10, b01) = match step {
        TransformStep::Phi1 => (beta, alpha, b01, b10, a01, a10),
        TransformStep::Phi2 => (1.0 - beta, 1.0 - alpha, b01, b10, a01, a10),
        TransformStep::Phi3 => (1.0 - alpha, beta, a10, -a01, -b10, b01),
        TransformStep::Phi4 => (alpha, 1.0 - beta, a10, -a01, -b10, b01),
        TransformStep::Phi5 => (1.0 - alpha, 1.0 - beta, a10, a01, b10, b01),
        TransformStep::TimeReversal => (alpha, beta, -a10, -a01, -b10, -b01),
        TransformStep::TimeScale(l) => {
            if l <= 0.0 {
                return Err(Error::BadTimeScale(l));
            }
            (alpha, beta, a10 / l, a01 / l, b10 / l, b01 / l)
        }
    };
    let mut out = CanonicalSystem { alpha, beta, a10, a01, b10, b01, transform_log: c.transform_log.clone() };
    out.transform_log.push(step);
    Ok(out)
}

/// Undo the whole transform log, recovering the system it started from.
pub fn replay_inverse(c: &CanonicalSystem) -> Result<CanonicalSystem> {
    let mut cur = CanonicalSystem {
        alpha: c.alpha,
        beta: c.beta,
        a10: c.a10,
        a01: c.a01,
        b10: c.b10,
        b01: c.b01,
        transform_log: Vec::new(),
    };
    for step in c.transform_log.iter().rev() {
        cur = apply_symmetry(&cur, step.inverse())?;
    }
    cur.transform_log.clear();
    Ok(cur)
}

/// Family tag produced by [`normalize_to_family`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyTag {
    /// Representative position after reduction: 1, 2 or 3.
    pub position: u8,
    /// Family index within the position table: 1–4 (positions 1, 2) or 1–6 (position 3).
    pub family: u8,
}

fn family_index(position: u8, a10: f64, b10: f64, b01: f64) -> Option<u8> {
    if a10 > 0.0 {
        Some(match (b10 >= 0.0, b01 > 0.0) {
            (true, true) => 1,
            (true, false) => 2,
            (false, true) => 3,
            (false, false) => 4,
        })
    } else if position == 3 {
        if b10 >= 0.0 && b01 < 0.0 {
            Some(5)
        } else if b10 <= 0.0 && b01 > 0.0 {
            Some(6)
        } else {
            None
        }
    } else {
        None
    }
}

/// All candidate map sequences over `maps`, shortest first, then lexicographic
/// in the fixed map order. Order is what makes the normalization deterministic.
fn candidate_sequences(maps: &[TransformStep]) -> Vec<Vec<TransformStep>> {
    let n = maps.len();
    let mut subsets: Vec<Vec<usize>> = (0..1u32 << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| maps[i]).collect())
        .collect()
}

/// Reduce a generic system to its representative family of positions 1–3:
/// position moved into {1,2,3}, a10 scaled to 1 when positive, a01 ≥ 0,
/// β ≥ 1/2 for position 1, with every step recorded in the transform log.
pub fn normalize_to_family(c: &CanonicalSystem) -> Result<(CanonicalSystem, FamilyTag)> {
    let pos = position_of_origin(c);
    if pos.boundary_flag {
        return Err(Error::NonGeneric {
            reason: format!("alpha or beta on an octothorpe line (alpha={}, beta={})", c.alpha, c.beta),
        });
    }
    let gate = c.a10 * c.b01 * c.det_a();
    if gate.abs() <= ZERO_TOL {
        return Err(Error::NonGeneric { reason: format!("a10*b01*detA = {gate:e} vanishes") });
    }

    // Move the position into {1, 2, 3}.
    let mut cur = c.clone();
    let pre = match pos.index {
        1 | 2 | 3 => None,
        4 => Some(TransformStep::Phi1),
        5 => Some(TransformStep::Phi3),
        6 => Some(TransformStep::Phi3),
        7 => Some(TransformStep::Phi2),
        8 => Some(TransformStep::Phi2),
        9 => Some(TransformStep::Phi4),
        _ => unreachable!(),
    };
    if let Some(m) = pre {
        cur = apply_symmetry(&cur, m)?;
    }
    let position = position_of_origin(&cur).index;
    debug_assert!(matches!(position, 1 | 2 | 3));

    // Fix the coefficient signs (and β for position 1) with the maps that
    // preserve the position.
    let maps: &[TransformStep] = match position {
        1 => &[TransformStep::Phi4, TransformStep::Phi5, TransformStep::TimeReversal],
        2 => &[TransformStep::Phi4, TransformStep::TimeReversal],
        3 => &[TransformStep::Phi1, TransformStep::TimeReversal],
        _ => unreachable!(),
    };
    let satisfies = |s: &CanonicalSystem, require_a10_pos: bool| -> bool {
        let sign_ok = if require_a10_pos { s.a10 > 0.0 } else { true };
        let a01_ok = s.a01 >= 0.0;
        let beta_ok = if position == 1 { s.beta >= 0.5 } else { true };
        sign_ok && a01_ok && beta_ok && family_index(position, s.a10, s.b10, s.b01).is_some()
    };
    let mut chosen: Option<CanonicalSystem> = None;
    for require_a10_pos in [true, false] {
        if chosen.is_some() {
            break;
        }
        for seq in candidate_sequences(maps) {
            let mut trial = cur.clone();
            for m in &seq {
                trial = apply_symmetry(&trial, *m)?;
            }
            if satisfies(&trial, require_a10_pos) {
                chosen = Some(trial);
                break;
            }
        }
        // Only position 3 admits families with a10 < 0.
        if position != 3 {
            break;
        }
    }
    let mut out = chosen.ok_or_else(|| Error::NonGeneric {
        reason: "no symmetry sequence reaches a table family".to_string(),
    })?;

    if out.a10 > 0.0 && (out.a10 - 1.0).abs() > 0.0 {
        out = apply_symmetry(&out, TransformStep::TimeScale(out.a10))?;
        out.a10 = 1.0; // kill the last-bit rounding of a10/a10
    }
    let family = family_index(position, out.a10, out.b10, out.b01)
        .expect("family checked during selection");
    Ok((out, FamilyTag { position, family }))
}
