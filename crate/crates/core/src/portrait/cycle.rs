//! Poincaré return map on the segment from the origin toward p3, and
//! bisection-based limit-cycle detection.

use crate::algebra::Vec2;
use crate::canonical::CanonicalSystem;
use crate::error::{Error, Result};
use crate::portrait::integrate::Controls;
use serde::{Deserialize, Serialize};

/// Fixed-point location tolerance of the bisection.
const CYCLE_TOL: f64 = 1e-10;

/// Outcome of one first-return computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReturnOutcome {
    /// Crossed the section again at this radius.
    Return(f64),
    /// Entered the origin ball without returning.
    FellToOrigin,
    /// Approached the square boundary without returning.
    HitBoundary,
    /// Left the central square or exceeded the time budget.
    Failed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleInfo {
    /// Radius of the section fixed point.
    pub radius: f64,
    /// Crossing point in canonical plane coordinates.
    pub point: Vec2,
    /// Return-map derivative at the fixed point; > 1 means unstable.
    pub multiplier: f64,
    /// Closed orbit sampled over one period, canonical plane coordinates.
    pub orbit: Vec<Vec2>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum CycleSearch {
    None,
    Cycle(CycleInfo),
    /// Return map is the identity to tolerance: period annulus around a center.
    CenterLike,
}

/// Section direction and usable radius range within the central square.
fn section(c: &CanonicalSystem) -> (Vec2, f64) {
    let dir = Vec2::new(1.0 - c.alpha, 1.0 - c.beta).normalized();
    let tx = if dir.x > 1e-12 { (1.0 - c.alpha) / dir.x } else { f64::INFINITY };
    let ty = if dir.y > 1e-12 { (1.0 - c.beta) / dir.y } else { f64::INFINITY };
    (dir, 0.98 * tx.min(ty))
}

fn rk4_step(c: &CanonicalSystem, p: Vec2, h: f64) -> Vec2 {
    let k1 = c.eval(p);
    let k2 = c.eval(p.add(k1.scale(h / 2.0)));
    let k3 = c.eval(p.add(k2.scale(h / 2.0)));
    let k4 = c.eval(p.add(k3.scale(h)));
    p.add(k1.add(k2.scale(2.0)).add(k3.scale(2.0)).add(k4).scale(h / 6.0))
}

/// First return of the forward orbit from radius r on the section ray.
/// RK4 with a fixed small step plus a refined section crossing; the cycle
/// radius itself is later pinned by bisection, which only needs the sign
/// of P(r) − r.
fn first_return(c: &CanonicalSystem, dir: Vec2, r: f64, r_max: f64, ctl: &Controls) -> ReturnOutcome {
    let mut p = dir.scale(r);
    let mut angle_total = 0.0;
    let origin_ball = 1e-7_f64.max(ctl.sing_ball * 1e-2);
    let h_base = 2e-3;
    let mut steps = 0usize;
    let max_steps = 3_000_000;
    loop {
        steps += 1;
        if steps > max_steps {
            return ReturnOutcome::Failed;
        }
        let v = c.eval(p);
        let speed = v.norm();
        if speed < 1e-14 {
            return ReturnOutcome::Failed;
        }
        let h = (h_base / speed).min(0.05);
        let next = rk4_step(c, p, h);

        let a = p;
        let b = next;
        // winding bookkeeping
        let da = a.cross(b).atan2(a.dot(b).max(1e-300));
        angle_total += da;

        // section crossing: sign change of cross(dir, p) with dot > 0,
        // only after at least half a turn
        if angle_total.abs() > std::f64::consts::PI {
            let sa = dir.cross(a);
            let sb = dir.cross(b);
            if sa.signum() != sb.signum() && dir.dot(a) > 0.0 && dir.dot(b) > 0.0 {
                // refine the substep length until the step lands on the section
                let mut t_lo = 0.0_f64;
                let mut t_hi = h;
                let mut f_lo = sa;
                let mut hit = b;
                for _ in 0..60 {
                    let t = if (t_hi - t_lo) > 0.0 {
                        // secant from the bracket endpoints
                        let f_hi = dir.cross(rk4_step(c, a, t_hi));
                        let denom = f_hi - f_lo;
                        if denom.abs() > 1e-300 {
                            (t_lo - f_lo * (t_hi - t_lo) / denom).clamp(
                                t_lo + 0.01 * (t_hi - t_lo),
                                t_hi - 0.01 * (t_hi - t_lo),
                            )
                        } else {
                            0.5 * (t_lo + t_hi)
                        }
                    } else {
                        break;
                    };
                    let q = rk4_step(c, a, t);
                    let f = dir.cross(q);
                    hit = q;
                    if f.abs() < 1e-15 || (t_hi - t_lo) < 1e-16 {
                        break;
                    }
                    if f.signum() == f_lo.signum() {
                        t_lo = t;
                        f_lo = f;
                    } else {
                        t_hi = t;
                    }
                }
                let r_hit = dir.dot(hit);
                if r_hit > 0.0 {
                    return ReturnOutcome::Return(r_hit);
                }
            }
        }
        p = next;
        if p.norm() < origin_ball {
            return ReturnOutcome::FellToOrigin;
        }
        let inside = p.x > -c.alpha && p.x < 1.0 - c.alpha && p.y > -c.beta && p.y < 1.0 - c.beta;
        if !inside {
            return ReturnOutcome::Failed;
        }
        let margin = (p.x + c.alpha)
            .min(1.0 - c.alpha - p.x)
            .min(p.y + c.beta)
            .min(1.0 - c.beta - p.y);
        if margin < 1e-9 {
            return ReturnOutcome::HitBoundary;
        }
        let _ = r_max;
    }
}

/// Displacement sign of the return map: +1 outward, -1 inward, None unusable.
fn displacement_sign(c: &CanonicalSystem, dir: Vec2, r: f64, r_max: f64, ctl: &Controls) -> Option<f64> {
    match first_return(c, dir, r, r_max, ctl) {
        ReturnOutcome::Return(r2) => {
            if (r2 - r).abs() <= 1e-14 * r.max(1.0) {
                Some(0.0)
            } else {
                Some((r2 - r).signum())
            }
        }
        ReturnOutcome::FellToOrigin => Some(-1.0),
        ReturnOutcome::HitBoundary => Some(1.0),
        ReturnOutcome::Failed => None,
    }
}

/// Return map value where defined.
pub fn return_map(c: &CanonicalSystem, r: f64, ctl: &Controls) -> Option<f64> {
    let (dir, r_max) = section(c);
    match first_return(c, dir, r, r_max, ctl) {
        ReturnOutcome::Return(r2) => Some(r2),
        _ => None,
    }
}

/// Scan the section for an isolated fixed point of the first-return map.
/// `hint` optionally restricts the annulus searched.
pub fn detect_limit_cycle(
    c: &CanonicalSystem,
    hint: Option<(f64, f64)>,
    ctl: &Controls,
) -> Result<CycleSearch> {
    let (dir, r_max) = section(c);
    let (lo, hi) = match hint {
        Some((a, b)) => (a.max(1e-4 * r_max), b.min(r_max)),
        None => (0.02 * r_max, 0.98 * r_max),
    };
    if !(hi > lo) {
        return Err(Error::HypothesesNotMet { reason: "empty search annulus".to_string() });
    }

    const GRID: usize = 24;
    let mut marks: Vec<(f64, f64)> = Vec::new(); // (radius, displacement sign)
    let mut center_votes = 0usize;
    let mut defined = 0usize;
    for k in 0..=GRID {
        let r = lo + (hi - lo) * k as f64 / GRID as f64;
        if let ReturnOutcome::Return(r2) = first_return(c, dir, r, r_max, ctl) {
            defined += 1;
            if (r2 - r).abs() <= 1e-6 * r {
                center_votes += 1;
            }
        }
        if let Some(s) = displacement_sign(c, dir, r, r_max, ctl) {
            marks.push((r, s));
        }
    }
    if defined >= GRID / 2 && center_votes >= defined.saturating_sub(1) && defined > 3 {
        return Ok(CycleSearch::CenterLike);
    }

    // bracket sign changes
    let mut cycle: Option<CycleInfo> = None;
    for w in marks.windows(2) {
        let (r1, s1) = w[0];
        let (r2, s2) = w[1];
        if s1 == 0.0 || s2 == 0.0 || s1 == s2 {
            continue;
        }
        // bisection
        let (mut a, mut b) = (r1, r2);
        let mut sa = s1;
        for _ in 0..64 {
            if (b - a) <= CYCLE_TOL {
                break;
            }
            let m = 0.5 * (a + b);
            match displacement_sign(c, dir, m, r_max, ctl) {
                Some(sm) if sm == sa => a = m,
                Some(_) => b = m,
                None => break,
            }
            sa = if sa == s1 { s1 } else { sa };
        }
        let r_star = 0.5 * (a + b);
        // multiplier by difference quotient of the return map
        let dh = (1e-5 * r_star).max(1e-9);
        let (pm, pp) = (return_map(c, r_star - dh, ctl), return_map(c, r_star + dh, ctl));
        let multiplier = match (pm, pp) {
            (Some(m), Some(p)) => (p - m) / (2.0 * dh),
            _ => f64::NAN,
        };
        // sample the closed orbit for rendering
        let orbit = sample_orbit(c, dir.scale(r_star));
        let info = CycleInfo { radius: r_star, point: dir.scale(r_star), multiplier, orbit };
        if let Some(prev) = &cycle {
            if (prev.radius - info.radius).abs() > 1e-6 {
                // A second isolated cycle contradicts the uniqueness theorem
                // for this family; report the inner one and keep going.
                continue;
            }
        }
        cycle = Some(info);
    }
    Ok(match cycle {
        Some(info) => CycleSearch::Cycle(info),
        None => CycleSearch::None,
    })
}

fn sample_orbit(c: &CanonicalSystem, start: Vec2) -> Vec<Vec2> {
    let mut p = start;
    let mut out = vec![p];
    let mut angle = 0.0;
    for _ in 0..200_000 {
        let v = c.eval(p);
        let speed = v.norm();
        if speed < 1e-14 {
            break;
        }
        let h = (2e-3 / speed).min(0.05);
        let k1 = v;
        let k2 = c.eval(p.add(k1.scale(h / 2.0)));
        let k3 = c.eval(p.add(k2.scale(h / 2.0)));
        let k4 = c.eval(p.add(k3.scale(h)));
        let next = p.add(k1.add(k2.scale(2.0)).add(k3.scale(2.0)).add(k4).scale(h / 6.0));
        angle += p.cross(next).atan2(p.dot(next).max(1e-300));
        p = next;
        out.push(p);
        if angle.abs() >= 2.0 * std::f64::consts::PI {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unstable_cycle_detected() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -0.5);
        let found = detect_limit_cycle(&c, None, &Controls::default()).unwrap();
        match found {
            CycleSearch::Cycle(info) => {
                assert!(info.multiplier > 1.0, "multiplier {}", info.multiplier);
                assert!(info.radius > 0.0 && info.radius.is_finite());
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn no_cycle_when_criterion_says_no() {
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -4.0, -2.0);
        let found = detect_limit_cycle(&c, None, &Controls::default()).unwrap();
        assert!(matches!(found, CycleSearch::None), "got {found:?}");
    }

    #[test]
    fn center_flagged() {
        // T = 0, a01 = -b10: center at the origin.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 2.0, -2.0, -1.0);
        let found = detect_limit_cycle(&c, None, &Controls::default()).unwrap();
        assert!(matches!(found, CycleSearch::CenterLike), "got {found:?}");
    }
}
