//! Adaptive integration of the compactified field on the Poincaré sphere.
//!
//! Three coordinate patches cover the northern hemisphere (= the disk): the
//! finite plane, an x-direction chart and a y-direction chart. The direction
//! charts use a signed second coordinate, so one expression covers both ends
//! of the axis; the equator is the coordinate line v = 0.

use crate::algebra::Vec2;
use crate::canonical::CanonicalSystem;
use crate::compactification::{chart_rhs, ChartId};
use crate::error::{Error, Result};
use crate::singularities::SingId;
use serde::{Deserialize, Serialize};

/// Integration controls; defaults follow the separatrix-resolution needs.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Controls {
    pub atol: f64,
    pub rtol: f64,
    /// Maximum displacement per step measured on the disk.
    pub max_disk_step: f64,
    pub max_tau: f64,
    /// Termination ball around target singularities, disk metric.
    pub sing_ball: f64,
    /// Distance for cycle-closure detection against the starting point.
    pub closure_radius: f64,
}

impl Default for Controls {
    fn default() -> Self {
        Controls {
            atol: 1e-10,
            rtol: 1e-9,
            max_disk_step: 1e-2,
            max_tau: 2000.0,
            sing_ball: 1e-5,
            closure_radius: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Patch {
    Plane,
    /// (u, v) = (y/x, 1/x); v of either sign, v = 0 on the equator.
    XDir,
    /// (u, v) = (x/y, 1/y).
    YDir,
}

/// Position in one patch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub patch: Patch,
    pub pos: Vec2,
}

impl State {
    pub fn plane(p: Vec2) -> State {
        State { patch: Patch::Plane, pos: p }
    }

    /// Orthographic disk coordinates of the state (northern hemisphere).
    pub fn disk(&self) -> Vec2 {
        match self.patch {
            Patch::Plane => {
                let (x, y) = (self.pos.x, self.pos.y);
                let n = (1.0 + x * x + y * y).sqrt();
                Vec2::new(x / n, y / n)
            }
            Patch::XDir => {
                let (u, v) = (self.pos.x, self.pos.y);
                let n = (1.0 + u * u + v * v).sqrt();
                let s = if v >= 0.0 { 1.0 } else { -1.0 };
                Vec2::new(s / n, s * u / n)
            }
            Patch::YDir => {
                let (u, v) = (self.pos.x, self.pos.y);
                let n = (1.0 + u * u + v * v).sqrt();
                let s = if v >= 0.0 { 1.0 } else { -1.0 };
                Vec2::new(s * u / n, s / n)
            }
        }
    }

    /// Finite plane coordinates, when off the equator.
    pub fn plane_coords(&self) -> Option<Vec2> {
        match self.patch {
            Patch::Plane => Some(self.pos),
            Patch::XDir => {
                let (u, v) = (self.pos.x, self.pos.y);
                (v != 0.0).then(|| Vec2::new(1.0 / v, u / v))
            }
            Patch::YDir => {
                let (u, v) = (self.pos.x, self.pos.y);
                (v != 0.0).then(|| Vec2::new(u / v, 1.0 / v))
            }
        }
    }

    pub fn on_equator(&self) -> bool {
        !matches!(self.patch, Patch::Plane) && self.pos.y == 0.0
    }
}

/// Field of the current patch, time-scaled so that orbits match the planar
/// flow up to a positive reparametrization.
fn field(c: &CanonicalSystem, s: &State) -> Vec2 {
    match s.patch {
        Patch::Plane => c.eval(s.pos),
        Patch::XDir => chart_rhs(c, ChartId::U1, s.pos.x, s.pos.y),
        Patch::YDir => chart_rhs(c, ChartId::U2, s.pos.x, s.pos.y),
    }
}

/// Switch to the best patch for the current position, if the current one is
/// near the edge of its comfort zone.
fn rechart(s: State) -> State {
    match s.patch {
        Patch::Plane => {
            let (x, y) = (s.pos.x, s.pos.y);
            if x.abs() <= 5.0 && y.abs() <= 5.0 {
                return s;
            }
            if x.abs() >= y.abs() {
                State { patch: Patch::XDir, pos: Vec2::new(y / x, 1.0 / x) }
            } else {
                State { patch: Patch::YDir, pos: Vec2::new(x / y, 1.0 / y) }
            }
        }
        Patch::XDir => {
            let (u, v) = (s.pos.x, s.pos.y);
            if u.abs() <= 1.2 && v.abs() <= 0.28 {
                return s;
            }
            if v.abs() > 0.28 && u.abs() <= 1.2 {
                // back to the plane
                return State::plane(Vec2::new(1.0 / v, u / v));
            }
            // |u| grew: the y-direction chart is better there.
            if v.abs() > 1e-12 {
                let p = Vec2::new(1.0 / v, u / v);
                if p.x.abs() <= 5.0 && p.y.abs() <= 5.0 {
                    return State::plane(p);
                }
                State { patch: Patch::YDir, pos: Vec2::new(p.x / p.y, 1.0 / p.y) }
            } else {
                // on the equator: u/|u| direction, y-chart coords (1/u, 0)
                State { patch: Patch::YDir, pos: Vec2::new(1.0 / u, 0.0) }
            }
        }
        Patch::YDir => {
            let (u, v) = (s.pos.x, s.pos.y);
            if u.abs() <= 1.2 && v.abs() <= 0.28 {
                return s;
            }
            if v.abs() > 0.28 && u.abs() <= 1.2 {
                return State::plane(Vec2::new(u / v, 1.0 / v));
            }
            if v.abs() > 1e-12 {
                let p = Vec2::new(u / v, 1.0 / v);
                if p.x.abs() <= 5.0 && p.y.abs() <= 5.0 {
                    return State::plane(p);
                }
                State { patch: Patch::XDir, pos: Vec2::new(p.y / p.x, 1.0 / p.x) }
            } else {
                State { patch: Patch::XDir, pos: Vec2::new(1.0 / u, 0.0) }
            }
        }
    }
}

/// A target the integrator can terminate on.
#[derive(Clone, Debug)]
pub struct Target {
    pub id: SingId,
    pub disk: Vec2,
    /// Attracting under the integration direction: permits early resolution
    /// when the orbit creeps toward it monotonically inside the resolution
    /// radius (an orbit cannot leave such a neighbourhood again).
    pub creep: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Termination {
    ReachedSingularity(SingId),
    CycleClosure,
    MaxTime,
    StepUnderflow { x: f64, y: f64 },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Sample {
    pub tau: f64,
    pub disk: Vec2,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub termination: Termination,
    pub final_state: State,
}

const DP_C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_ERR: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One embedded Dormand–Prince 5(4) step. Returns (next, error_norm).
fn dp_step(c: &CanonicalSystem, s: &State, h: f64, dir: f64, ctl: &Controls) -> (Vec2, f64) {
    let f = |p: Vec2| field(c, &State { patch: s.patch, pos: p }).scale(dir);
    let y0 = s.pos;
    let mut k = [Vec2::new(0.0, 0.0); 7];
    k[0] = f(y0);
    for i in 0..6 {
        let mut acc = Vec2::new(0.0, 0.0);
        for (j, kj) in k.iter().enumerate().take(i + 1) {
            acc = acc.add(kj.scale(DP_A[i][j]));
        }
        k[i + 1] = f(y0.add(acc.scale(h)));
    }
    let _ = DP_C;
    let y5 = {
        let mut acc = Vec2::new(0.0, 0.0);
        for (j, kj) in k.iter().enumerate().take(6) {
            acc = acc.add(kj.scale(DP_A[5][j]));
        }
        y0.add(acc.scale(h))
    };
    let mut err = Vec2::new(0.0, 0.0);
    for (j, kj) in k.iter().enumerate() {
        err = err.add(kj.scale(DP_ERR[j]));
    }
    err = err.scale(h);
    let sc_x = ctl.atol + ctl.rtol * y0.x.abs().max(y5.x.abs());
    let sc_y = ctl.atol + ctl.rtol * y0.y.abs().max(y5.y.abs());
    let e = ((err.x / sc_x).powi(2) + (err.y / sc_y).powi(2)).sqrt() / std::f64::consts::SQRT_2;
    (y5, e)
}

/// Integrate the compactified flow from `start`. `forward` chooses the time
/// direction; termination targets and a closure anchor are optional.
pub fn integrate(
    c: &CanonicalSystem,
    start: State,
    forward: bool,
    targets: &[Target],
    ctl: &Controls,
) -> Result<Trajectory> {
    let dir = if forward { 1.0 } else { -1.0 };
    let mut state = rechart(start);
    let mut tau = 0.0;
    let mut h: f64 = 1e-4;
    let start_disk = state.disk();
    let mut left_start = false;
    let mut samples = vec![Sample { tau, disk: start_disk }];
    let mut creep: Option<(SingId, f64, u32)> = None;

    let termination = loop {
        if tau >= ctl.max_tau {
            break Termination::MaxTime;
        }
        // Keep fine resolution near the targets so balls cannot be stepped over.
        let here = state.disk();
        let mut near = f64::INFINITY;
        for t in targets {
            near = near.min(here.sub(t.disk).norm());
        }
        let cap = (near / 4.0).clamp(ctl.sing_ball, ctl.max_disk_step);

        let h_try = h.min(ctl.max_tau - tau);
        let (next_pos, err) = dp_step(c, &state, h_try, dir, ctl);
        let trial = State { patch: state.patch, pos: next_pos };
        let disk_move = trial.disk().sub(here).norm();
        if err <= 1.0 && disk_move <= cap {
            tau += h_try;
            state = trial;
            let d = state.disk();
            samples.push(Sample { tau, disk: d });

            // target balls, plus monotone creep into an attracting target
            let mut hit: Option<SingId> = None;
            for t in targets {
                let dist = d.sub(t.disk).norm();
                if dist <= ctl.sing_ball {
                    hit = Some(t.id);
                    break;
                }
                if t.creep && dist <= 1e-4 {
                    creep = match creep {
                        Some((id, last, n)) if id == t.id && dist < last => Some((id, dist, n + 1)),
                        Some((id, _, _)) if id == t.id => None,
                        _ => Some((t.id, dist, 0)),
                    };
                    if let Some((id, _, n)) = creep {
                        if n >= 25 {
                            hit = Some(id);
                        }
                    }
                }
            }
            if let Some(id) = hit {
                break Termination::ReachedSingularity(id);
            }
            // cycle closure against the launch point
            let back = d.sub(start_disk).norm();
            if !left_start && back > 20.0 * ctl.closure_radius {
                left_start = true;
            }
            if left_start && back <= ctl.closure_radius {
                break Termination::CycleClosure;
            }
            state = rechart(state);
            // grow the step
            let fac = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
            h = (h * fac.clamp(0.2, 5.0)).min(1.0);
        } else {
            let fac = if err > 1.0 { (0.9 * err.powf(-0.2)).max(0.2) } else { 0.5 };
            h *= fac;
            if h < 1e-14 * (1.0 + tau.abs()) {
                let p = state.plane_coords().unwrap_or(state.pos);
                return Err(Error::StepUnderflow {
                    x: p.x,
                    y: p.y,
                    chart: format!("{:?}", state.patch),
                });
            }
        }
    };
    Ok(Trajectory { samples, termination, final_state: state })
}

/// Plain planar integration in original time units, for trajectory export.
/// Stops at `t_end`, on entering a singularity ball, or when the orbit leaves
/// the box |x|,|y| <= bound.
pub fn integrate_plane(
    c: &CanonicalSystem,
    start: Vec2,
    t_end: f64,
    ctl: &Controls,
    bound: f64,
) -> Result<Vec<(f64, Vec2)>> {
    let mut state = State::plane(start);
    let mut t = 0.0;
    let mut h: f64 = 1e-6;
    let mut out = vec![(0.0, start)];
    while t < t_end {
        h = h.min(t_end - t);
        let (next, err) = dp_step(c, &state, h, 1.0, ctl);
        if err <= 1.0 {
            t += h;
            state.pos = next;
            out.push((t, next));
            if next.x.abs() > bound || next.y.abs() > bound {
                break;
            }
            let v = c.eval(next);
            if v.norm() < 1e-12 {
                break;
            }
            let fac = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
            h = (h * fac.clamp(0.2, 5.0)).min(0.05);
        } else {
            h *= (0.9 * err.powf(-0.2)).max(0.2);
            if h < 1e-15 * (1.0 + t.abs()) {
                return Err(Error::StepUnderflow { x: state.pos.x, y: state.pos.y, chart: "plane".into() });
            }
        }
    }
    Ok(out)
}

/// Map a finite plane point to disk coordinates.
pub fn plane_to_disk(p: Vec2) -> Vec2 {
    let n = (1.0 + p.x * p.x + p.y * p.y).sqrt();
    Vec2::new(p.x / n, p.y / n)
}

/// Disk coordinates of the equator point in direction `angle`.
pub fn equator_disk(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}
