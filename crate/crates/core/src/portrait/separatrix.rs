//! Separatrix tracing: launch from every hyperbolic saddle along its
//! eigendirections, follow the compactified flow, and resolve endpoints
//! against the singularity inventory, cycles, or the boundary polycycle.

use crate::algebra::{EigenPair, Mat2, Vec2};
use crate::canonical::CanonicalSystem;
use crate::compactification::{chart_rhs, infinite_singularities, ChartId};
use crate::error::Result;
use crate::portrait::integrate::{
    equator_disk, integrate, plane_to_disk, Controls, Patch, Sample, State, Target, Termination,
};
use crate::singularities::{
    classify_origin, p_singularities, q_singularities, Location, LocalType, SingId,
    SingularityReport,
};
use serde::{Deserialize, Serialize};

/// Launch offset along the eigenvector.
const LAUNCH_OFFSET: f64 = 1e-6;
/// Endpoint resolution radius on the disk.
const RESOLVE_RADIUS: f64 = 1e-4;
/// Plane-coordinate distance under which a winding tail counts as the
/// boundary polycycle.
const POLYCYCLE_BAND: f64 = 2e-2;

/// Every singularity of the compactified system, finite and infinite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Inventory {
    pub reports: Vec<SingularityReport>,
}

impl Inventory {
    pub fn of(c: &CanonicalSystem) -> Inventory {
        let mut reports = vec![classify_origin(c)];
        reports.extend(p_singularities(c));
        reports.extend(q_singularities(c).into_iter().filter(|r| r.local_type != LocalType::Undefined));
        reports.extend(infinite_singularities(c).reports);
        Inventory { reports }
    }

    pub fn get(&self, id: SingId) -> Option<&SingularityReport> {
        self.reports.iter().find(|r| r.id == id)
    }

    pub fn disk_of(r: &SingularityReport) -> Vec2 {
        match r.location {
            Location::Finite(p) => plane_to_disk(p),
            Location::Infinity { angle } => equator_disk(angle),
        }
    }

    /// Termination targets; `forward` decides which types allow early
    /// creep resolution (attracting forward, repelling backward).
    pub fn targets_for(&self, forward: bool) -> Vec<Target> {
        self.reports
            .iter()
            .map(|r| Target {
                id: r.id,
                disk: Self::disk_of(r),
                creep: if forward { r.local_type.is_attracting() } else { r.local_type.is_repelling() },
            })
            .collect()
    }

    pub fn targets(&self) -> Vec<Target> {
        self.targets_for(true)
    }

    pub fn saddles(&self) -> Vec<&SingularityReport> {
        self.reports.iter().filter(|r| r.local_type == LocalType::Saddle).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Endpoint {
    Singularity(SingId),
    LimitCycle,
    Polycycle,
    Unresolved(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Separatrix {
    pub from: SingId,
    /// True for a stable-manifold branch (traced backward in time).
    pub stable: bool,
    /// 0 or 1: which side of the eigenvector the branch leaves on.
    pub side: u8,
    pub endpoint: Endpoint,
    /// Arc in disk coordinates, from the saddle outward.
    pub arc: Vec<Vec2>,
    /// Branch runs inside the invariant set (octothorpe lines or equator).
    pub along_lambda: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparatrixSkeleton {
    pub separatrices: Vec<Separatrix>,
    pub saddle_ids: Vec<SingId>,
}

impl SeparatrixSkeleton {
    /// Saddle-to-saddle connections that run outside the invariant set.
    pub fn connections_outside_lambda(&self, inv: &Inventory) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for s in &self.separatrices {
            if s.along_lambda {
                continue;
            }
            if let Endpoint::Singularity(id) = s.endpoint {
                if inv.get(id).map(|r| r.local_type == LocalType::Saddle).unwrap_or(false) {
                    out.push((s.from.to_string(), id.to_string()));
                }
            }
        }
        out
    }
}

fn numeric_chart_jacobian(c: &CanonicalSystem, chart: ChartId, p: Vec2) -> Mat2 {
    let h = 1e-7;
    let fx1 = chart_rhs(c, chart, p.x + h, p.y);
    let fx0 = chart_rhs(c, chart, p.x - h, p.y);
    let fy1 = chart_rhs(c, chart, p.x, p.y + h);
    let fy0 = chart_rhs(c, chart, p.x, p.y - h);
    Mat2::new(
        (fx1.x - fx0.x) / (2.0 * h),
        (fy1.x - fy0.x) / (2.0 * h),
        (fx1.y - fx0.y) / (2.0 * h),
        (fy1.y - fy0.y) / (2.0 * h),
    )
}

/// Direction of an invariant line through a finite point, when the point sits
/// on one of the octothorpe lines.
fn lambda_direction(c: &CanonicalSystem, p: Vec2) -> Vec<Vec2> {
    let mut dirs = Vec::new();
    let tol = 1e-9;
    if (p.x + c.alpha).abs() < tol || (p.x + c.alpha - 1.0).abs() < tol {
        dirs.push(Vec2::new(0.0, 1.0));
    }
    if (p.y + c.beta).abs() < tol || (p.y + c.beta - 1.0).abs() < tol {
        dirs.push(Vec2::new(1.0, 0.0));
    }
    dirs
}

struct Launch {
    from: SingId,
    stable: bool,
    side: u8,
    state: State,
    along_lambda: bool,
    /// Eigenvalue magnitude of the launch direction; weak saddles need a
    /// longer time budget to escape the linear neighbourhood.
    rate: f64,
}

fn finite_launches(c: &CanonicalSystem, rep: &SingularityReport) -> Vec<Launch> {
    let Location::Finite(p) = rep.location else { return Vec::new() };
    let EigenPair::Real(l1, l2) = rep.eigenvalues else { return Vec::new() };
    let mut out = Vec::new();
    let lambda_dirs = lambda_direction(c, p);
    for lambda in [l1, l2] {
        let v = rep.jacobian.eigenvector(lambda);
        let along = lambda_dirs.iter().any(|d| d.cross(v).abs() < 1e-9);
        for (side, sgn) in [(0u8, 1.0), (1u8, -1.0)] {
            let start = p.add(v.scale(sgn * LAUNCH_OFFSET));
            out.push(Launch {
                from: rep.id,
                stable: lambda < 0.0,
                side,
                state: State::plane(start),
                along_lambda: along,
                rate: lambda.abs(),
            });
        }
    }
    out
}

/// Interior transverse branch of an equatorial saddle. The equator branches
/// stay inside the invariant set and are recorded without tracing.
fn infinite_launches(c: &CanonicalSystem, rep: &SingularityReport) -> Vec<Launch> {
    let Location::Infinity { angle } = rep.location else { return Vec::new() };
    // Chart coordinate of the root: u0 = tan(angle) in the x-direction chart.
    let antipode = angle.cos() < 0.0;
    let u0 = angle.tan();
    let j = numeric_chart_jacobian(c, ChartId::U1, Vec2::new(u0, 0.0));
    // Triangular: e_u = j.a on the equator, e_v = j.d transverse.
    let e_v = j.d;
    let denom = e_v - j.a;
    let w = if denom.abs() > 1e-12 { Vec2::new(j.b / denom, 1.0) } else { Vec2::new(0.0, 1.0) };
    let w = w.normalized();
    // v > 0 side belongs to the representative at angle in (-pi/2, pi/2),
    // v < 0 to its antipode.
    let sgn = if antipode { -1.0 } else { 1.0 };
    let start = Vec2::new(u0, 0.0).add(w.scale(sgn * LAUNCH_OFFSET * w.y.signum()));
    vec![Launch {
        from: rep.id,
        stable: e_v < 0.0,
        side: 0,
        state: State { patch: Patch::XDir, pos: start },
        along_lambda: false,
        rate: e_v.abs(),
    }]
}

/// Total winding angle of the tail of an arc around a disk point.
fn winding(tail: &[Sample], center: Vec2) -> f64 {
    let mut total = 0.0;
    for w in tail.windows(2) {
        let a = w[0].disk.sub(center);
        let b = w[1].disk.sub(center);
        total += a.cross(b).atan2(a.dot(b));
    }
    total
}

fn square_boundary_distance(c: &CanonicalSystem, p: Vec2) -> f64 {
    // Distance to the boundary of the central square in canonical plane coords.
    let (x0, x1) = (-c.alpha, 1.0 - c.alpha);
    let (y0, y1) = (-c.beta, 1.0 - c.beta);
    let dx = (x0 - p.x).max(p.x - x1).max(0.0);
    let dy = (y0 - p.y).max(p.y - y1).max(0.0);
    let outside = (dx * dx + dy * dy).sqrt();
    if outside > 0.0 {
        return outside;
    }
    // inside: distance to the nearest edge
    (p.x - x0).min(x1 - p.x).min(p.y - y0).min(y1 - p.y)
}

fn resolve_endpoint(
    c: &CanonicalSystem,
    inv: &Inventory,
    launch: &Launch,
    term: &Termination,
    samples: &[Sample],
) -> Endpoint {
    match term {
        Termination::ReachedSingularity(id) => Endpoint::Singularity(*id),
        Termination::CycleClosure => Endpoint::Unresolved("closed onto itself".to_string()),
        Termination::StepUnderflow { x, y } => {
            Endpoint::Unresolved(format!("step underflow near ({x:.6}, {y:.6})"))
        }
        Termination::MaxTime => {
            let last = samples.last().expect("non-empty arc").disk;
            // nearby targets within the resolution radius
            let mut near: Vec<(SingId, f64)> = inv
                .reports
                .iter()
                .filter(|r| r.id != launch.from)
                .map(|r| (r.id, Inventory::disk_of(r).sub(last).norm()))
                .filter(|(_, d)| *d <= RESOLVE_RADIUS)
                .collect();
            near.sort_by(|a, b| a.1.total_cmp(&b.1));
            match near.len() {
                1 => return Endpoint::Singularity(near[0].0),
                n if n >= 2 => {
                    return Endpoint::Unresolved(format!(
                        "ambiguous endpoint between {} and {}",
                        near[0].0, near[1].0
                    ))
                }
                _ => {}
            }
            // winding tail: limit cycle or the boundary polycycle
            let tail_start = samples.len().saturating_sub(samples.len() / 3 + 2);
            let tail = &samples[tail_start..];
            let turns = winding(tail, plane_to_disk(Vec2::new(0.0, 0.0))).abs();
            if turns > 3.0 * std::f64::consts::PI {
                let near_boundary = tail.iter().all(|s| {
                    // map back to plane coords; tail points of a bounded
                    // winding orbit are finite
                    let d = s.disk;
                    let denom = (1.0 - d.x * d.x - d.y * d.y).max(1e-12).sqrt();
                    let p = Vec2::new(d.x / denom, d.y / denom);
                    square_boundary_distance(c, p) < POLYCYCLE_BAND
                });
                if near_boundary {
                    return Endpoint::Polycycle;
                }
                return Endpoint::LimitCycle;
            }
            Endpoint::Unresolved("no target within tolerance".to_string())
        }
    }
}

/// Trace all separatrices of every hyperbolic saddle, finite and infinite.
pub fn trace_separatrices(c: &CanonicalSystem, ctl: &Controls) -> Result<SeparatrixSkeleton> {
    let inv = Inventory::of(c);
    trace_with_inventory(c, &inv, ctl)
}

pub fn trace_with_inventory(
    c: &CanonicalSystem,
    inv: &Inventory,
    ctl: &Controls,
) -> Result<SeparatrixSkeleton> {
    let mut launches = Vec::new();
    for rep in inv.saddles() {
        match rep.location {
            Location::Finite(_) => launches.extend(finite_launches(c, rep)),
            Location::Infinity { .. } => launches.extend(infinite_launches(c, rep)),
        }
    }
    let saddle_ids: Vec<SingId> = inv.saddles().iter().map(|r| r.id).collect();

    let jobs: Vec<Launch> = launches;
    let results = crate::par::par_map(jobs, |launch| {
        let forward = !launch.stable;
        let targets: Vec<Target> =
            inv.targets_for(forward).into_iter().filter(|t| t.id != launch.from).collect();
        let mut branch_ctl = *ctl;
        if launch.rate > 1e-12 {
            branch_ctl.max_tau = ctl.max_tau.max(16.0 / launch.rate + 1500.0);
        }
        match integrate(c, launch.state, forward, &targets, &branch_ctl) {
            Ok(traj) => {
                let endpoint = resolve_endpoint(c, inv, &launch, &traj.termination, &traj.samples);
                Separatrix {
                    from: launch.from,
                    stable: launch.stable,
                    side: launch.side,
                    endpoint,
                    arc: traj.samples.iter().map(|s| s.disk).collect(),
                    along_lambda: launch.along_lambda,
                }
            }
            Err(e) => Separatrix {
                from: launch.from,
                stable: launch.stable,
                side: launch.side,
                endpoint: Endpoint::Unresolved(format!("integration failed: {e}")),
                arc: vec![launch.state.disk()],
                along_lambda: launch.along_lambda,
            },
        }
    });

    Ok(SeparatrixSkeleton { separatrices: results, saddle_ids })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family1_case_one_one_skeleton() {
        // q1..q4 and the origin are saddles; p1, p3 and the poles are nodes.
        let c = CanonicalSystem::new(0.5, 0.6, 1.0, 3.0, 1.0, 0.5);
        let inv = Inventory::of(&c);
        assert_eq!(inv.saddles().len(), 5 + 2, "origin + 4 q + u0_plus pair");
        let skel = trace_separatrices(&c, &Controls::default()).unwrap();
        // every traced branch resolves somewhere
        let unresolved: Vec<_> = skel
            .separatrices
            .iter()
            .filter(|s| matches!(s.endpoint, Endpoint::Unresolved(_)))
            .collect();
        assert!(
            unresolved.is_empty(),
            "unresolved: {:?}",
            unresolved
                .iter()
                .map(|s| (s.from, s.stable, s.side, s.endpoint.clone()))
                .collect::<Vec<_>>()
        );
        // no saddle connection outside the invariant set
        assert!(skel.connections_outside_lambda(&inv).is_empty());
    }

    #[test]
    fn unstable_cycle_found_between_origin_and_polycycle() {
        // 4.1b.i: stable origin, stable polycycle, unstable cycle between.
        let c = CanonicalSystem::new(0.5, 0.5, 1.0, 3.0, -1.0, -0.5);
        // From just outside the origin, backward time converges to the cycle.
        let ctl = Controls { max_tau: 2000.0, ..Default::default() };
        let inv = Inventory::of(&c);
        let traj = integrate(
            &c,
            State::plane(Vec2::new(0.05, 0.0)),
            false,
            &inv.targets(),
            &ctl,
        )
        .unwrap();
        assert_eq!(traj.termination, Termination::MaxTime);
        let tail = &traj.samples[traj.samples.len() - traj.samples.len() / 4..];
        let turns = winding(tail, Vec2::new(0.0, 0.0)).abs();
        assert!(turns > 6.0, "should wind around the cycle, got {turns}");
    }
}
