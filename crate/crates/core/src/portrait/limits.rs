//! ω/α-limit estimation by forward/backward integration against the
//! singularity inventory.

use crate::algebra::Vec2;
use crate::canonical::CanonicalSystem;
use crate::portrait::integrate::{integrate, Controls, State, Termination};
use crate::portrait::separatrix::Inventory;
use crate::singularities::SingId;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum LimitSet {
    Singularity(SingId),
    CycleOrPolycycle,
    Unknown,
}

/// ω-limit (forward = true) or α-limit of the orbit through `start`.
pub fn limit_set(c: &CanonicalSystem, inv: &Inventory, start: Vec2, forward: bool, ctl: &Controls) -> LimitSet {
    let targets = inv.targets();
    match integrate(c, State::plane(start), forward, &targets, ctl) {
        Ok(traj) => match traj.termination {
            Termination::ReachedSingularity(id) => LimitSet::Singularity(id),
            Termination::CycleClosure => LimitSet::CycleOrPolycycle,
            Termination::MaxTime => {
                let last = traj.samples.last().unwrap().disk;
                let best = inv
                    .reports
                    .iter()
                    .map(|r| (r.id, Inventory::disk_of(r).sub(last).norm()))
                    .min_by(|a, b| a.1.total_cmp(&b.1));
                match best {
                    Some((id, d)) if d < 1e-4 => LimitSet::Singularity(id),
                    _ => LimitSet::CycleOrPolycycle,
                }
            }
            Termination::StepUnderflow { .. } => LimitSet::Unknown,
        },
        Err(_) => LimitSet::Unknown,
    }
}

/// ω-limits over an n×n grid strictly inside the original-coordinates unit
/// square (the model region). Returns (grid point, limit) in original coords.
pub fn omega_limits_on_square(
    c: &CanonicalSystem,
    n: usize,
    ctl: &Controls,
) -> Vec<(Vec2, LimitSet)> {
    let inv = Inventory::of(c);
    let cells: Vec<Vec2> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            // cell centers of the unit square in original coordinates
            let x = (i as f64 + 0.5) / n as f64;
            let y = (j as f64 + 0.5) / n as f64;
            Vec2::new(x, y)
        })
        .collect();
    crate::par::par_map(cells, |orig| {
        let canon = Vec2::new(orig.x - c.alpha, orig.y - c.beta);
        let l = limit_set(c, &inv, canon, true, ctl);
        (orig, l)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::to_canonical;
    use crate::replicator::CorruptionPayoffs;

    #[test]
    fn corruption_grid_converges_to_the_two_corners() {
        let p = CorruptionPayoffs {
            wage: 1.0,
            fine: 2.0,
            bribe: 1.0,
            bribe_share: 1.0,
            keep_position_fee: 0.5,
            capture_cost: 3.0,
            reelection_value_corrupt: 0.5,
            reelection_value_honest: 1.0,
            vote_buying: 1.0,
        };
        assert!(p.bistable_signs_hold());
        let c = to_canonical(&p.system()).unwrap();
        let ctl = Controls { max_tau: 400.0, ..Default::default() };
        let results = omega_limits_on_square(&c, 6, &ctl);
        for (start, l) in results {
            match l {
                LimitSet::Singularity(id) => {
                    assert!(
                        id == SingId::P1 || id == SingId::P3,
                        "{start:?} converged to {id}, expected a diagonal corner"
                    );
                }
                other => panic!("{start:?} gave {other:?}"),
            }
        }
    }
}
