//! Replicator dynamics: n-strategy right-hand side and the reduction of a
//! two-player, two-strategy game to a planar cubic system.

use crate::algebra::Vec2;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Tolerance on Σx_i = 1 and x_i >= 0. Inputs beyond it are rejected, never
/// renormalized silently.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Square payoff matrix for a single population with n pure strategies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffMatrixN {
    entries: Vec<Vec<f64>>,
}

impl PayoffMatrixN {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        let n = entries.len();
        if n < 2 {
            return Err(Error::BadMatrixShape { rows: n, cols: entries.first().map_or(0, Vec::len) });
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::BadMatrixShape { rows: n, cols: row.len() });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput);
            }
        }
        Ok(PayoffMatrixN { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }
}

/// Probability vector on the n-simplex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let sum: f64 = coords.iter().sum();
        let neg = coords.iter().cloned().fold(0.0f64, |m, v| m.min(v));
        let deviation = (sum - 1.0).abs().max((-neg).max(0.0));
        if deviation > SIMPLEX_TOL || coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::OffSimplex { deviation });
        }
        Ok(SimplexPoint { coords })
    }

    /// Skip the simplex check; used by integrators that accumulate O(h^5)
    /// drift and verify conservation separately.
    pub fn new_unchecked(coords: Vec<f64>) -> Self {
        SimplexPoint { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }
}

/// Payoff ⟨e_i, Ax⟩ of pure strategy i (1-based) against the mixed strategy x.
pub fn payoff(pure_index: usize, mix: &SimplexPoint, a: &PayoffMatrixN) -> Result<f64> {
    let n = a.n();
    if pure_index == 0 || pure_index > n {
        return Err(Error::IndexOutOfRange { index: pure_index, n });
    }
    if mix.n() != n {
        return Err(Error::BadMatrixShape { rows: mix.n(), cols: n });
    }
    let i = pure_index - 1;
    Ok((0..n).map(|j| a.entry(i, j) * mix.coords[j]).sum())
}

/// Average payoff ⟨x, Ax⟩ of the mixed strategy against itself.
pub fn average_payoff(mix: &SimplexPoint, a: &PayoffMatrixN) -> Result<f64> {
    let n = a.n();
    if mix.n() != n {
        return Err(Error::BadMatrixShape { rows: mix.n(), cols: n });
    }
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a.entry(i, j) * mix.coords[i] * mix.coords[j];
        }
    }
    Ok(acc)
}

/// Replicator velocity: ẋ_i = x_i (⟨e_i, Ax⟩ − ⟨x, Ax⟩).
pub fn replicator_rhs(x: &SimplexPoint, a: &PayoffMatrixN) -> Result<Vec<f64>> {
    let n = a.n();
    if x.n() != n {
        return Err(Error::BadMatrixShape { rows: x.n(), cols: n });
    }
    let avg = average_payoff(x, a)?;
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let fit = payoff(i + 1, x, a)?;
        v.push(x.coords[i] * (fit - avg));
    }
    Ok(v)
}

/// One RK4 step of the replicator flow. The result is not re-projected onto
/// the simplex; conservation of Σx_i is a property under test.
pub fn replicator_rk4_step(x: &SimplexPoint, a: &PayoffMatrixN, h: f64) -> Result<SimplexPoint> {
    let n = x.n();
    let eval = |c: &[f64]| -> Result<Vec<f64>> { replicator_rhs(&SimplexPoint { coords: c.to_vec() }, a) };
    let k1 = eval(x.coords())?;
    let mid1: Vec<f64> = (0..n).map(|i| x.coords[i] + 0.5 * h * k1[i]).collect();
    let k2 = eval(&mid1)?;
    let mid2: Vec<f64> = (0..n).map(|i| x.coords[i] + 0.5 * h * k2[i]).collect();
    let k3 = eval(&mid2)?;
    let end: Vec<f64> = (0..n).map(|i| x.coords[i] + h * k3[i]).collect();
    let k4 = eval(&end)?;
    let coords = (0..n)
        .map(|i| x.coords[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    Ok(SimplexPoint { coords })
}

/// Payoff matrices of a bimatrix game: A* for the row player's strategies
/// against the column player, B* for the column player's against the row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoPlayerGame {
    pub a_star: [[f64; 2]; 2],
    pub b_star: [[f64; 2]; 2],
}

impl TwoPlayerGame {
    pub fn new(a_star: [[f64; 2]; 2], b_star: [[f64; 2]; 2]) -> Result<Self> {
        let finite = a_star.iter().chain(b_star.iter()).all(|r| r.iter().all(|v| v.is_finite()));
        if !finite {
            return Err(Error::NonFiniteInput);
        }
        Ok(TwoPlayerGame { a_star, b_star })
    }
}

/// Six coefficients of the planar cubic system
/// ẋ = x(x−1)(a00 + a10·x + a01·y), ẏ = y(y−1)(b00 + b10·x + b01·y).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawSystem {
    pub a00: f64,
    pub a10: f64,
    pub a01: f64,
    pub b00: f64,
    pub b10: f64,
    pub b01: f64,
}

impl RawSystem {
    pub fn new(a00: f64, a10: f64, a01: f64, b00: f64, b10: f64, b01: f64) -> Result<Self> {
        let s = RawSystem { a00, a10, a01, b00, b10, b01 };
        if ![a00, a10, a01, b00, b10, b01].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        Ok(s)
    }

    pub fn from_slice(c: &[f64; 6]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }

    pub fn eval(&self, p: Vec2) -> Vec2 {
        let (x, y) = (p.x, p.y);
        Vec2::new(
            x * (x - 1.0) * (self.a00 + self.a10 * x + self.a01 * y),
            y * (y - 1.0) * (self.b00 + self.b10 * x + self.b01 * y),
        )
    }
}

/// Reduce a bimatrix game to the planar system on (x, y) = (x₁, y₁).
pub fn reduce_two_player(g: &TwoPlayerGame) -> RawSystem {
    let a = &g.a_star;
    let b = &g.b_star;
    RawSystem {
        a00: a[1][1] - a[0][1],
        a10: 0.0,
        a01: a[0][1] + a[1][0] - a[0][0] - a[1][1],
        b00: b[1][1] - b[0][1],
        b10: b[0][1] + b[1][0] - b[0][0] - b[1][1],
        b01: 0.0,
    }
}

/// Scalar payoff inputs of the corruption model: officials (row player)
/// against the government (column player).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorruptionPayoffs {
    /// Officials' wage.
    pub wage: f64,
    /// Fine imposed by an honest government on a corrupt official.
    pub fine: f64,
    /// Bribe a corrupt official takes from a citizen.
    pub bribe: f64,
    /// Fraction of the bribe shared with a corrupt government member.
    pub bribe_share: f64,
    /// Amount an honest official pays a corrupt government member to keep the position.
    pub keep_position_fee: f64,
    /// Cost of capturing a corrupt official.
    pub capture_cost: f64,
    /// Value a corrupt government assigns to re-election.
    pub reelection_value_corrupt: f64,
    /// Value a non-corrupt government assigns to re-election.
    pub reelection_value_honest: f64,
    /// Total vote-buying expenditure (citizens paid times unit price).
    pub vote_buying: f64,
}

impl CorruptionPayoffs {
    /// Bimatrix game of the corruption model payoff table.
    pub fn game(&self) -> TwoPlayerGame {
        let w = self.wage;
        let m = self.fine;
        let mc = self.bribe;
        let mg = self.bribe_share;
        let mgp = self.keep_position_fee;
        let e = self.capture_cost;
        let vgc = self.reelection_value_corrupt;
        let vgnc = self.reelection_value_honest;
        let kp = self.vote_buying;
        TwoPlayerGame {
            a_star: [[w + mc - mg, w + mc - m], [w - mgp, w]],
            b_star: [[mg - w + vgc - kp, m - w - e + vgnc], [mgp - w + vgc - kp, -w + vgnc]],
        }
    }

    /// Planar system ṅ_c = n_c(n_c−1)(a00 + a01·g_c), ġ_c = g_c(g_c−1)(b00 + b10·n_c).
    pub fn system(&self) -> RawSystem {
        reduce_two_player(&self.game())
    }

    /// Sign conditions under which the model is bistable between the
    /// corruption-free and fully corrupted corners.
    pub fn bistable_signs_hold(&self) -> bool {
        let s = self.system();
        s.b00 > 0.0 && s.b00 + s.b10 < 0.0 && s.a00 > 0.0 && s.a00 + s.a01 < 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn simplex(v: Vec<f64>) -> SimplexPoint {
        SimplexPoint::new(v).unwrap()
    }

    fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> SimplexPoint {
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01f64..1.0)).collect();
        let s: f64 = raw.iter().sum();
        let mut coords: Vec<f64> = raw.iter().map(|v| v / s).collect();
        let fix = 1.0 - coords.iter().sum::<f64>();
        coords[0] += fix;
        SimplexPoint::new(coords).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> PayoffMatrixN {
        PayoffMatrixN::new((0..n).map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_payoff_cases() {
        let a = PayoffMatrixN::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(payoff(1, &simplex(vec![1.0, 0.0]), &a).unwrap(), 1.0);
        assert_eq!(average_payoff(&simplex(vec![0.5, 0.5]), &a).unwrap(), 0.5);
    }

    #[test]
    fn payoff_matches_double_sum_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 3);
            let x = random_simplex(&mut rng, 3);
            // Oracle: direct double sum.
            let mut oracle = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    oracle += a.entry(i, j) * x.coords()[i] * x.coords()[j];
                }
            }
            assert!((average_payoff(&x, &a).unwrap() - oracle).abs() < 1e-14);
            for i in 1..=3 {
                let o: f64 = (0..3).map(|j| a.entry(i - 1, j) * x.coords()[j]).sum();
                assert!((payoff(i, &x, &a).unwrap() - o).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = PayoffMatrixN::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            payoff(3, &simplex(vec![1.0, 0.0]), &a),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(SimplexPoint::new(vec![0.6, 0.6]), Err(Error::OffSimplex { .. })));
        assert!(matches!(SimplexPoint::new(vec![-0.1, 1.1]), Err(Error::OffSimplex { .. })));
        assert!(PayoffMatrixN::new(vec![vec![1.0]]).is_err());
    }

    #[test]
    fn vertices_are_fixed_points_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_matrix(&mut rng, 4);
        for k in 0..4 {
            let mut v = vec![0.0; 4];
            v[k] = 1.0;
            let rhs = replicator_rhs(&simplex(v), &a).unwrap();
            assert!(rhs.iter().all(|&c| c == 0.0));
        }
    }

    #[test]
    fn equal_rows_give_zero_field() {
        let a = PayoffMatrixN::new(vec![vec![1.0, 2.0, 3.0]; 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let x = random_simplex(&mut rng, 3);
            let rhs = replicator_rhs(&x, &a).unwrap();
            assert!(rhs.iter().all(|&c| c.abs() < 1e-15));
        }
    }

    #[test]
    fn rhs_components_sum_to_zero_and_match_direct_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 4);
            let x = random_simplex(&mut rng, 4);
            let rhs = replicator_rhs(&x, &a).unwrap();
            assert!(rhs.iter().sum::<f64>().abs() < 1e-12);
            let avg = average_payoff(&x, &a).unwrap();
            for i in 0..4 {
                let fit: f64 = (0..4).map(|j| a.entry(i, j) * x.coords()[j]).sum();
                assert!((rhs[i] - x.coords()[i] * (fit - avg)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rk4_keeps_simplex_sum_over_thousand_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let a = random_matrix(&mut rng, 3);
        let mut x = simplex(vec![0.2, 0.3, 0.5]);
        for _ in 0..1000 {
            x = replicator_rk4_step(&x, &a, 0.01).unwrap();
        }
        assert!((x.coords().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_game_reduces_to_zero_system() {
        let g = TwoPlayerGame::new([[0.0; 2]; 2], [[0.0; 2]; 2]).unwrap();
        let s = reduce_two_player(&g);
        assert_eq!(s, RawSystem { a00: 0.0, a10: 0.0, a01: 0.0, b00: 0.0, b10: 0.0, b01: 0.0 });
    }

    /// Four-dimensional bimatrix replicator field, evaluated directly.
    fn four_dim_field(g: &TwoPlayerGame, x1: f64, y1: f64) -> (f64, f64) {
        let (x2, y2) = (1.0 - x1, 1.0 - y1);
        let a = &g.a_star;
        let b = &g.b_star;
        let avg_a = a[0][0] * x1 * y1 + a[0][1] * x1 * y2 + a[1][0] * x2 * y1 + a[1][1] * x2 * y2;
        let avg_b = b[0][0] * y1 * x1 + b[0][1] * y1 * x2 + b[1][0] * y2 * x1 + b[1][1] * y2 * x2;
        let xdot = x1 * (a[0][0] * y1 + a[0][1] * y2 - avg_a);
        let ydot = y1 * (b[0][0] * x1 + b[0][1] * x2 - avg_b);
        (xdot, ydot)
    }

    #[test]
    fn reduction_matches_four_dim_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..100 {
            let g = TwoPlayerGame::new(
                [
                    [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
                    [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
                ],
                [
                    [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
                    [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
                ],
            )
            .unwrap();
            let s = reduce_two_player(&g);
            for _ in 0..10 {
                let p = Vec2::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
                let v = s.eval(p);
                let (ox, oy) = four_dim_field(&g, p.x, p.y);
                assert!((v.x - ox).abs() < 1e-12, "x mismatch: {} vs {}", v.x, ox);
                assert!((v.y - oy).abs() < 1e-12, "y mismatch: {} vs {}", v.y, oy);
            }
        }
    }

    #[test]
    fn corruption_coefficient_identities() {
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
        let s = p.system();
        let (m, mc, mg, mgp, e) = (p.fine, p.bribe, p.bribe_share, p.keep_position_fee, p.capture_cost);
        let (vgc, vgnc, kp) = (p.reelection_value_corrupt, p.reelection_value_honest, p.vote_buying);
        assert!((s.a00 - (m - mc)).abs() < 1e-12);
        assert!((s.a01 - (mg - mgp - m)).abs() < 1e-12);
        assert!((s.b00 - (kp + vgnc - vgc - mgp)).abs() < 1e-12);
        assert!((s.b10 - (m + mgp - mg - e)).abs() < 1e-12);
        assert_eq!(s.a10, 0.0);
        assert_eq!(s.b01, 0.0);
        assert!(p.bistable_signs_hold());
    }
}
