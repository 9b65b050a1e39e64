//! Parameter search: construct a normalized system realizing a given table
//! row by sampling inside the row's inequality region.

use super::tables::CaseRow;
use super::{classify_case, family_pattern};
use crate::canonical::{CanonicalSystem, FamilyTag};
use crate::singularities::{relative_positions, Rel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Interval for a01 (>= 0) imposed by the q1/q3 columns, given alpha, beta.
/// q1 < p2 iff a01 < (1-a)/b; q3 < p4 iff a01 > a/(1-b).
fn a01_interval(pattern: [Rel; 4], alpha: f64, beta: f64) -> Option<(f64, f64)> {
    let t1 = (1.0 - alpha) / beta;
    let t3 = alpha / (1.0 - beta);
    let (lo, hi) = match (pattern[0], pattern[2]) {
        (Rel::Less, Rel::Less) => (t3, t1),
        (Rel::Less, Rel::Greater) => (0.0, t1.min(t3)),
        (Rel::Greater, Rel::Less) => (t1.max(t3), f64::INFINITY),
        (Rel::Greater, Rel::Greater) => (t1, t3),
        _ => return None,
    };
    (hi > lo).then_some((lo, hi))
}

/// Interval for s = b10/b01 imposed by the q2/q4 columns.
/// Families 1/4 compare q2 with p2 and q4 with p4: q2<p2 iff s > b/(1-a),
/// q4<p4 iff s < (1-b)/a; with s >= 0.
/// Families 2/3 compare q2 with p3 and q4 with p1: q2<p3 iff s > -(1-b)/(1-a),
/// q4<p1 iff s < -b/a; with s <= 0.
fn s_interval(family: u8, pattern: [Rel; 4], alpha: f64, beta: f64) -> Option<(f64, f64)> {
    match family {
        1 | 4 => {
            let u2 = beta / (1.0 - alpha);
            let u4 = (1.0 - beta) / alpha;
            let (lo, hi) = match (pattern[1], pattern[3]) {
                (Rel::Less, Rel::Less) => (u2, u4),
                (Rel::Less, Rel::Greater) => (u2.max(u4), f64::INFINITY),
                (Rel::Greater, Rel::Less) => (0.0, u2.min(u4)),
                (Rel::Greater, Rel::Greater) => (u4, u2),
                _ => return None,
            };
            (hi > lo).then_some((lo, hi))
        }
        2 | 3 => {
            let v2 = -(1.0 - beta) / (1.0 - alpha);
            let v4 = -beta / alpha;
            let (lo, hi) = match (pattern[1], pattern[3]) {
                (Rel::Less, Rel::Less) => (v2, v4.min(0.0)),
                (Rel::Less, Rel::Greater) => (v2.max(v4), 0.0),
                (Rel::Greater, Rel::Less) => (f64::NEG_INFINITY, v2.min(v4)),
                (Rel::Greater, Rel::Greater) => (v4, v2),
                _ => return None,
            };
            (hi > lo).then_some((lo, hi))
        }
        _ => None,
    }
}

fn sample_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            let t: f64 = rng.gen_range(0.03..0.97);
            lo + t * (hi - lo)
        }
        (true, false) => lo + (rng.gen_range(0.0f64..1.0)).powi(2) * 10.0 + 0.05,
        (false, true) => hi - (rng.gen_range(0.0f64..1.0)).powi(2) * 10.0 - 0.05,
        (false, false) => rng.gen_range(-5.0..5.0),
    }
}

fn b01_candidates(row: &CaseRow, a01: f64, s: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let sign = if row.family == 1 || row.family == 3 { 1.0 } else { -1.0 };
    let mut out: Vec<f64> = Vec::with_capacity(26);
    for k in 0..8 {
        let mag = 10f64.powf(-1.6 + 0.45 * k as f64) * rng.gen_range(0.8..1.25);
        out.push(sign * mag);
    }
    // Δ window: Δ(b01) = (s·b01 − a01)² + 4·b01 crosses zero between the roots
    // of s²x² + (4 − 2·a01·s)x + a01²; inside the window Δ < 0.
    if s.abs() > 1e-9 {
        let disc = 16.0 * (1.0 - a01 * s);
        if disc > 0.0 {
            let r = disc.sqrt();
            let x1 = (2.0 * a01 * s - 4.0 - r) / (2.0 * s * s);
            let x2 = (2.0 * a01 * s - 4.0 + r) / (2.0 * s * s);
            let (lo, hi) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
            for t in [0.25, 0.5, 0.75] {
                let x = lo + t * (hi - lo);
                if x * sign > 0.0 {
                    out.push(x);
                }
            }
            // just outside the window, both sides
            for x in [lo - 0.5 * (hi - lo).abs() - 0.05, hi + 0.5 * (hi - lo).abs() + 0.05] {
                if x * sign > 0.0 {
                    out.push(x);
                }
            }
        }
    }
    // slope threshold: b10 − a01 = s·b01 − a01 changes sign at b01 = a01/s.
    if s.abs() > 1e-9 {
        let thr = a01 / s;
        if thr * sign > 0.0 {
            out.push(thr * 0.45);
            out.push(thr * 2.3);
        }
    }
    out
}

/// Search for a normalized canonical system classifying exactly as `row`.
/// Deterministic for a fixed seed. Returns the witness and its family tag.
pub fn find_row_witness(row: &CaseRow, seed: u64) -> Option<(CanonicalSystem, FamilyTag)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fxhash(row.label));
    let tag = FamilyTag { position: 1, family: row.family };
    for _ in 0..60_000 {
        let beta: f64 = rng.gen_range(0.51..0.95);
        let alpha: f64 = rng.gen_range(0.03..0.97);
        let Some((alo, ahi)) = a01_interval(row.pattern, alpha, beta) else { continue };
        let Some((slo, shi)) = s_interval(row.family, row.pattern, alpha, beta) else { continue };
        let a01 = sample_in(&mut rng, alo.max(0.0), ahi);
        if a01 < 0.0 {
            continue;
        }
        let s = sample_in(&mut rng, slo, shi);
        for b01 in b01_candidates(row, a01, s, &mut rng) {
            let b10 = s * b01;
            let c = CanonicalSystem::new(alpha, beta, 1.0, a01, b10, b01);
            // Stay inside the family's sign chart.
            let fam_ok = match row.family {
                1 => b10 >= 0.0 && b01 > 0.0,
                2 => b10 >= 0.0 && b01 < 0.0,
                3 => b10 < 0.0 && b01 > 0.0,
                4 => b10 < 0.0 && b01 < 0.0,
                _ => false,
            };
            if !fam_ok {
                continue;
            }
            if relative_positions(&c).has_equality() {
                continue;
            }
            if let Ok(label) = classify_case(&c, &tag) {
                if label.case == row.label {
                    return Some((c, tag));
                }
            }
        }
    }
    None
}

fn fxhash(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::tables::family_rows;

    #[test]
    fn witness_found_for_a_spread_of_rows() {
        for label in ["1.1", "1.4b", "2.1a", "2.15c", "3.6", "4.1b.i", "4.6b.ii", "4.9b.iii"] {
            let row = (1..=4)
                .flat_map(|f| family_rows(f).iter())
                .find(|r| r.label == label)
                .unwrap();
            let found = find_row_witness(row, 7);
            assert!(found.is_some(), "no witness for {label}");
            let (c, tag) = found.unwrap();
            let got = classify_case(&c, &tag).unwrap();
            assert_eq!(got.case, label);
            let pattern = family_pattern(row.family, &relative_positions(&c));
            assert_eq!(pattern, row.pattern);
        }
    }
}
