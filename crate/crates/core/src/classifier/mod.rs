//! Case-table classification of normalized position-1 systems and the map to
//! the canonical portrait classes.

pub mod equivalence;
pub mod square;
pub mod subcase;
pub mod tables;
pub mod witness;

use crate::algebra::Sign;
use crate::canonical::{CanonicalSystem, FamilyTag};
use crate::error::{Error, Result};
use crate::genericity::{discriminants, Discriminants};
use crate::singularities::{relative_positions, Rel, RelativePositions};
use serde::{Deserialize, Serialize};
use tables::{family_rows, portrait_count, portrait_label, CaseRow};

/// Case label within the tables, with the figure suffix once resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseLabel {
    pub family: u8,
    pub case: String,
    /// 1-based figure suffix; `None` until separatrix resolution for rows
    /// that carry several figures.
    pub subcase: Option<u8>,
}

impl CaseLabel {
    /// Fully resolved portrait label, e.g. "2.1a3" or "4.4b.iii".
    pub fn portrait(&self) -> Option<String> {
        if portrait_count(&self.case) == 1 {
            Some(self.case.clone())
        } else {
            self.subcase.map(|s| portrait_label(&self.case, s))
        }
    }

    pub fn needs_subcase(&self) -> bool {
        portrait_count(&self.case) > 1 && self.subcase.is_none()
    }
}

/// Canonical class of the portrait on the disk and on the unit square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortraitClass {
    pub disk_class: String,
    pub square_class: String,
    /// Time reversal in the transform log: stabilities in the normalized
    /// report are flipped relative to the input system.
    pub stability_flipped: bool,
}

/// Relative-position pattern in the family's table columns.
pub fn family_pattern(family: u8, rel: &RelativePositions) -> [Rel; 4] {
    match family {
        2 | 3 => [rel.q1_p2, rel.q2_p3, rel.q3_p4, rel.q4_p1],
        _ => [rel.q1_p2, rel.q2_p2, rel.q3_p4, rel.q4_p4],
    }
}

fn sign_matches(required: Option<Sign>, value: f64, near_zero: &mut bool) -> bool {
    match required {
        None => true,
        Some(want) => {
            let got = Sign::of(value, crate::algebra::ZERO_TOL);
            if got == Sign::Zero {
                *near_zero = true;
                false
            } else {
                got == want
            }
        }
    }
}

fn row_matches(row: &CaseRow, pattern: [Rel; 4], d: &Discriminants, near_zero: &mut bool) -> bool {
    let slope_ok = match row.b10_minus_a01 {
        None => true,
        Some(want) => {
            if d.sign_b10_minus_a01 == Sign::Zero {
                *near_zero = true;
                false
            } else {
                d.sign_b10_minus_a01 == want
            }
        }
    };
    row.pattern == pattern
        && slope_ok
        && sign_matches(row.det_a, d.det_a, near_zero)
        && sign_matches(row.trace, d.t, near_zero)
        && sign_matches(row.cherkas_k, d.k, near_zero)
        && sign_matches(row.delta, d.delta, near_zero)
        && sign_matches(row.small_delta, d.small_delta, near_zero)
}

/// Select the unique table row for a normalized position-1 system.
pub fn classify_case(c: &CanonicalSystem, tag: &FamilyTag) -> Result<CaseLabel> {
    if tag.position != 1 {
        return Err(Error::HypothesesNotMet {
            reason: format!("full case tables cover position 1 only; got position {}", tag.position),
        });
    }
    let rel = relative_positions(c);
    if rel.has_equality() {
        return Err(Error::NonGeneric {
            reason: "a q-singularity collides with a p-singularity".to_string(),
        });
    }
    let pattern = family_pattern(tag.family, &rel);
    let d = discriminants(c);
    let mut near_zero = false;
    let matches: Vec<&CaseRow> = family_rows(tag.family)
        .iter()
        .filter(|row| row_matches(row, pattern, &d, &mut near_zero))
        .collect();
    match matches.len() {
        1 => {
            let row = matches[0];
            Ok(CaseLabel {
                family: tag.family,
                case: row.label.to_string(),
                subcase: (row.portraits == 1).then_some(1),
            })
        }
        0 => {
            if near_zero {
                Err(Error::NonGeneric {
                    reason: "a table discriminant sits on a case boundary".to_string(),
                })
            } else {
                Err(Error::UnrealizablePosition { family: tag.family })
            }
        }
        _ => Err(Error::NonGeneric {
            reason: format!(
                "ambiguous classification: {:?}",
                matches.iter().map(|r| r.label).collect::<Vec<_>>()
            ),
        }),
    }
}

/// Map a resolved label to its canonical disk class; the square class comes
/// from the square signature module.
pub fn portrait_class(label: &CaseLabel, square_class: String, stability_flipped: bool) -> Result<PortraitClass> {
    let portrait = label.portrait().ok_or_else(|| Error::AmbiguousSkeleton {
        case: label.case.clone(),
        candidates: (1..=portrait_count(&label.case))
            .map(|k| portrait_label(&label.case, k))
            .collect(),
    })?;
    let disk = equivalence::disk_class(&portrait).ok_or_else(|| Error::NonGeneric {
        reason: format!("portrait label {portrait} not in the catalog"),
    })?;
    Ok(PortraitClass { disk_class: disk.to_string(), square_class, stability_flipped })
}
