//! Row data of the four position-1 case tables. Each row pins a
//! relative-position pattern plus the discriminant signs that split it, and
//! the number of separatrix-resolved portraits the row carries.

use crate::algebra::Sign;
use crate::singularities::Rel;

const L: Rel = Rel::Less;
const G: Rel = Rel::Greater;
const P: Option<Sign> = Some(Sign::Pos);
const N: Option<Sign> = Some(Sign::Neg);
const ANY: Option<Sign> = None;

#[derive(Clone, Copy, Debug)]
pub struct CaseRow {
    pub label: &'static str,
    pub family: u8,
    /// Family 1/4: (q1 vs p2, q2 vs p2, q3 vs p4, q4 vs p4).
    /// Family 2/3: (q1 vs p2, q2 vs p3, q3 vs p4, q4 vs p1).
    pub pattern: [Rel; 4],
    pub det_a: Option<Sign>,
    pub trace: Option<Sign>,
    pub cherkas_k: Option<Sign>,
    pub delta: Option<Sign>,
    pub b10_minus_a01: Option<Sign>,
    pub small_delta: Option<Sign>,
    /// Number of topologically distinct figures drawn for this row.
    pub portraits: u8,
}

const fn row(
    label: &'static str,
    family: u8,
    pattern: [Rel; 4],
    det_a: Option<Sign>,
    trace: Option<Sign>,
    cherkas_k: Option<Sign>,
    delta: Option<Sign>,
    b10_minus_a01: Option<Sign>,
    small_delta: Option<Sign>,
    portraits: u8,
) -> CaseRow {
    CaseRow { label, family, pattern, det_a, trace, cherkas_k, delta, b10_minus_a01, small_delta, portraits }
}

pub const FAMILY1: &[CaseRow] = &[
    row("1.1", 1, [G, L, L, G], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.2", 1, [L, L, L, G], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.3", 1, [G, L, G, G], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.4a", 1, [L, L, G, G], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.4b", 1, [L, L, G, G], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.5", 1, [G, G, L, G], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.6a", 1, [G, G, G, G], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.6b", 1, [G, G, G, G], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.7", 1, [L, G, G, G], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.8", 1, [G, L, L, L], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.9a", 1, [L, L, L, L], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.9b", 1, [L, L, L, L], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.10", 1, [L, L, G, L], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.11a", 1, [G, G, L, L], N, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.11b", 1, [G, G, L, L], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.12", 1, [L, G, L, L], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.13", 1, [G, G, G, L], P, ANY, ANY, ANY, ANY, ANY, 1),
    row("1.14", 1, [L, G, G, L], P, ANY, ANY, ANY, ANY, ANY, 1),
];

/// The fifteen base patterns of families 2 and 3, in table order.
const PATTERNS_2_3: [(u8, [Rel; 4]); 15] = [
    (1, [G, G, L, L]),
    (2, [L, G, L, L]),
    (3, [G, G, G, L]),
    (4, [L, G, G, L]),
    (5, [G, L, L, L]),
    (6, [G, L, G, L]),
    (7, [L, L, G, L]),
    (8, [G, G, L, G]),
    (9, [L, G, L, G]),
    (10, [G, G, G, G]),
    (11, [L, G, G, G]),
    (12, [G, L, L, G]),
    (13, [L, L, L, G]),
    (14, [G, L, G, G]),
    (15, [L, L, G, G]),
];

/// Portrait multiplicities of the family-2 rows, from the figure sets:
/// four for the rows equivalent to 2.1a, two for those equivalent to 2.2a,
/// one for the rest.
fn family2_portraits(base: u8, variant: char) -> u8 {
    match (base, variant) {
        (1, 'a') | (1, 'b') | (2, 'b') | (3, 'b') | (5, 'a') | (8, 'a') | (4, 'b') | (12, 'a') => 4,
        (2, 'a') | (3, 'a') | (5, 'b') | (8, 'b') | (6, 'a') | (6, 'b') | (9, 'a') | (9, 'b')
        | (10, 'a') | (10, 'b') | (7, 'b') | (11, 'b') | (13, 'a') | (14, 'a') => 2,
        _ => 1,
    }
}

pub fn family2() -> &'static [CaseRow] {
    static ROWS: std::sync::OnceLock<Vec<CaseRow>> = std::sync::OnceLock::new();
    ROWS.get_or_init(|| {
        let mut rows = Vec::with_capacity(45);
        for (base, pattern) in PATTERNS_2_3 {
            for (variant, delta, slope) in [('a', P, N), ('b', P, P), ('c', N, ANY)] {
                let label: &'static str = Box::leak(format!("2.{base}{variant}").into_boxed_str());
                rows.push(row(
                    label,
                    2,
                    pattern,
                    ANY,
                    ANY,
                    ANY,
                    delta,
                    slope,
                    ANY,
                    family2_portraits(base, variant),
                ));
            }
        }
        rows
    })
}

pub fn family3() -> &'static [CaseRow] {
    static ROWS: std::sync::OnceLock<Vec<CaseRow>> = std::sync::OnceLock::new();
    ROWS.get_or_init(|| {
        PATTERNS_2_3
            .iter()
            .map(|(base, pattern)| {
                let label: &'static str = Box::leak(format!("3.{base}").into_boxed_str());
                row(label, 3, *pattern, ANY, ANY, ANY, ANY, ANY, ANY, 1)
            })
            .collect()
    })
}

pub const FAMILY4: &[CaseRow] = &[
    row("4.1a.i", 4, [G, L, L, G], P, P, P, ANY, ANY, ANY, 1),
    row("4.1a.ii", 4, [G, L, L, G], P, P, N, ANY, ANY, ANY, 1),
    row("4.1b.i", 4, [G, L, L, G], P, N, P, ANY, ANY, ANY, 1),
    row("4.1b.ii", 4, [G, L, L, G], P, N, N, ANY, ANY, ANY, 1),
    row("4.2a", 4, [L, L, L, G], P, P, ANY, ANY, ANY, ANY, 1),
    row("4.2b", 4, [L, L, L, G], P, N, ANY, ANY, ANY, ANY, 1),
    row("4.3a", 4, [G, L, G, G], P, P, ANY, ANY, ANY, ANY, 1),
    row("4.3b", 4, [G, L, G, G], P, N, ANY, ANY, ANY, ANY, 1),
    row("4.4a.i", 4, [L, L, G, G], P, P, ANY, ANY, ANY, ANY, 1),
    row("4.4a.ii", 4, [L, L, G, G], P, N, ANY, ANY, ANY, ANY, 1),
    row("4.4b.i", 4, [L, L, G, G], N, ANY, ANY, P, ANY, P, 4),
    row("4.4b.ii", 4, [L, L, G, G], N, ANY, ANY, P, ANY, N, 1),
    row("4.4b.iii", 4, [L, L, G, G], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.5a", 4, [G, G, L, G], P, P, ANY, ANY, ANY, ANY, 1),
    row("4.5b", 4, [G, G, L, G], P, N, ANY, ANY, ANY, ANY, 1),
    row("4.6a.i", 4, [G, G, G, G], P, P, ANY, ANY, ANY, ANY, 2),
    row("4.6a.ii", 4, [G, G, G, G], P, N, ANY, ANY, ANY, ANY, 2),
    row("4.6b.i", 4, [G, G, G, G], N, ANY, ANY, P, ANY, P, 2),
    row("4.6b.ii", 4, [G, G, G, G], N, ANY, ANY, P, ANY, N, 2),
    row("4.6b.iii", 4, [G, G, G, G], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.7a", 4, [L, G, G, G], N, ANY, ANY, P, ANY, P, 2),
    row("4.7b", 4, [L, G, G, G], N, ANY, ANY, P, ANY, N, 1),
    row("4.7c", 4, [L, G, G, G], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.8a", 4, [G, L, L, L], P, P, ANY, ANY, ANY, ANY, 1),
    row("4.8b", 4, [G, L, L, L], P, N, ANY, ANY, ANY, ANY, 1),
    row("4.9a.i", 4, [L, L, L, L], P, P, ANY, ANY, ANY, ANY, 2),
    row("4.9a.ii", 4, [L, L, L, L], P, N, ANY, ANY, ANY, ANY, 2),
    row("4.9b.i", 4, [L, L, L, L], N, ANY, ANY, P, ANY, P, 2),
    row("4.9b.ii", 4, [L, L, L, L], N, ANY, ANY, P, ANY, N, 2),
    // Printed with Δ > 0 in the source table, which would overlap rows i/ii;
    // encoded as Δ < 0 like every other `.iii` row.
    row("4.9b.iii", 4, [L, L, L, L], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.10a", 4, [L, L, G, L], N, ANY, ANY, P, ANY, P, 2),
    row("4.10b", 4, [L, L, G, L], N, ANY, ANY, P, ANY, N, 1),
    row("4.10c", 4, [L, L, G, L], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.11a.i", 4, [G, G, L, L], P, P, ANY, ANY, ANY, ANY, 1),
    row("4.11a.ii", 4, [G, G, L, L], P, N, ANY, ANY, ANY, ANY, 1),
    row("4.11b.i", 4, [G, G, L, L], N, ANY, ANY, P, ANY, P, 1),
    row("4.11b.ii", 4, [G, G, L, L], N, ANY, ANY, P, ANY, N, 4),
    row("4.11b.iii", 4, [G, G, L, L], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.12a", 4, [L, G, L, L], N, ANY, ANY, P, ANY, P, 1),
    row("4.12b", 4, [L, G, L, L], N, ANY, ANY, P, ANY, N, 2),
    row("4.12c", 4, [L, G, L, L], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.13a", 4, [G, G, G, L], N, ANY, ANY, P, ANY, P, 1),
    row("4.13b", 4, [G, G, G, L], N, ANY, ANY, P, ANY, N, 2),
    row("4.13c", 4, [G, G, G, L], N, ANY, ANY, N, ANY, ANY, 1),
    row("4.14a", 4, [L, G, G, L], N, ANY, ANY, P, ANY, P, 1),
    row("4.14b", 4, [L, G, G, L], N, ANY, ANY, P, ANY, N, 1),
    row("4.14c", 4, [L, G, G, L], N, ANY, ANY, N, ANY, ANY, 1),
];

/// All rows of one family's table.
pub fn family_rows(family: u8) -> &'static [CaseRow] {
    match family {
        1 => FAMILY1,
        2 => family2(),
        3 => family3(),
        4 => FAMILY4,
        _ => &[],
    }
}

/// Number of portraits a case contributes (1 when the row is unknown).
pub fn portrait_count(label: &str) -> u8 {
    for fam in 1..=4 {
        if let Some(r) = family_rows(fam).iter().find(|r| r.label == label) {
            return r.portraits;
        }
    }
    1
}

/// Portrait label for a case and 1-based figure suffix: plain concatenation
/// ("2.1a" + 3 → "2.1a3") except after a roman subcase (".i" → ".i.3").
pub fn portrait_label(case: &str, suffix: u8) -> String {
    let roman = case.ends_with(".i") || case.ends_with(".ii") || case.ends_with(".iii");
    if roman {
        format!("{case}.{suffix}")
    } else {
        format!("{case}{suffix}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        assert_eq!(FAMILY1.len(), 18);
        assert_eq!(family2().len(), 45);
        assert_eq!(family3().len(), 15);
        assert_eq!(FAMILY4.len(), 47);
    }

    #[test]
    fn portrait_totals_match_figure_counts() {
        let total = |rows: &[CaseRow]| rows.iter().map(|r| r.portraits as usize).sum::<usize>();
        assert_eq!(total(FAMILY1), 18);
        assert_eq!(total(family2()), 83);
        assert_eq!(total(family3()), 15);
        assert_eq!(total(FAMILY4), 65);
    }

    #[test]
    fn portrait_label_formats() {
        assert_eq!(portrait_label("2.1a", 3), "2.1a3");
        assert_eq!(portrait_label("4.4b.i", 4), "4.4b.i.4");
        assert_eq!(portrait_label("4.12b", 2), "4.12b2");
    }

    #[test]
    fn family1_unrealizable_patterns_absent() {
        for pat in [[L, G, L, G], [G, L, G, L]] {
            assert!(!FAMILY1.iter().any(|r| r.pattern == pat));
            assert!(!FAMILY4.iter().any(|r| r.pattern == pat));
        }
        // families 2/3 miss the all-Less pattern
        assert!(!family2().iter().any(|r| r.pattern == [L, L, L, L]));
        assert!(!family3().iter().any(|r| r.pattern == [L, L, L, L]));
    }
}
