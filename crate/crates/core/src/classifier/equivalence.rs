//! Topological-equivalence data over the portrait labels: the per-family
//! identification lists plus the cross-family ones, closed by union-find.
//!
//! The lists are encoded as data, not recomputed: the underlying homeomorphism
//! arguments are not mechanically derivable. Groups whose members carry
//! several figures identify figure k of one member with figure perm[k] of
//! another; all groups here are order-preserving except the 4.6a/4.9a block,
//! where the i/ii subcases cross.

use super::tables::{family_rows, portrait_count, portrait_label};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

/// A group member: case label and the figure permutation, slot -> suffix.
type Member = (&'static str, &'static [u8]);

const ONE: &[u8] = &[1];
const TWO: &[u8] = &[1, 2];
const TWO_X: &[u8] = &[2, 1];
const FOUR: &[u8] = &[1, 2, 3, 4];

/// Case-level identification groups from the per-family remark lists.
const CASE_GROUPS: &[&[Member]] = &[
    // family 1
    &[("1.2", ONE), ("1.3", ONE), ("1.5", ONE), ("1.8", ONE)],
    &[("1.4a", ONE), ("1.11a", ONE)],
    &[("1.4b", ONE), ("1.11b", ONE)],
    &[("1.6a", ONE), ("1.9a", ONE)],
    &[("1.6b", ONE), ("1.9b", ONE)],
    &[("1.7", ONE), ("1.10", ONE), ("1.12", ONE), ("1.13", ONE)],
    // family 2, first stage
    &[("2.1a", FOUR), ("2.1b", FOUR)],
    &[("2.2a", TWO), ("2.3a", TWO), ("2.5b", TWO), ("2.8b", TWO)],
    &[("2.2b", FOUR), ("2.3b", FOUR), ("2.5a", FOUR), ("2.8a", FOUR)],
    &[("2.4a", ONE), ("2.12b", ONE)],
    &[("2.4b", FOUR), ("2.12a", FOUR)],
    &[("2.4c", ONE), ("2.12c", ONE)],
    &[("2.6a", TWO), ("2.9a", TWO), ("2.10b", TWO)],
    &[("2.6b", TWO), ("2.9b", TWO), ("2.10a", TWO)],
    &[("2.6c", ONE), ("2.9c", ONE), ("2.10c", ONE)],
    &[("2.7a", ONE), ("2.11a", ONE), ("2.13b", ONE), ("2.14b", ONE)],
    &[("2.7b", TWO), ("2.11b", TWO), ("2.13a", TWO), ("2.14a", TWO)],
    &[("2.7c", ONE), ("2.11c", ONE), ("2.13c", ONE), ("2.14c", ONE)],
    &[("2.15a", ONE), ("2.15b", ONE)],
    // implied by the sliding argument and the stated class count (16):
    &[("2.2c", ONE), ("2.3c", ONE), ("2.5c", ONE), ("2.8c", ONE)],
    // family 2, second stage
    &[("2.1a", FOUR), ("2.2b", FOUR), ("2.4b", FOUR)],
    &[("2.1c", ONE), ("2.2c", ONE), ("2.4c", ONE), ("2.6c", ONE), ("2.7c", ONE), ("2.15c", ONE)],
    &[("2.2a", TWO), ("2.6a", TWO), ("2.6b", TWO), ("2.7b", TWO)],
    &[("2.4a", ONE), ("2.7a", ONE), ("2.15a", ONE)],
    // family 3
    &[("3.2", ONE), ("3.3", ONE), ("3.5", ONE), ("3.8", ONE)],
    &[("3.4", ONE), ("3.12", ONE)],
    &[("3.6", ONE), ("3.9", ONE), ("3.10", ONE)],
    &[("3.7", ONE), ("3.11", ONE), ("3.13", ONE), ("3.14", ONE)],
    // family 4
    &[("4.2a", ONE), ("4.3a", ONE), ("4.5b", ONE), ("4.8b", ONE)],
    &[("4.2b", ONE), ("4.3b", ONE), ("4.5a", ONE), ("4.8a", ONE)],
    &[("4.4a.i", ONE), ("4.11a.ii", ONE)],
    &[("4.4a.ii", ONE), ("4.11a.i", ONE)],
    // printed as "4.4b.i and 4.4b.ii", read as the four-figure pairing that
    // keeps the member count (13 classes) and the figure bijection consistent
    &[("4.4b.i", FOUR), ("4.11b.ii", FOUR)],
    &[
        ("4.4b.ii", ONE),
        ("4.7b", ONE),
        ("4.10b", ONE),
        ("4.11b.i", ONE),
        ("4.12a", ONE),
        ("4.13a", ONE),
        ("4.14a", ONE),
        ("4.14b", ONE),
    ],
    &[
        ("4.4b.iii", ONE),
        ("4.6b.iii", ONE),
        ("4.7c", ONE),
        ("4.9b.iii", ONE),
        ("4.10c", ONE),
        ("4.11b.iii", ONE),
        ("4.12c", ONE),
        ("4.13c", ONE),
        ("4.14c", ONE),
    ],
    // the i/ii subcases cross between 4.6a and 4.9a, as in the 4.4a/4.11a pair
    &[("4.6a.i", TWO), ("4.6a.ii", TWO_X), ("4.9a.i", TWO_X), ("4.9a.ii", TWO)],
    &[
        ("4.6b.i", TWO),
        ("4.6b.ii", TWO),
        ("4.7a", TWO),
        ("4.9b.i", TWO),
        ("4.9b.ii", TWO),
        ("4.10a", TWO),
        ("4.12b", TWO),
        ("4.13b", TWO),
    ],
];

/// Figure-level identifications stated directly on suffixed cases.
const PORTRAIT_EDGES: &[((&str, u8), (&str, u8))] = &[
    (("2.1a", 2), ("2.1a", 3)),
    (("2.1a", 3), ("2.2a", 1)),
    (("2.1a", 4), ("2.2a", 2)),
    (("2.1a", 4), ("2.4a", 1)),
    (("4.4b.i", 2), ("4.4b.i", 3)),
    (("4.4b.i", 3), ("4.6b.i", 1)),
    (("4.4b.i", 4), ("4.4b.ii", 1)),
    (("4.4b.i", 4), ("4.6b.i", 2)),
];

/// Cross-family identifications (applied only for the full disk closure).
/// "1.4b ~ 3.4" is printed as "1.1b" in the source; no such case exists and
/// 1.4b is the unique family-1 class with the matching structure.
const CROSS_FAMILY_EDGES: &[((&str, u8), (&str, u8))] = &[
    (("1.4b", 1), ("3.4", 1)),
    (("1.7", 1), ("3.7", 1)),
    (("1.14", 1), ("3.15", 1)),
    (("2.1a", 1), ("4.4b.i", 1)),
    (("2.1a", 3), ("4.4b.i", 3)),
    (("2.1a", 4), ("4.4b.i", 4)),
    (("2.1c", 1), ("4.4b.iii", 1)),
];

/// The twenty five disk classes, by representative, as named in the final
/// catalog.
pub const DISK_CLASS_REPS: &[&str] = &[
    "1.1", "1.2", "1.4a", "1.4b", "1.6a", "1.6b", "1.7", "1.14", "2.1a1", "2.1a3", "2.1a4",
    "2.1c", "3.1", "3.2", "3.6", "4.1a.i", "4.1a.ii", "4.1b.i", "4.1b.ii", "4.2a", "4.2b",
    "4.4a.i", "4.4a.ii", "4.6a.i.1", "4.6a.ii.1",
];

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All portrait labels of a family, in table order.
pub fn family_portrait_labels(family: u8) -> Vec<String> {
    let mut out = Vec::new();
    for row in family_rows(family) {
        if row.portraits == 1 {
            out.push(row.label.to_string());
        } else {
            for k in 1..=row.portraits {
                out.push(portrait_label(row.label, k));
            }
        }
    }
    out
}

fn node_name(case: &str, suffix: u8) -> String {
    if portrait_count(case) == 1 {
        case.to_string()
    } else {
        portrait_label(case, suffix)
    }
}

fn closure(families: &[u8], cross_family: bool) -> BTreeMap<String, String> {
    let mut labels: Vec<String> = Vec::new();
    for f in families {
        labels.extend(family_portrait_labels(*f));
    }
    let index: BTreeMap<String, usize> =
        labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let mut uf = UnionFind::new(labels.len());
    let get = |case: &str, suffix: u8| -> Option<usize> { index.get(&node_name(case, suffix)).copied() };

    for group in CASE_GROUPS {
        let (first_case, first_perm) = group[0];
        for (other_case, other_perm) in &group[1..] {
            debug_assert_eq!(first_perm.len(), other_perm.len(), "{first_case} vs {other_case}");
            for slot in 0..first_perm.len() {
                if let (Some(a), Some(b)) =
                    (get(first_case, first_perm[slot]), get(other_case, other_perm[slot]))
                {
                    uf.union(a, b);
                }
            }
        }
    }
    for ((ca, sa), (cb, sb)) in PORTRAIT_EDGES {
        if let (Some(a), Some(b)) = (get(ca, *sa), get(cb, *sb)) {
            uf.union(a, b);
        }
    }
    if cross_family {
        for ((ca, sa), (cb, sb)) in CROSS_FAMILY_EDGES {
            if let (Some(a), Some(b)) = (get(ca, *sa), get(cb, *sb)) {
                uf.union(a, b);
            }
        }
    }

    // Pick representatives: a catalogued rep name when the class contains one,
    // otherwise the lexicographically smallest member.
    let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        classes.entry(uf.find(i)).or_default().push(l.clone());
    }
    let mut out = BTreeMap::new();
    for members in classes.values() {
        let rep = members
            .iter()
            .find(|m| DISK_CLASS_REPS.contains(&m.as_str()))
            .unwrap_or_else(|| members.iter().min().expect("non-empty class"))
            .clone();
        for m in members {
            out.insert(m.clone(), rep.clone());
        }
    }
    out
}

fn full_closure() -> &'static BTreeMap<String, String> {
    static MAP: OnceLock<BTreeMap<String, String>> = OnceLock::new();
    MAP.get_or_init(|| closure(&[1, 2, 3, 4], true))
}

/// Disk class of a portrait label (case plus resolved figure suffix).
pub fn disk_class(portrait: &str) -> Option<&'static str> {
    full_closure().get(portrait).map(String::as_str)
}

/// Members of the disk class containing `portrait`.
pub fn disk_class_members(portrait: &str) -> Vec<String> {
    let Some(rep) = disk_class(portrait) else { return Vec::new() };
    full_closure()
        .iter()
        .filter(|(_, r)| r.as_str() == rep)
        .map(|(m, _)| m.clone())
        .collect()
}

/// Number of classes in one family's own closure (no cross-family edges).
pub fn family_class_count(family: u8) -> usize {
    let map = closure(&[family], false);
    let set: BTreeSet<&String> = map.values().collect();
    set.len()
}

/// Number of disk classes after the cross-family identifications.
pub fn disk_class_count() -> usize {
    let set: BTreeSet<&String> = full_closure().values().collect();
    set.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_family_class_counts() {
        assert_eq!(family_class_count(1), 8);
        assert_eq!(family_class_count(2), 4);
        assert_eq!(family_class_count(3), 6);
        assert_eq!(family_class_count(4), 14);
    }

    #[test]
    fn disk_classes_are_twenty_five_with_the_catalog_reps() {
        assert_eq!(disk_class_count(), 25);
        let reps: BTreeSet<&str> = full_closure().values().map(String::as_str).collect();
        for want in DISK_CLASS_REPS {
            assert!(reps.contains(want), "missing rep {want}");
        }
        assert_eq!(reps.len(), DISK_CLASS_REPS.len());
    }

    #[test]
    fn stated_identifications_hold() {
        assert_eq!(disk_class("1.3"), Some("1.2"));
        assert_eq!(disk_class("3.15"), Some("1.14"));
        assert_eq!(disk_class("4.4b.i.1"), Some("2.1a1"));
        assert_eq!(disk_class("4.4b.i.3"), Some("2.1a3"));
        assert_eq!(disk_class("2.1a2"), Some("2.1a3"));
        assert_eq!(disk_class("4.11b.ii.4"), Some("2.1a4"));
        assert_eq!(disk_class("2.15b"), Some("2.1a4"));
        assert_eq!(disk_class("2.9c"), Some("2.1c"));
        assert_eq!(disk_class("4.13c"), Some("2.1c"));
        assert_eq!(disk_class("4.6b.ii.1"), Some("2.1a3"));
        assert_eq!(disk_class("4.6b.ii.2"), Some("2.1a4"));
        assert_eq!(disk_class("4.9a.i.1"), Some("4.6a.ii.1"));
        assert_eq!(disk_class("4.9a.ii.1"), Some("4.6a.i.1"));
        assert_eq!(disk_class("1.1"), Some("1.1"));
        assert_eq!(disk_class("3.1"), Some("3.1"));
    }

    #[test]
    fn every_portrait_label_has_a_class() {
        for fam in 1..=4u8 {
            for label in family_portrait_labels(fam) {
                assert!(disk_class(&label).is_some(), "no class for {label}");
            }
        }
    }

    #[test]
    fn node_totals() {
        assert_eq!(family_portrait_labels(1).len(), 18);
        assert_eq!(family_portrait_labels(2).len(), 83);
        assert_eq!(family_portrait_labels(3).len(), 15);
        assert_eq!(family_portrait_labels(4).len(), 65);
    }
}
