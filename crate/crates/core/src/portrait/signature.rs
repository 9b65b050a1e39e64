//! Topological signatures of a traced skeleton.
//!
//! The fine signature keeps singularity identities and is only meaningful
//! within one table row, where the ids are canonical. The coarse signature
//! hashes the separatrix configuration as an embedded graph: typed nodes,
//! flow-directed edges (separatrices plus equator arcs) and the cyclic order
//! of edge ends around each non-spiral node. It is refined Weisfeiler–Leman
//! style over the darts and canonicalized under reflection and global time
//! reversal, the moves allowed by topological equivalence of portraits.

use crate::algebra::Vec2;
use crate::canonical::CanonicalSystem;
use crate::compactification::{chart_rhs, ChartId};
use crate::portrait::separatrix::{Endpoint, Inventory, SeparatrixSkeleton};
use crate::algebra::EigenPair;
use crate::singularities::{Location, LocalType, SingId};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum NodeKind {
    FiniteAttracting,
    FiniteRepelling,
    FiniteSaddle,
    InfiniteAttracting,
    InfiniteRepelling,
    InfiniteSaddle,
    Cycle,
    Polycycle,
    Other,
}

impl NodeKind {
    fn of(inv: &Inventory, id: SingId) -> NodeKind {
        let Some(r) = inv.get(id) else { return NodeKind::Other };
        let infinite = matches!(r.location, Location::Infinity { .. });
        match r.local_type {
            LocalType::Saddle => {
                if infinite {
                    NodeKind::InfiniteSaddle
                } else {
                    NodeKind::FiniteSaddle
                }
            }
            t if t.is_attracting() => {
                if infinite {
                    NodeKind::InfiniteAttracting
                } else {
                    NodeKind::FiniteAttracting
                }
            }
            t if t.is_repelling() => {
                if infinite {
                    NodeKind::InfiniteRepelling
                } else {
                    NodeKind::FiniteRepelling
                }
            }
            _ => NodeKind::Other,
        }
    }

    fn reversed(self) -> NodeKind {
        match self {
            NodeKind::FiniteAttracting => NodeKind::FiniteRepelling,
            NodeKind::FiniteRepelling => NodeKind::FiniteAttracting,
            NodeKind::InfiniteAttracting => NodeKind::InfiniteRepelling,
            NodeKind::InfiniteRepelling => NodeKind::InfiniteAttracting,
            other => other,
        }
    }
}

/// Exact endpoint table: one entry per traced branch, sorted.
pub type FineSignature = Vec<(String, bool, u8, String)>;

pub fn fine_signature(skel: &SeparatrixSkeleton) -> FineSignature {
    let mut rows: FineSignature = skel
        .separatrices
        .iter()
        .map(|s| {
            let end = match &s.endpoint {
                Endpoint::Singularity(id) => id.to_string(),
                Endpoint::LimitCycle => "cycle".to_string(),
                Endpoint::Polycycle => "polycycle".to_string(),
                Endpoint::Unresolved(msg) => format!("unresolved:{msg}"),
            };
            (s.from.to_string(), s.stable, s.side, end)
        })
        .collect();
    rows.sort();
    rows
}

fn fxmix(h: u64, v: u64) -> u64 {
    (h ^ v).wrapping_mul(0x100000001b3).rotate_left(17)
}

/// Flow direction of the equator arc at angle `theta` (true = counterclockwise).
fn equator_flow_ccw(c: &CanonicalSystem, theta: f64) -> bool {
    let (s, co) = theta.sin_cos();
    if co.abs() >= s.abs() {
        let u = s / co;
        let du = chart_rhs(c, ChartId::U1, u, 0.0).x;
        // u = tan(theta) increases with theta on every branch this chart covers
        du > 0.0
    } else {
        let u = co / s;
        let du = chart_rhs(c, ChartId::U2, u, 0.0).x;
        // u = cot(theta) decreases as theta increases
        du < 0.0
    }
}

/// A half-edge anchored at `node` with an outward tangent `angle`.
#[derive(Clone, Debug)]
struct Dart {
    node: usize,
    /// Flow leaves the node through this end.
    outgoing: bool,
    angle: f64,
    twin: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoarseSignature(Vec<u64>);

struct MapGraph {
    kinds: Vec<NodeKind>,
    darts: Vec<Dart>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
}

fn build_map_graph(c: &CanonicalSystem, skel: &SeparatrixSkeleton, inv: &Inventory) -> MapGraph {

    // --- nodes ---
    let mut ids: Vec<SingId> = inv.reports.iter().map(|r| r.id).collect();
    ids.sort();
    let node_of = |id: SingId| ids.iter().position(|x| *x == id);
    let n_sing = ids.len();
    let cycle_node = n_sing;
    let polycycle_node = n_sing + 1;
    let mut kinds: Vec<NodeKind> = ids.iter().map(|id| NodeKind::of(inv, *id)).collect();
    kinds.push(NodeKind::Cycle);
    kinds.push(NodeKind::Polycycle);
    // spiral nodes have no meaningful cyclic order of arriving ends
    let ordered: Vec<bool> = ids
        .iter()
        .map(|id| {
            inv.get(*id)
                .map(|r| matches!(r.eigenvalues, EigenPair::Real(_, _)))
                .unwrap_or(false)
        })
        .chain([false, false])
        .collect();
    let node_disk: Vec<Option<Vec2>> = ids
        .iter()
        .map(|id| inv.get(*id).map(Inventory::disk_of))
        .chain([None, None])
        .collect();

    // radius at which incident arcs are angularly separated: inside a disc
    // containing no other singularity, disjoint arcs keep a fixed angular
    // order, so the order there equals the asymptotic one
    let r_star: Vec<f64> = (0..kinds.len())
        .map(|i| {
            let Some(p) = node_disk[i] else { return 0.05 };
            let mut dmin = f64::INFINITY;
            for (j, q) in node_disk.iter().enumerate() {
                if i != j {
                    if let Some(q) = q {
                        dmin = dmin.min(p.sub(*q).norm());
                    }
                }
            }
            (0.25 * dmin).clamp(1e-3, 0.08)
        })
        .collect();

    // --- darts, two per edge ---
    let mut darts: Vec<Dart> = Vec::new();
    let tau = 2.0 * std::f64::consts::PI;
    let mut push_edge =
        |darts: &mut Vec<Dart>, from: usize, a_from: f64, to: usize, a_to: f64| {
            let i = darts.len();
            darts.push(Dart { node: from, outgoing: true, angle: a_from.rem_euclid(tau), twin: i + 1 });
            darts.push(Dart { node: to, outgoing: false, angle: a_to.rem_euclid(tau), twin: i });
        };

    // chord angle of the arc where it first leaves the r-disc around the node
    let end_angle = |arc: &[Vec2], from_start: bool, node: Vec2, r: f64| -> f64 {
        let n = arc.len();
        let idx = |k: usize| if from_start { k } else { n - 1 - k };
        let mut prev = arc[idx(0)];
        for k in 1..n {
            let cur = arc[idx(k)];
            let (dp, dc) = (prev.sub(node).norm(), cur.sub(node).norm());
            if dc >= r {
                let t = if (dc - dp).abs() > 1e-300 { (r - dp) / (dc - dp) } else { 1.0 };
                let hit = prev.add(cur.sub(prev).scale(t.clamp(0.0, 1.0)));
                let d = hit.sub(node);
                return d.y.atan2(d.x);
            }
            prev = cur;
        }
        let d = arc[idx(n - 1)].sub(node);
        d.y.atan2(d.x)
    };

    // a saddle-saddle connection is traced once from each end; keep one copy
    let mut skip = vec![false; skel.separatrices.len()];
    for (i, si) in skel.separatrices.iter().enumerate() {
        if !si.stable || skip[i] {
            continue;
        }
        let Endpoint::Singularity(peer) = si.endpoint else { continue };
        let peer_is_saddle =
            inv.get(peer).map(|r| r.local_type == LocalType::Saddle).unwrap_or(false);
        if !peer_is_saddle {
            continue;
        }
        let mid_i = si.arc[si.arc.len() / 2];
        for (j, sj) in skel.separatrices.iter().enumerate() {
            if skip[j] || sj.stable || sj.from != peer {
                continue;
            }
            if sj.endpoint != Endpoint::Singularity(si.from) {
                continue;
            }
            // same orbit: the midpoint of one trace lies on the other's curve
            let mut dmin = f64::INFINITY;
            for w in sj.arc.windows(2) {
                let (a, b) = (w[0], w[1]);
                let ab = b.sub(a);
                let len2 = ab.dot(ab);
                let t = if len2 > 0.0 { (mid_i.sub(a).dot(ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
                dmin = dmin.min(mid_i.sub(a.add(ab.scale(t))).norm());
                if dmin < 1e-4 {
                    break;
                }
            }
            if dmin < 1e-4 {
                skip[i] = true;
                break;
            }
        }
    }

    for (idx, s) in skel.separatrices.iter().enumerate() {
        if skip[idx] {
            continue;
        }
        let Some(from) = node_of(s.from) else { continue };
        let to = match &s.endpoint {
            Endpoint::Singularity(id) => match node_of(*id) {
                Some(i) => i,
                None => continue,
            },
            Endpoint::LimitCycle => cycle_node,
            Endpoint::Polycycle => polycycle_node,
            Endpoint::Unresolved(_) => continue,
        };
        if s.arc.len() < 2 {
            continue;
        }
        let from_disk = node_disk[from].unwrap_or(s.arc[0]);
        let a_src = end_angle(&s.arc, true, from_disk, r_star[from]);
        let a_dst = match node_disk[to] {
            Some(nd) => end_angle(&s.arc, false, nd, r_star[to]),
            None => 0.0,
        };
        // orient along the flow: stable branches are traced backward in time,
        // so the flow runs endpoint -> saddle
        if s.stable {
            push_edge(&mut darts, to, a_dst, from, a_src);
        } else {
            push_edge(&mut darts, from, a_src, to, a_dst);
        }
    }

    // equator arcs between consecutive infinite singularities
    let mut equatorial: Vec<(f64, usize)> = inv
        .reports
        .iter()
        .filter_map(|r| match r.location {
            Location::Infinity { angle } => {
                let a = angle.rem_euclid(2.0 * std::f64::consts::PI);
                node_of(r.id).map(|i| (a, i))
            }
            _ => None,
        })
        .collect();
    equatorial.sort_by(|a, b| a.0.total_cmp(&b.0));
    let m = equatorial.len();
    for k in 0..m {
        let (a0, i0) = equatorial[k];
        let (a1raw, i1) = equatorial[(k + 1) % m];
        let a1 = if k + 1 < m { a1raw } else { a1raw + 2.0 * std::f64::consts::PI };
        let mid = (0.5 * (a0 + a1)).rem_euclid(2.0 * std::f64::consts::PI);
        // chord direction toward the circle point at distance r_star, so the
        // equator darts order correctly against arcs arriving tangent to it
        let chord = |node: usize, at: f64, ccw: bool| -> f64 {
            let r = r_star[node];
            let phi = 2.0 * (0.5 * r).asin();
            let target = if ccw { at + phi } else { at - phi };
            let p = Vec2::new(target.cos(), target.sin());
            let nd = Vec2::new(at.cos(), at.sin());
            let d = p.sub(nd);
            d.y.atan2(d.x)
        };
        if equator_flow_ccw(c, mid) {
            push_edge(&mut darts, i0, chord(i0, a0, true), i1, chord(i1, a1raw, false));
        } else {
            push_edge(&mut darts, i1, chord(i1, a1raw, false), i0, chord(i0, a0, true));
        }
    }

    // --- rotation: next dart counterclockwise around each ordered node ---
    let nd = darts.len();
    let mut sigma = vec![usize::MAX; nd];
    let mut sigma_inv = vec![usize::MAX; nd];
    for node in 0..kinds.len() {
        let mut local: Vec<usize> =
            (0..nd).filter(|i| darts[*i].node == node).collect();
        if local.is_empty() {
            continue;
        }
        if ordered[node] {
            local.sort_by(|a, b| darts[*a].angle.total_cmp(&darts[*b].angle));
            let l = local.len();
            for (j, d) in local.iter().enumerate() {
                sigma[*d] = local[(j + 1) % l];
                sigma_inv[*d] = local[(j + l - 1) % l];
            }
        } else {
            for d in &local {
                sigma[*d] = *d;
                sigma_inv[*d] = *d;
            }
        }
    }
    MapGraph { kinds, darts, sigma, sigma_inv }
}

/// Exact canonical encoding of one connected component of the map, rooted at
/// `root`, exploring darts in a deterministic first-visit order. `mirror`
/// swaps the rotation direction, `flip` reverses time.
fn component_encoding(g: &MapGraph, root: usize, mirror: bool, flip: bool) -> Vec<u32> {
    let nd = g.darts.len();
    let mut num = vec![u32::MAX; nd];
    let mut order: Vec<usize> = Vec::new();
    num[root] = 0;
    order.push(root);
    let mut head = 0;
    let mut code: Vec<u32> = Vec::new();
    while head < order.len() {
        let d = order[head];
        head += 1;
        let kind = {
            let mut k = g.kinds[g.darts[d].node];
            if flip {
                k = k.reversed();
            }
            k as u32
        };
        let out = (g.darts[d].outgoing != flip) as u32;
        code.push(kind);
        code.push(out);
        let nbrs = if mirror {
            [g.darts[d].twin, g.sigma_inv[d], g.sigma[d]]
        } else {
            [g.darts[d].twin, g.sigma[d], g.sigma_inv[d]]
        };
        for n in nbrs {
            if num[n] == u32::MAX {
                num[n] = order.len() as u32;
                order.push(n);
            }
            code.push(num[n]);
        }
    }
    code
}

/// Exact canonical signature: per connected component, the minimum encoding
/// over all roots; canonicalized over reflection and time reversal; isolated
/// singularities appended as a typed multiset.
fn canonical_map_signature(g: &MapGraph, mirror: bool, flip: bool) -> Vec<u64> {
    let nd = g.darts.len();
    // connected components over {twin, sigma, sigma_inv}
    let mut comp = vec![usize::MAX; nd];
    let mut n_comp = 0;
    for d0 in 0..nd {
        if comp[d0] != usize::MAX {
            continue;
        }
        let mut stack = vec![d0];
        comp[d0] = n_comp;
        while let Some(d) = stack.pop() {
            for n in [g.darts[d].twin, g.sigma[d], g.sigma_inv[d]] {
                if comp[n] == usize::MAX {
                    comp[n] = n_comp;
                    stack.push(n);
                }
            }
        }
        n_comp += 1;
    }
    let mut encodings: Vec<Vec<u32>> = Vec::new();
    for k in 0..n_comp {
        let mut best: Option<Vec<u32>> = None;
        for root in (0..nd).filter(|d| comp[*d] == k) {
            let e = component_encoding(g, root, mirror, flip);
            if best.as_ref().map(|b| e < *b).unwrap_or(true) {
                best = Some(e);
            }
        }
        encodings.push(best.expect("non-empty component"));
    }
    encodings.sort();
    // isolated singularities (no incident separatrix)
    let mut lonely: Vec<u32> = (0..g.kinds.len())
        .filter(|n| !g.darts.iter().any(|d| d.node == *n))
        .filter(|n| !matches!(g.kinds[*n], NodeKind::Cycle | NodeKind::Polycycle))
        .map(|n| {
            let mut k = g.kinds[n];
            if flip {
                k = k.reversed();
            }
            k as u32
        })
        .collect();
    lonely.sort_unstable();
    // fold into u64 words
    let mut out: Vec<u64> = Vec::new();
    for e in encodings {
        let mut h: u64 = 0xcbf29ce484222325;
        for v in e {
            h = fxmix(h, v as u64);
            out.push(v as u64 | 0x8000_0000_0000_0000);
        }
        out.push(h);
        out.push(u64::MAX); // component separator
    }
    for l in lonely {
        out.push(l as u64);
    }
    out
}

/// All four canonicalization variants (reflection x time flip).
pub fn coarse_signature_variants(
    c: &CanonicalSystem,
    skel: &SeparatrixSkeleton,
    inv: &Inventory,
) -> Vec<Vec<u64>> {
    let g = build_map_graph(c, skel, inv);
    vec![
        canonical_map_signature(&g, false, false),
        canonical_map_signature(&g, true, false),
        canonical_map_signature(&g, false, true),
        canonical_map_signature(&g, true, true),
    ]
}

pub fn coarse_signature(
    c: &CanonicalSystem,
    skel: &SeparatrixSkeleton,
    inv: &Inventory,
) -> CoarseSignature {
    let mut variants = coarse_signature_variants(c, skel, inv);
    variants.sort();
    CoarseSignature(variants[0].clone())
}

/// Human-readable dump of the embedded graph: per node, the cyclic dart order.
pub fn debug_map_graph(c: &CanonicalSystem, skel: &SeparatrixSkeleton, inv: &Inventory) -> String {
    let g = build_map_graph(c, skel, inv);
    let mut out = String::new();
    for node in 0..g.kinds.len() {
        let mut local: Vec<usize> = (0..g.darts.len()).filter(|i| g.darts[*i].node == node).collect();
        if local.is_empty() {
            continue;
        }
        local.sort_by(|a, b| g.darts[*a].angle.total_cmp(&g.darts[*b].angle));
        out.push_str(&format!("node {:?}:", g.kinds[node]));
        for d in local {
            let t = g.darts[d].twin;
            out.push_str(&format!(
                " [{} {:?}@{:.2}]",
                if g.darts[d].outgoing { "out" } else { "in" },
                g.kinds[g.darts[t].node],
                g.darts[d].angle
            ));
        }
        out.push('\n');
    }
    out
}
