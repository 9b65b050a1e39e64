//! Deterministic SVG rendering of disk and square portraits, plus the JSON
//! skeleton export.

use crate::algebra::Vec2;
use crate::canonical::CanonicalSystem;
use crate::portrait::cycle::CycleSearch;
use crate::portrait::integrate::{integrate, plane_to_disk, Controls, State, Target};
use crate::portrait::separatrix::{Endpoint, Inventory, SeparatrixSkeleton};
use crate::singularities::{Location, LocalType};
use serde::Serialize;
use std::fmt::Write as _;

const W: f64 = 560.0;
const MARGIN: f64 = 20.0;

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

struct Canvas {
    body: String,
    scale: f64,
    cx: f64,
    cy: f64,
}

impl Canvas {
    fn new(half_extent: f64) -> Canvas {
        Canvas { body: String::new(), scale: (W / 2.0 - MARGIN) / half_extent, cx: W / 2.0, cy: W / 2.0 }
    }

    fn map(&self, p: Vec2) -> (f64, f64) {
        (self.cx + self.scale * p.x, self.cy - self.scale * p.y)
    }

    fn polyline(&mut self, pts: &[Vec2], color: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        // thin long arcs: subsample to keep files small but deterministic
        let step = (pts.len() / 700).max(1);
        for (i, p) in pts.iter().step_by(step).enumerate() {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, fmt(x), fmt(y));
        }
        let last = self.map(*pts.last().unwrap());
        let _ = write!(d, " L{} {}", fmt(last.0), fmt(last.1));
        let _ = writeln!(
            self.body,
            r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="{width}"/>"#
        );
    }

    fn circle(&mut self, p: Vec2, r: f64, fill: &str, stroke: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}" stroke="{stroke}" stroke-width="1.2"/>"#,
            fmt(x),
            fmt(y),
            fmt(r)
        );
    }

    fn cross(&mut self, p: Vec2, r: f64, color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="{color}" stroke-width="1.6"/>"#,
            fmt(x - r),
            fmt(y - r),
            fmt(x + r),
            fmt(y + r),
            fmt(x - r),
            fmt(y + r),
            fmt(x + r),
            fmt(y - r)
        );
    }

    fn finish(self, clip_circle: bool) -> String {
        let clip = if clip_circle {
            format!(
                r#"<clipPath id="disk"><circle cx="{}" cy="{}" r="{}"/></clipPath>"#,
                fmt(self.cx),
                fmt(self.cy),
                fmt(self.scale)
            )
        } else {
            String::new()
        };
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{W}\" viewBox=\"0 0 {W} {W}\">\n<defs>{clip}</defs>\n<rect width=\"{W}\" height=\"{W}\" fill=\"white\"/>\n{}\n</svg>\n",
            self.body
        )
    }
}

fn glyph(canvas: &mut Canvas, ty: LocalType, p: Vec2) {
    match ty {
        LocalType::Saddle => canvas.cross(p, 4.0, "#444444"),
        t if t.is_attracting() => canvas.circle(p, 3.2, "#1d62b5", "#1d62b5"),
        t if t.is_repelling() => canvas.circle(p, 3.2, "white", "#c23b22"),
        LocalType::Center => canvas.circle(p, 3.2, "white", "#2d8a4e"),
        _ => canvas.circle(p, 2.5, "#999999", "#999999"),
    }
}

/// Sample points of an invariant line mapped to the disk.
fn line_on_disk(vertical: bool, c: f64) -> Vec<Vec2> {
    let mut pts = Vec::with_capacity(401);
    for k in 0..=400 {
        let t = (k as f64 / 400.0 - 0.5) * 2.0; // -1..1
        let s = t / (1.0 - t * t + 1e-12); // stretches to +-inf
        let p = if vertical { Vec2::new(c, s) } else { Vec2::new(s, c) };
        pts.push(plane_to_disk(p));
    }
    pts
}

/// Deterministic per-region sample orbits: short integrations from the cell
/// midpoints of the octothorpe grid.
fn region_orbits(c: &CanonicalSystem, inv: &Inventory, ctl: &Controls) -> Vec<Vec<Vec2>> {
    let xs = [-c.alpha - 0.8, -c.alpha + (1.0 - c.alpha - -c.alpha) / 2.0, 1.0 - c.alpha + 0.8];
    let ys = [-c.beta - 0.8, -c.beta + 0.5, 1.0 - c.beta + 0.8];
    let mut seeds = Vec::new();
    for x in xs {
        for y in ys {
            seeds.push(Vec2::new(x, y));
        }
    }
    seeds.push(Vec2::new(3.2, 2.1));
    seeds.push(Vec2::new(-3.2, -2.1));
    let targets: Vec<Target> = inv.targets();
    let mut out = Vec::new();
    for s in seeds {
        let short = Controls { max_tau: 60.0, ..*ctl };
        for fwd in [true, false] {
            if let Ok(t) = integrate(c, State::plane(s), fwd, &targets, &short) {
                out.push(t.samples.iter().map(|q| q.disk).collect());
            }
        }
    }
    out
}

/// Disk portrait: boundary, octothorpe, singularities, separatrices, cycle,
/// one orbit per region.
pub fn render_disk(
    c: &CanonicalSystem,
    inv: &Inventory,
    skel: &SeparatrixSkeleton,
    cycle: Option<&CycleSearch>,
    ctl: &Controls,
) -> String {
    let mut canvas = Canvas::new(1.04);
    // boundary
    canvas.circle(Vec2::new(0.0, 0.0), canvas.scale, "none", "#222222");
    // octothorpe lines
    for (vertical, coord) in [
        (true, -c.alpha),
        (true, 1.0 - c.alpha),
        (false, -c.beta),
        (false, 1.0 - c.beta),
    ] {
        canvas.polyline(&line_on_disk(vertical, coord), "#bbbbbb", 0.8);
    }
    for orbit in region_orbits(c, inv, ctl) {
        canvas.polyline(&orbit, "#dddddd", 0.7);
    }
    for s in &skel.separatrices {
        let color = if s.stable { "#1d62b5" } else { "#c23b22" };
        canvas.polyline(&s.arc, color, 1.1);
    }
    if let Some(CycleSearch::Cycle(info)) = cycle {
        let pts: Vec<Vec2> = info.orbit.iter().map(|p| plane_to_disk(*p)).collect();
        canvas.polyline(&pts, "#2d8a4e", 1.6);
    }
    let mut sorted: Vec<_> = inv.reports.iter().collect();
    sorted.sort_by_key(|r| r.id);
    for r in sorted {
        let p = Inventory::disk_of(r);
        glyph(&mut canvas, r.local_type, p);
    }
    canvas.finish(false)
}

/// Square portrait: the unit square of the original coordinates, its edge
/// singularities, interior equilibrium, separatrix pieces and grid orbits.
pub fn render_square(
    c: &CanonicalSystem,
    inv: &Inventory,
    skel: &SeparatrixSkeleton,
    cycle: Option<&CycleSearch>,
    ctl: &Controls,
) -> String {
    let mut canvas = Canvas::new(0.62);
    canvas.cx = W / 2.0 - canvas.scale * 0.5;
    canvas.cy = W / 2.0 + canvas.scale * 0.5;
    // square border in original coordinates (shift by alpha, beta)
    let corners = [
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(0.0, 1.0),
        Vec2::new(0.0, 0.0),
    ];
    canvas.polyline(&corners, "#222222", 1.2);

    let to_orig = |p: Vec2| Vec2::new(p.x + c.alpha, p.y + c.beta);
    let disk_to_orig = |d: Vec2| {
        let denom = (1.0 - d.x * d.x - d.y * d.y).max(1e-12).sqrt();
        to_orig(Vec2::new(d.x / denom, d.y / denom))
    };
    let inside = |p: Vec2| (-0.02..=1.02).contains(&p.x) && (-0.02..=1.02).contains(&p.y);

    // grid orbits within the square
    let targets: Vec<Target> = inv.targets();
    for i in 0..5 {
        for j in 0..5 {
            let orig = Vec2::new((i as f64 + 0.5) / 5.0, (j as f64 + 0.5) / 5.0);
            let canon = Vec2::new(orig.x - c.alpha, orig.y - c.beta);
            let short = Controls { max_tau: 120.0, ..*ctl };
            if let Ok(t) = integrate(c, State::plane(canon), true, &targets, &short) {
                let pts: Vec<Vec2> = t.samples.iter().map(|s| disk_to_orig(s.disk)).collect();
                canvas.polyline(&pts, "#dddddd", 0.7);
            }
        }
    }
    for s in &skel.separatrices {
        let pts: Vec<Vec2> = s.arc.iter().map(|d| disk_to_orig(*d)).filter(|p| inside(*p)).collect();
        let color = if s.stable { "#1d62b5" } else { "#c23b22" };
        canvas.polyline(&pts, color, 1.1);
    }
    if let Some(CycleSearch::Cycle(info)) = cycle {
        let pts: Vec<Vec2> = info.orbit.iter().map(|p| to_orig(*p)).collect();
        canvas.polyline(&pts, "#2d8a4e", 1.6);
    }
    let mut sorted: Vec<_> = inv.reports.iter().collect();
    sorted.sort_by_key(|r| r.id);
    for r in sorted {
        if let Location::Finite(p) = r.location {
            let o = to_orig(p);
            if inside(o) {
                glyph(&mut canvas, r.local_type, o);
            }
        }
    }
    canvas.finish(false)
}

#[derive(Serialize)]
struct JsonSingularity {
    id: String,
    location: Location,
    local_type: String,
}

#[derive(Serialize)]
struct JsonSeparatrix {
    from: String,
    to: String,
    stable: bool,
    points: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct JsonSkeleton {
    singularities: Vec<JsonSingularity>,
    separatrices: Vec<JsonSeparatrix>,
    cycles: Vec<Vec<[f64; 2]>>,
}

/// JSON export of the skeleton: singularities, separatrices with endpoints,
/// and any detected cycle.
pub fn skeleton_json(
    inv: &Inventory,
    skel: &SeparatrixSkeleton,
    cycle: Option<&CycleSearch>,
) -> serde_json::Value {
    let singularities = inv
        .reports
        .iter()
        .map(|r| JsonSingularity {
            id: r.id.to_string(),
            location: r.location,
            local_type: format!("{:?}", r.local_type),
        })
        .collect();
    let separatrices = skel
        .separatrices
        .iter()
        .map(|s| JsonSeparatrix {
            from: s.from.to_string(),
            to: match &s.endpoint {
                Endpoint::Singularity(id) => id.to_string(),
                Endpoint::LimitCycle => "cycle".to_string(),
                Endpoint::Polycycle => "polycycle".to_string(),
                Endpoint::Unresolved(m) => format!("unresolved: {m}"),
            },
            stable: s.stable,
            points: s.arc.iter().step_by((s.arc.len() / 400).max(1)).map(|p| [p.x, p.y]).collect(),
        })
        .collect();
    let cycles = match cycle {
        Some(CycleSearch::Cycle(info)) => {
            vec![info.orbit.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>()]
        }
        _ => Vec::new(),
    };
    serde_json::to_value(JsonSkeleton { singularities, separatrices, cycles }).expect("serializable")
}
