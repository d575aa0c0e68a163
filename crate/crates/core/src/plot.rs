//! Static SVG view of a branch in the `(x, y)` plane with its surgery points.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::curve::{branch_point, BranchId};
use crate::identities::SurgeryPointId;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;
const SAMPLES: usize = 400;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Self {
        if points.is_empty() {
            return Self {
                x: (0.0, 1.0),
                y: (0.0, 1.0),
            };
        }
        let span = |it: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| {
                (l.min(v), h.max(v))
            });
            let pad = ((hi - lo) * 0.05).max(1e-3);
            (lo - pad, hi + pad)
        };
        Self {
            x: span(&mut points.iter().map(|p| p.0)),
            y: span(&mut points.iter().map(|p| p.1)),
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let u = MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN);
        let v = HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN);
        (u, v)
    }
}

/// SVG document for `branch` over `s0 <= s <= s1`. An empty range gives
/// the axes alone.
pub fn render_svg(branch: BranchId, s0: f64, s1: f64) -> String {
    let curve: Vec<(f64, f64)> = if s1 > s0 {
        (0..=SAMPLES)
            .map(|k| s0 + (s1 - s0) * k as f64 / SAMPLES as f64)
            .filter_map(|s| branch_point(branch, s).ok())
            .map(|p| (p.point.x, p.point.y))
            .collect()
    } else {
        Vec::new()
    };
    let marks: Vec<(SurgeryPointId, (f64, f64))> = if s1 > s0 {
        SurgeryPointId::ALL
            .into_iter()
            .filter(|id| id.branch() == branch)
            .filter_map(|id| id.solve().ok().map(|sol| (id, sol)))
            .filter(|(_, sol)| (s0..=s1).contains(&sol.s))
            .map(|(id, sol)| (id, (sol.point.x, sol.point.y)))
            .collect()
    } else {
        Vec::new()
    };
    let frame = Frame::fit(&curve);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<title>branch {branch}, s in [{s0}, {s1}]</title>"#);

    let (left, bottom) = (MARGIN, HEIGHT - MARGIN);
    let (right, top) = (WIDTH - MARGIN, MARGIN);
    let _ = writeln!(
        svg,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/><line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}"/></g>"#
    );
    let _ = writeln!(
        svg,
        r#"<g class="ticks" font-family="sans-serif" font-size="11"><text x="{left}" y="{}" text-anchor="start">{:.4}</text><text x="{right}" y="{}" text-anchor="end">{:.4}</text><text x="{}" y="{bottom}" text-anchor="end">{:.4}</text><text x="{}" y="{}" text-anchor="end">{:.4}</text><text x="{}" y="{}" text-anchor="middle">x</text><text x="{}" y="{}" text-anchor="middle">y</text></g>"#,
        bottom + 16.0,
        frame.x.0,
        bottom + 16.0,
        frame.x.1,
        left - 4.0,
        frame.y.0,
        left - 4.0,
        top + 4.0,
        frame.y.1,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        16.0,
        HEIGHT / 2.0
    );

    if !curve.is_empty() {
        let pts: Vec<String> = curve
            .iter()
            .map(|&p| {
                let (u, v) = frame.map(p);
                format!("{u:.2},{v:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="branch" fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
    }
    for (id, p) in &marks {
        let (u, v) = frame.map(*p);
        let _ = writeln!(
            svg,
            r#"<g class="surgery-point"><circle cx="{u:.2}" cy="{v:.2}" r="4" fill="crimson"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{id}</text></g>"#,
            u + 6.0,
            v - 6.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_plot(branch: BranchId, s0: f64, s1: f64, output: &Path) -> io::Result<()> {
    std::fs::write(output, render_svg(branch, s0, s1))
}
