//! Dependency-free image output: binary PGM heatmaps and SVG line plots.

use std::fmt::Write as _;

use crate::analysis::ScreenHistogram;
use crate::qsolve::RealField;

/// 8-bit binary PGM (P5) of `frame`, scaled so the maximum is white. Rows
/// run along `x`, columns along `y`. An all-zero frame is black.
pub fn pgm(frame: &RealField) -> Vec<u8> {
    let g = frame.grid();
    let max = frame.max();
    let mut out = format!("P5\n{} {}\n255\n", g.n_y(), g.n_x()).into_bytes();
    out.extend(frame.values().iter().map(|&v| {
        if max > 0.0 && v.is_finite() {
            (v / max * 255.0).round().clamp(0.0, 255.0) as u8
        } else {
            0
        }
    }));
    out
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

fn polyline(points: &[(f64, f64)], color: &str, width: f64) -> String {
    let mut s = format!(r#"<polyline fill="none" stroke="{color}" stroke-width="{width}" points=""#);
    for (i, (x, y)) in points.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{x:.2},{y:.2}").unwrap();
    }
    s.push_str("\"/>\n");
    s
}

/// Step plot of the histogram counts with `envelope` (one value per bin)
/// overlaid as a smooth curve.
pub fn histogram_svg(h: &ScreenHistogram, envelope: &[f64], title: &str) -> String {
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let title = title.replace('&', "&amp;").replace('<', "&lt;");
    writeln!(s, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{title}</text>"#).unwrap();
    if !h.is_empty() {
        let (lo, hi) = (h.left_edge(0), h.right_edge(h.len() - 1));
        let ymax = h.counts.iter().map(|&c| c as f64).chain(envelope.iter().copied()).fold(1.0, f64::max);
        let px = |x: f64| MARGIN + (x - lo) / (hi - lo) * (WIDTH - 2.0 * MARGIN);
        let py = |y: f64| HEIGHT - MARGIN - y / ymax * (HEIGHT - 2.0 * MARGIN);
        let mut steps = Vec::with_capacity(2 * h.len());
        for (k, &c) in h.counts.iter().enumerate() {
            steps.push((px(h.left_edge(k)), py(c as f64)));
            steps.push((px(h.right_edge(k)), py(c as f64)));
        }
        s.push_str(&polyline(&steps, "#4a4a4a", 1.0));
        let env: Vec<(f64, f64)> = envelope.iter().enumerate().map(|(k, &v)| (px(h.center(k)), py(v))).collect();
        s.push_str(&polyline(&env, "#d62728", 2.0));
        writeln!(
            s,
            r#"<line x1="{MARGIN}" y1="{y}" x2="{x2}" y2="{y}" stroke="black"/>"#,
            y = HEIGHT - MARGIN,
            x2 = WIDTH - MARGIN
        )
        .unwrap();
        for (x, label) in [(MARGIN, lo), (WIDTH - MARGIN, hi)] {
            writeln!(
                s,
                r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{label}</text>"#,
                HEIGHT - MARGIN + 16.0
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
