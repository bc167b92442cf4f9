//! Static SVG output: a faint point patch, a bold polygon, and one line per
//! direction through a chosen vertex with a small legend.

use std::fmt::Write as _;

const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// Scene in embedded coordinates (y up).
#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub points: Vec<[f64; 2]>,
    pub polygon: Vec<[f64; 2]>,
    /// `(unit vector, label)` per direction.
    pub directions: Vec<([f64; 2], String)>,
    /// Index of the polygon vertex the direction lines pass through.
    pub anchor: usize,
    pub title: Option<String>,
}

fn bounds(s: &Scene) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in s.points.iter().chain(&s.polygon) {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    if lo[0] > hi[0] {
        return ([-1.0, -1.0], [1.0, 1.0]);
    }
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    ([lo[0] - pad, lo[1] - pad], [hi[0] + pad, hi[1] + pad])
}

pub fn render_svg(scene: &Scene) -> String {
    let size = 800.0;
    let (lo, hi) = bounds(scene);
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let k = size / span;
    let map = |p: [f64; 2]| [(p[0] - lo[0]) * k, size - (p[1] - lo[1]) * k];
    let dot = (span / 300.0 * k).clamp(0.8, 4.0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if let Some(t) = &scene.title {
        let _ = writeln!(out, "<title>{}</title>", escape(t));
    }
    out.push_str("<g fill=\"#999\" fill-opacity=\"0.5\">\n");
    for p in &scene.points {
        let [x, y] = map(*p);
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{dot:.2}\"/>");
    }
    out.push_str("</g>\n");

    if let Some(&a) = scene.polygon.get(scene.anchor) {
        let reach = 2.0 * span;
        for (i, (u, _)) in scene.directions.iter().enumerate() {
            let p = map([a[0] - reach * u[0], a[1] - reach * u[1]]);
            let q = map([a[0] + reach * u[0], a[1] + reach * u[1]]);
            let _ = writeln!(
                out,
                "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"{}\" stroke-width=\"1\"/>",
                p[0],
                p[1],
                q[0],
                q[1],
                PALETTE[i % PALETTE.len()]
            );
        }
    }

    if !scene.polygon.is_empty() {
        let pts: Vec<String> = scene
            .polygon
            .iter()
            .map(|p| {
                let [x, y] = map(*p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2.5\"/>",
            pts.join(" ")
        );
        for p in &scene.polygon {
            let [x, y] = map(*p);
            let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{:.2}\"/>", dot * 1.8);
        }
    }

    for (i, (_, label)) in scene.directions.iter().enumerate() {
        let y = 20.0 + 16.0 * i as f64;
        let _ = writeln!(
            out,
            "<line x1=\"10\" y1=\"{y}\" x2=\"34\" y2=\"{y}\" stroke=\"{}\" stroke-width=\"2\"/><text x=\"40\" y=\"{:.0}\" font-size=\"12\" font-family=\"monospace\">{}</text>",
            PALETTE[i % PALETTE.len()],
            y + 4.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
