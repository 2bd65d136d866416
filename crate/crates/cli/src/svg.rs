//! Deterministic SVG diagnostics rendered from a report.
//!
//! The canvas is a fixed 800 x 800 viewport; data coordinates are fitted with
//! equal aspect ratio. Elements within each layer are sorted by their markup
//! so the output depends only on the report contents.

use std::fmt::Write;

use serde_json::Value;
use thiserror::Error;

use crate::Report;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const MAX_LETTERS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SvgError {
    #[error("unsupported diagram kind `{0}` (expected radial, flow or braid)")]
    UnsupportedKind(String),
    #[error("report has nothing to draw for `{0}`")]
    EmptyPayload(&'static str),
    #[error("malformed `{0}` entry in report results")]
    Malformed(&'static str),
}

type Pt = [f64; 2];

#[derive(Default)]
struct Scene {
    /// Reference circles `(centre, radius, class)`.
    rings: Vec<(Pt, f64, &'static str)>,
    lines: Vec<(Vec<Pt>, &'static str)>,
    dots: Vec<(Pt, &'static str)>,
    labels: Vec<(Pt, String)>,
    title: String,
}

fn point(v: &Value, what: &'static str) -> Result<Pt, SvgError> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([x, y]) => Ok([x.as_f64().ok_or(SvgError::Malformed(what))?, y.as_f64().ok_or(SvgError::Malformed(what))?]),
        _ => Err(SvgError::Malformed(what)),
    }
}

fn polylines(results: &Value, key: &'static str) -> Result<Vec<Vec<Pt>>, SvgError> {
    let list = results.get(key).and_then(Value::as_array).filter(|a| !a.is_empty()).ok_or(SvgError::EmptyPayload(key))?;
    list.iter()
        .map(|c| {
            let pts = c.get("points").and_then(Value::as_array).ok_or(SvgError::Malformed(key))?;
            pts.iter().map(|p| point(p, key)).collect()
        })
        .collect()
}

fn radii_rings(results: &Value, scene: &mut Scene) {
    for key in ["r", "R"] {
        if let Some(rho) = results.pointer(&format!("/radii/{key}")).and_then(Value::as_f64) {
            scene.rings.push(([0.0, 0.0], rho, "ref"));
        }
    }
}

fn braid(results: &Value) -> Result<Scene, SvgError> {
    let s = results.get("schematic").ok_or(SvgError::EmptyPayload("schematic"))?;
    let pts = s.get("points").and_then(Value::as_array).filter(|a| !a.is_empty()).ok_or(SvgError::EmptyPayload("schematic"))?;
    let moving = point(s.get("moving").ok_or(SvgError::Malformed("schematic"))?, "schematic")?;
    let mut scene = Scene::default();
    let mut centres = Vec::new();
    for p in pts {
        let c = [
            p.get("x").and_then(Value::as_f64).ok_or(SvgError::Malformed("schematic"))?,
            p.get("y").and_then(Value::as_f64).ok_or(SvgError::Malformed("schematic"))?,
        ];
        let label = p.get("label").and_then(Value::as_str).unwrap_or("");
        scene.dots.push((c, "fixed"));
        scene.labels.push(([c[0], c[1] - 0.45], label.to_string()));
        centres.push(c);
    }
    scene.dots.push((moving, "moving"));
    scene.labels.push(([moving[0], moving[1] - 0.45], "z0".into()));
    let letters = s.get("letters").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]);
    let shown = letters.len().min(MAX_LETTERS);
    for (i, l) in letters[..shown].iter().enumerate() {
        let idx = l.get("point").and_then(Value::as_u64).ok_or(SvgError::Malformed("schematic"))? as usize;
        let c = *centres.get(idx).ok_or(SvgError::Malformed("schematic"))?;
        let rad = 0.15 + 0.25 * i as f64 / shown.max(1) as f64;
        let class = if l.get("sign").and_then(Value::as_i64) == Some(-1) { "neg" } else { "pos" };
        // Lasso: out from z0 along an arch, once around the puncture, back.
        // Arch heights fan out with the letter index so the stems separate.
        let lift = 0.4 + 1.6 * i as f64 / shown.max(1) as f64;
        let mid = [0.5 * (moving[0] + c[0]), 0.5 * (moving[1] + c[1]) + lift];
        let mut path = vec![moving, mid, [c[0] - rad, c[1]]];
        path.extend((0..=24).map(|k| {
            let a = std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / 24.0;
            [c[0] + rad * a.cos(), c[1] + rad * a.sin()]
        }));
        path.push(mid);
        path.push(moving);
        scene.lines.push((path, class));
    }
    let word = s.get("word").and_then(Value::as_str).unwrap_or("");
    scene.title = if word.is_empty() {
        "trace word: 1".into()
    } else if word.chars().count() > 64 {
        format!("trace word ({} letters): {}...", letters.len(), word.chars().take(64).collect::<String>())
    } else {
        format!("trace word: {word}")
    };
    Ok(scene)
}

/// Renders diagram `kind` (`radial`, `flow` or `braid`) from a report.
pub fn render_svg(report: &Report, kind: &str) -> Result<String, SvgError> {
    let results = &report.results;
    let scene = match kind {
        "radial" => {
            let mut s = Scene::default();
            radii_rings(results, &mut s);
            s.lines = polylines(results, "curves")?.into_iter().map(|l| (l, "curve")).collect();
            s.title = "radial curves at the first boundary sample".into();
            s
        }
        "flow" => {
            let mut s = Scene::default();
            radii_rings(results, &mut s);
            s.lines = polylines(results, "flow_lines")?.into_iter().map(|l| (l, "flow")).collect();
            s.title = "flow lines of g_t(1)".into();
            s
        }
        "braid" => braid(results)?,
        other => return Err(SvgError::UnsupportedKind(other.to_string())),
    };
    Ok(draw(&scene))
}

fn draw(scene: &Scene) -> String {
    // Bounding box over everything drawn, squared up.
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |p: Pt, pad: f64| {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d] - pad);
            hi[d] = hi[d].max(p[d] + pad);
        }
    };
    for &(c, r, _) in &scene.rings {
        grow(c, r);
    }
    for (l, _) in &scene.lines {
        l.iter().for_each(|&p| grow(p, 0.0));
    }
    for &(p, _) in &scene.dots {
        grow(p, 0.6);
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let cx = 0.5 * (lo[0] + hi[0]);
    let cy = 0.5 * (lo[1] + hi[1]);
    let map = |p: Pt| -> Pt { [SIZE / 2.0 + (p[0] - cx) * scale, SIZE / 2.0 - (p[1] - cy) * scale] };

    let sorted = |mut v: Vec<String>| {
        v.sort();
        v
    };
    let rings = sorted(
        scene
            .rings
            .iter()
            .map(|&(c, r, class)| {
                let q = map(c);
                format!(r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="{:.2}"/>"#, q[0], q[1], r * scale)
            })
            .collect(),
    );
    let lines = sorted(
        scene
            .lines
            .iter()
            .map(|(l, class)| {
                let mut pts = String::new();
                for (i, &p) in l.iter().enumerate() {
                    let q = map(p);
                    if i > 0 {
                        pts.push(' ');
                    }
                    let _ = write!(pts, "{:.2},{:.2}", q[0], q[1]);
                }
                format!(r#"<polyline class="{class}" points="{pts}"/>"#)
            })
            .collect(),
    );
    let dots = sorted(
        scene
            .dots
            .iter()
            .map(|&(p, class)| {
                let q = map(p);
                format!(r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="5"/>"#, q[0], q[1])
            })
            .collect(),
    );
    let labels = sorted(
        scene
            .labels
            .iter()
            .map(|(p, text)| {
                let q = map(*p);
                format!(r#"<text x="{:.2}" y="{:.2}">{}</text>"#, q[0], q[1] + 12.0, escape(text))
            })
            .collect(),
    );

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str(concat!(
        "<style>",
        "polyline,circle{fill:none;stroke-width:1}",
        ".ref{stroke:#999;stroke-dasharray:4 3}",
        ".curve{stroke:#1f5fa8}",
        ".flow{stroke:#b3501b}",
        ".pos{stroke:#1f5fa8}",
        ".neg{stroke:#b3261b}",
        ".fixed{fill:#222;stroke:#222}",
        ".moving{fill:#b3261b;stroke:#b3261b}",
        "text{font:12px sans-serif;text-anchor:middle}",
        "</style>\n"
    ));
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="24">{}</text>"#, SIZE / 2.0, escape(&scene.title));
    for layer in [rings, lines, dots, labels] {
        for e in layer {
            out.push_str(&e);
            out.push('\n');
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
