//! Minimal SVG emission: line/scatter panels and heatmap grids laid out in a row.
//!
//! Output depends only on the data, so identical inputs give identical bytes.

use std::fmt::Write;

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 320.0;
const MARGIN_L: f64 = 62.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 44.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Line,
    Scatter,
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub style: Style,
}

impl Curve {
    pub fn line(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Curve { name: name.into(), points, style: Style::Line }
    }

    pub fn scatter(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Curve { name: name.into(), points, style: Style::Scatter }
    }
}

#[derive(Clone, Debug)]
pub struct LinePanel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Plot log10 of y; nonpositive values are dropped.
    pub log_y: bool,
    pub curves: Vec<Curve>,
}

#[derive(Clone, Debug)]
pub struct HeatPanel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// (column, row, value) with value in [0, 1].
    pub cells: Vec<(i64, i64, f64)>,
}

#[derive(Clone, Debug)]
pub enum Panel {
    Lines(LinePanel),
    Heat(HeatPanel),
}

pub fn render(panels: &[Panel]) -> String {
    let width = PANEL_W * panels.len().max(1) as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" viewBox="0 0 {width} {PANEL_H}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(out, "<!-- generator: growth -->").unwrap();
    writeln!(out, r#"<rect width="{width}" height="{PANEL_H}" fill="white"/>"#).unwrap();
    for (i, p) in panels.iter().enumerate() {
        let x0 = PANEL_W * i as f64;
        match p {
            Panel::Lines(lp) => line_panel(&mut out, x0, lp),
            Panel::Heat(hp) => heat_panel(&mut out, x0, hp),
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Axis range with a little padding; degenerate ranges are widened.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * lo.abs().max(1.0) {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

fn frame(out: &mut String, x0: f64, title: &str, x_label: &str, y_label: &str) {
    let (l, t) = (x0 + MARGIN_L, MARGIN_T);
    let (w, h) = (PANEL_W - MARGIN_L - MARGIN_R, PANEL_H - MARGIN_T - MARGIN_B);
    writeln!(out, r#"<rect x="{l}" y="{t}" width="{w}" height="{h}" fill="none" stroke="black"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="18" text-anchor="middle" font-size="13">{}</text>"#,
        l + w / 2.0,
        escape(title)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        l + w / 2.0,
        PANEL_H - 8.0,
        escape(x_label)
    )
    .unwrap();
    let yc = t + h / 2.0;
    writeln!(
        out,
        r#"<text x="{}" y="{yc}" text-anchor="middle" transform="rotate(-90 {} {yc})">{}</text>"#,
        x0 + 14.0,
        x0 + 14.0,
        escape(y_label)
    )
    .unwrap();
}

fn ticks(out: &mut String, x0: f64, xr: (f64, f64), yr: (f64, f64), log_y: bool) {
    let (l, t) = (x0 + MARGIN_L, MARGIN_T);
    let (w, h) = (PANEL_W - MARGIN_L - MARGIN_R, PANEL_H - MARGIN_T - MARGIN_B);
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let xv = xr.0 + f * (xr.1 - xr.0);
        let yv = yr.0 + f * (yr.1 - yr.0);
        let px = l + f * w;
        let py = t + h - f * h;
        writeln!(out, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, t + h + 14.0, label(xv)).unwrap();
        let ytext = if log_y { format!("1e{yv:.1}") } else { label(yv) };
        writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{ytext}</text>"#, l - 4.0, py + 4.0).unwrap();
    }
}

fn label(v: f64) -> String {
    if v == 0.0 || (1e-3..1e5).contains(&v.abs()) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn line_panel(out: &mut String, x0: f64, p: &LinePanel) {
    frame(out, x0, &p.title, &p.x_label, &p.y_label);
    let curves: Vec<(&Curve, Vec<(f64, f64)>)> = p
        .curves
        .iter()
        .map(|c| {
            let pts = c
                .points
                .iter()
                .filter_map(|&(x, y)| {
                    let y = if p.log_y { (y > 0.0).then(|| y.log10())? } else { y };
                    (x.is_finite() && y.is_finite()).then_some((x, y))
                })
                .collect();
            (c, pts)
        })
        .collect();
    let xr = range(curves.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.0)));
    let yr = range(curves.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1)));
    ticks(out, x0, xr, yr, p.log_y);
    let (l, t) = (x0 + MARGIN_L, MARGIN_T);
    let (w, h) = (PANEL_W - MARGIN_L - MARGIN_R, PANEL_H - MARGIN_T - MARGIN_B);
    let px = |x: f64| l + (x - xr.0) / (xr.1 - xr.0) * w;
    let py = |y: f64| t + h - (y - yr.0) / (yr.1 - yr.0) * h;
    for (i, (c, pts)) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        match c.style {
            Style::Line => {
                let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
                writeln!(
                    out,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.4" points="{}"/>"#,
                    path.join(" ")
                )
                .unwrap();
            }
            Style::Scatter => {
                for &(x, y) in pts {
                    writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#, px(x), py(y)).unwrap();
                }
            }
        }
        let ly = t + 14.0 + 14.0 * i as f64;
        writeln!(out, r#"<rect x="{:.2}" y="{:.2}" width="10" height="3" fill="{color}"/>"#, l + 8.0, ly - 4.0).unwrap();
        writeln!(out, r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#, l + 22.0, escape(&c.name)).unwrap();
    }
}

fn heat_panel(out: &mut String, x0: f64, p: &HeatPanel) {
    frame(out, x0, &p.title, &p.x_label, &p.y_label);
    let (cols, rows) = match (p.cells.iter().map(|c| c.0).max(), p.cells.iter().map(|c| c.1).max()) {
        (Some(c), Some(r)) => (c + 1, r + 1),
        _ => (1, 1),
    };
    let (l, t) = (x0 + MARGIN_L, MARGIN_T);
    let (w, h) = (PANEL_W - MARGIN_L - MARGIN_R, PANEL_H - MARGIN_T - MARGIN_B);
    let (cw, ch) = (w / cols as f64, h / rows as f64);
    ticks(out, x0, (0.0, cols as f64), (0.0, rows as f64), false);
    for &(c, r, v) in &p.cells {
        let shade = (255.0 * (1.0 - v.clamp(0.0, 1.0))).round() as u8;
        writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#{:02x}{:02x}ff"/>"##,
            l + c as f64 * cw,
            t + h - (r + 1) as f64 * ch,
            cw,
            ch,
            shade,
            shade
        )
        .unwrap();
    }
}
