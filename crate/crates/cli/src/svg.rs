//! Minimal SVG 1.1 line charts: one polyline per series, side-by-side panels.

use std::fmt::Write;

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
    pub dashed: bool,
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    /// Both axes logarithmic; non-positive points are dropped.
    pub log: bool,
    pub series: Vec<Series>,
}

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 320.0;
const MARGIN: f64 = 50.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Panel {
    fn mapped(&self) -> Vec<Vec<(f64, f64)>> {
        self.series
            .iter()
            .map(|s| {
                s.points
                    .iter()
                    .filter(|(x, y)| x.is_finite() && y.is_finite())
                    .filter(|(x, y)| !self.log || (*x > 0.0 && *y > 0.0))
                    .map(|&(x, y)| if self.log { (x.log10(), y.log10()) } else { (x, y) })
                    .collect()
            })
            .collect()
    }

    fn render(&self, out: &mut String, x0: f64) {
        let data = self.mapped();
        let all = data.iter().flatten();
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in all {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        if !(xmin < xmax) {
            (xmin, xmax) = (0.0, 1.0);
        }
        if !(ymin < ymax) {
            (ymin, ymax) = (ymin.min(0.0) - 1.0, ymax.max(0.0) + 1.0);
        }
        let (left, top) = (x0 + MARGIN, MARGIN);
        let (w, h) = (PANEL_W - 1.5 * MARGIN, PANEL_H - 2.0 * MARGIN);
        let px = |x: f64| left + (x - xmin) / (xmax - xmin) * w;
        let py = |y: f64| top + (ymax - y) / (ymax - ymin) * h;

        let _ = writeln!(
            out,
            r#"<rect x="{left:.2}" y="{top:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
            left + w / 2.0,
            top - 15.0,
            escape(&self.title)
        );
        let axis = if self.log { "log10 " } else { "" };
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">{axis}{}</text>"#,
            left + w / 2.0,
            top + h + 35.0,
            escape(&self.x_label)
        );
        for (v, anchor, x, y) in [
            (xmin, "start", left, top + h + 15.0),
            (xmax, "end", left + w, top + h + 15.0),
            (ymin, "end", left - 5.0, top + h),
            (ymax, "end", left - 5.0, top + 10.0),
        ] {
            let _ = writeln!(
                out,
                r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}" font-size="10">{v:.3}</text>"#
            );
        }
        if !self.log && ymin < 0.0 && ymax > 0.0 {
            let _ = writeln!(
                out,
                r#"<line x1="{left:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="gray" stroke-width="0.5"/>"#,
                left + w,
                y = py(0.0)
            );
        }
        for (k, (series, pts)) in self.series.iter().zip(&data).enumerate() {
            if pts.is_empty() {
                continue;
            }
            let coords: Vec<String> =
                pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
            let dash = if series.dashed { r#" stroke-dasharray="5,3""# } else { "" };
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                series.color,
                coords.join(" ")
            );
            let ly = top + 15.0 + 15.0 * k as f64;
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}"{dash}/><text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#,
                left + w - 110.0,
                left + w - 90.0,
                series.color,
                left + w - 85.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
    }
}

pub fn render(panels: &[Panel]) -> String {
    let width = PANEL_W * panels.len() as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{PANEL_H:.0}" viewBox="0 0 {width:.0} {PANEL_H:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, panel) in panels.iter().enumerate() {
        panel.render(&mut out, PANEL_W * i as f64);
    }
    out.push_str("</svg>\n");
    out
}
