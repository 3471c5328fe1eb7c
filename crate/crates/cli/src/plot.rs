//! Static log-log SVG plots, one panel per operator.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Circle,
    Cross,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub marker: Marker,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub series: Vec<Series>,
}

const PANEL_W: f64 = 480.0;
const PANEL_H: f64 = 360.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;

/// Decade-aligned bounds of positive data in log10 space.
fn log_bounds(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values
        .filter(|v| *v > 0.0 && v.is_finite())
        .map(f64::log10)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return None;
    }
    let (lo, hi) = (lo.floor(), hi.ceil());
    Some((lo, if hi > lo { hi } else { lo + 1.0 }))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn panel_svg(out: &mut String, panel: &Panel, x0: f64) {
    let all = || panel.series.iter().flat_map(|s| s.points.iter());
    let (Some((xl, xh)), Some((yl, yh))) = (log_bounds(all().map(|p| p.0)), log_bounds(all().map(|p| p.1))) else {
        return;
    };
    let (left, top) = (x0 + MARGIN_L, MARGIN_T);
    let (w, h) = (PANEL_W - MARGIN_L - MARGIN_R, PANEL_H - MARGIN_T - MARGIN_B);
    let px = |x: f64| left + (x.log10() - xl) / (xh - xl) * w;
    let py = |y: f64| top + (yh - y.log10()) / (yh - yl) * h;

    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        left + w / 2.0,
        escape(&panel.title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{left:.1}" y="{top:.1}" width="{w:.1}" height="{h:.1}" fill="none" stroke="black"/>"#
    );
    for d in xl as i32..=xh as i32 {
        let x = px(10f64.powi(d));
        let _ = writeln!(
            out,
            r##"<line x1="{x:.1}" y1="{top:.1}" x2="{x:.1}" y2="{:.1}" stroke="#ddd"/><text x="{x:.1}" y="{:.1}" text-anchor="middle" font-size="12">1e{d}</text>"##,
            top + h,
            top + h + 18.0
        );
    }
    for d in yl as i32..=yh as i32 {
        let y = py(10f64.powi(d));
        let _ = writeln!(
            out,
            r##"<line x1="{left:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end" font-size="12">1e{d}</text>"##,
            left + w,
            left - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13">n</text>"#,
        left + w / 2.0,
        PANEL_H - 10.0
    );

    for (i, s) in panel.series.iter().enumerate() {
        for &(x, y) in s.points.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0 && p.1.is_finite()) {
            let (cx, cy) = (px(x), py(y));
            match s.marker {
                Marker::Circle => {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="3" fill="none" stroke="{}"/>"#,
                        s.color
                    );
                }
                Marker::Cross => {
                    let _ = writeln!(
                        out,
                        r#"<path d="M{:.1} {:.1}L{:.1} {:.1}M{:.1} {:.1}L{:.1} {:.1}" stroke="{}"/>"#,
                        cx - 3.0,
                        cy - 3.0,
                        cx + 3.0,
                        cy + 3.0,
                        cx - 3.0,
                        cy + 3.0,
                        cx + 3.0,
                        cy - 3.0,
                        s.color
                    );
                }
            }
        }
        let ly = top + 16.0 + 18.0 * i as f64;
        let lx = left + w - 150.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" fill="{}">{}</text>"#,
            lx,
            ly,
            s.color,
            escape(&s.label)
        );
    }
}

/// A self-contained SVG document with the panels side by side.
pub fn render(panels: &[Panel]) -> String {
    let width = PANEL_W * panels.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{PANEL_H:.0}" viewBox="0 0 {width:.0} {PANEL_H:.0}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, panel) in panels.iter().enumerate() {
        panel_svg(&mut out, panel, PANEL_W * i as f64);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_points_and_legend() {
        let panel = Panel {
            title: "Singular values of T<0.5,-0.5>".into(),
            series: vec![
                Series {
                    label: "s_n".into(),
                    marker: Marker::Circle,
                    color: "black",
                    points: vec![(2.0, 0.42), (10.0, 0.045), (21.0, 0.0153)],
                },
                Series {
                    label: "approximant".into(),
                    marker: Marker::Cross,
                    color: "red",
                    points: vec![(2.0, 0.54), (10.0, 0.049), (21.0, 0.016)],
                },
            ],
        };
        let svg = render(&[panel]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<path").count(), 3);
        assert!(svg.contains("T&lt;0.5,-0.5&gt;"));
    }
}
