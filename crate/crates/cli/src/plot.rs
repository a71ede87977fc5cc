//! Minimal static SVG for rate sweeps: two log-log polylines with slope labels.

use std::fmt::Write;

use korovkin_core::bounds::SlopeFit;

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 60.0;

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub values: &'a [f64],
    pub fit: Option<&'a SlopeFit>,
}

fn slope_text(fit: Option<&SlopeFit>) -> String {
    match fit {
        Some(f) => format!("slope {:.3}", f.slope),
        None => "slope undefined".into(),
    }
}

/// Renders `series` against `ln(n + 1)`; nonpositive values are skipped.
pub fn rate_svg(title: &str, n_values: &[usize], series: &[Series<'_>]) -> String {
    let xs: Vec<f64> = n_values.iter().map(|&n| ((n + 1) as f64).log10()).collect();
    let ys: Vec<f64> = series.iter().flat_map(|s| s.values.iter().copied()).filter(|v| *v > 0.0).map(f64::log10).collect();
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#, W / 2.0, escape(title));
    let (l, r, t, b) = (MARGIN, W - MARGIN, MARGIN, H - MARGIN);
    let _ = writeln!(s, r#"<polyline points="{l},{t} {l},{b} {r},{b}" fill="none" stroke="black"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">log10(n+1)</text>"#, W / 2.0, H - 18.0);
    let _ = writeln!(s, r#"<text x="16" y="{}" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {})" text-anchor="middle">log10(value)</text>"#, H / 2.0, H / 2.0);
    for (v, anchor_x, anchor_y, is_x) in [(x0, px(x0), b + 16.0, true), (x1, px(x1), b + 16.0, true), (y0, l - 6.0, py(y0), false), (y1, l - 6.0, py(y1), false)] {
        let anchor = if is_x { "middle" } else { "end" };
        let _ = writeln!(s, r#"<text x="{anchor_x:.2}" y="{anchor_y:.2}" font-family="sans-serif" font-size="10" text-anchor="{anchor}">{v:.2}</text>"#);
    }
    for (k, ser) in series.iter().enumerate() {
        let pts: Vec<String> = xs
            .iter()
            .zip(ser.values)
            .filter(|(_, v)| **v > 0.0)
            .map(|(x, v)| format!("{:.2},{:.2}", px(*x), py(v.log10())))
            .collect();
        if !pts.is_empty() {
            let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#, pts.join(" "), ser.color);
        }
        let ly = MARGIN + 16.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" font-family="sans-serif" font-size="12" fill="{}" text-anchor="end">{}: {}</text>"#,
            W - MARGIN,
            ser.color,
            escape(ser.label),
            slope_text(ser.fit)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
