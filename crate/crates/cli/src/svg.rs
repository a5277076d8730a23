//! Minimal static SVG plot of marker paths.

use std::fmt::Write;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const MARGIN: f64 = 40.0;

const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<[f64; 2]>,
}

fn px(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Plots every series on one set of axes with equal scale on both.
pub fn plot(title: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in all {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let scale = ((WIDTH - 2.0 * MARGIN) / span).min((HEIGHT - 2.0 * MARGIN) / span);
    let map = |p: [f64; 2]| (WIDTH / 2.0 + (p[0] - cx) * scale, HEIGHT / 2.0 - (p[1] - cy) * scale);

    let mut out = String::new();
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"##,
        w = WIDTH,
        h = HEIGHT
    )
    .unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"##).unwrap();
    writeln!(
        out,
        r##"<rect x="{m}" y="{m}" width="{w}" height="{h}" fill="none" stroke="#999" stroke-width="1"/>"##,
        m = MARGIN,
        w = WIDTH - 2.0 * MARGIN,
        h = HEIGHT - 2.0 * MARGIN
    )
    .unwrap();
    writeln!(out, r##"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="14">{title}</text>"##, MARGIN - 14.0)
        .unwrap();
    // Axis lines through the origin when it is in view.
    let (ox, oy) = map([0.0, 0.0]);
    if (MARGIN..=WIDTH - MARGIN).contains(&ox) {
        writeln!(
            out,
            r##"<line x1="{x}" y1="{a}" x2="{x}" y2="{b}" stroke="#ccc" stroke-width="1"/>"##,
            x = px(ox),
            a = px(MARGIN),
            b = px(HEIGHT - MARGIN)
        )
        .unwrap();
    }
    if (MARGIN..=HEIGHT - MARGIN).contains(&oy) {
        writeln!(
            out,
            r##"<line x1="{a}" y1="{y}" x2="{b}" y2="{y}" stroke="#ccc" stroke-width="1"/>"##,
            y = px(oy),
            a = px(MARGIN),
            b = px(WIDTH - MARGIN)
        )
        .unwrap();
    }
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{},{}", px(x), px(y))
            })
            .collect();
        writeln!(out, r##"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"##, pts.join(" "))
            .unwrap();
        writeln!(
            out,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{color}">{}</text>"##,
            px(WIDTH - MARGIN - 120.0),
            px(MARGIN + 16.0 * (i as f64 + 1.0)),
            s.label
        )
        .unwrap();
        if let (Some(&first), Some(&last)) = (s.points.first(), s.points.last()) {
            for (p, name) in [(first, "initial"), (last, "final")] {
                let (x, y) = map(p);
                writeln!(out, r##"<circle cx="{}" cy="{}" r="3" fill="{color}"/>"##, px(x), px(y)).unwrap();
                writeln!(
                    out,
                    r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{name}</text>"##,
                    px(x + 5.0),
                    px(y - 5.0)
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
