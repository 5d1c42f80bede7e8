//! Growth-curve plot: edges added against edge weight for two trees.

use std::fmt::Write as _;

use combinf_core::graph::joint_growth_curve;
use combinf_core::{MstComparison, SortedEdgeWeights};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

/// Renders both step functions (first solid, second dashed) with a vertical
/// marker at the weight of maximum gap. Output is a pure function of the input.
pub fn growth_curve_svg(
    a: &SortedEdgeWeights,
    b: &SortedEdgeWeights,
    cmp: &MstComparison,
    names: (&str, &str),
) -> String {
    let points = joint_growth_curve(a, b);
    let (lo, hi) = match (points.first(), points.last()) {
        (Some(f), Some(l)) => (f.0, l.0),
        _ => (0.0, 1.0),
    };
    let span = if hi > lo { hi - lo } else { 1.0 };
    let pad = span * 0.05;
    let (x0, x1) = (lo - pad, hi + pad);
    let ymax = a.len().max(b.len()).max(1) as f64;
    let sx = |w: f64| MARGIN + (w - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |c: f64| HEIGHT - MARGIN - c / ymax * (HEIGHT - 2.0 * MARGIN);

    let path = |pick: fn(&(f64, usize, usize)) -> usize| {
        let mut d = format!("M {:.2} {:.2}", sx(x0), sy(0.0));
        let mut prev = 0usize;
        for pt in &points {
            let c = pick(pt);
            if c != prev {
                let _ = write!(d, " H {:.2} V {:.2}", sx(pt.0), sy(c as f64));
                prev = c;
            }
        }
        let _ = write!(d, " H {:.2}", sx(x1));
        d
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M {m} {t} V {b} H {r}" fill="none" stroke="black"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for (k, w) in [x0, (x0 + x1) / 2.0, x1].into_iter().enumerate() {
        let anchor = ["start", "middle", "end"][k];
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{:.3}</text>"#,
            sx(w),
            HEIGHT - MARGIN + 16.0,
            w
        );
    }
    for c in [0.0, ymax] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN - 6.0,
            sy(c) + 4.0,
            c
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">edge weight</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">edges added</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let mx = sx(cmp.argmax_weight);
    let _ = writeln!(
        s,
        r##"<line x1="{mx:.2}" y1="{:.2}" x2="{mx:.2}" y2="{:.2}" stroke="#888888" stroke-dasharray="2 3"/>"##,
        MARGIN,
        HEIGHT - MARGIN
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}">D = {} at {}</text>"#,
        mx + 4.0,
        MARGIN + 12.0,
        cmp.d,
        cmp.argmax_weight
    );
    let _ = writeln!(
        s,
        r##"<path d="{}" fill="none" stroke="#cc0000" stroke-width="1.5"/>"##,
        path(|p| p.1)
    );
    let _ = writeln!(
        s,
        r##"<path d="{}" fill="none" stroke="#000000" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        path(|p| p.2)
    );
    let _ = writeln!(
        s,
        r##"<text x="{:.2}" y="{:.2}" fill="#cc0000">{} (solid)</text>"##,
        MARGIN + 8.0,
        MARGIN - 20.0,
        escape(names.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}">{} (dashed)</text>"#,
        MARGIN + 8.0,
        MARGIN - 6.0,
        escape(names.1)
    );
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
