//! Plane curves as SVG. The view box is the bounding box of vertices and line
//! points plus 10% on each side; rays and lines are cut at its border.

use num_traits::ToPrimitive;
use std::fmt::Write;
use tropical::curve::{Piece, TropCurve};
use tropical::Rat;

fn f(r: &Rat) -> f64 {
    r.to_f64().expect("finite rational")
}

/// Four decimals, and never "-0".
fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0".into()
    } else {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

struct View {
    lo: [f64; 2],
    hi: [f64; 2],
}

impl View {
    fn new(c: &TropCurve) -> Option<View> {
        let (lo, hi) = c.bounding_box()?;
        let mut lo = [f(&lo[0]), f(&lo[1])];
        let mut hi = [f(&hi[0]), f(&hi[1])];
        let span = (hi[0] - lo[0])
            .max(hi[1] - lo[1])
            .max(if c.vertices.len() > 1 { 0.0 } else { 2.0 });
        for i in 0..2 {
            if hi[i] - lo[i] < span / 2.0 {
                let pad = (span / 2.0 - (hi[i] - lo[i])) / 2.0;
                lo[i] -= pad;
                hi[i] += pad;
            }
            let m = 0.1 * (hi[i] - lo[i]);
            lo[i] -= m;
            hi[i] += m;
        }
        Some(View { lo, hi })
    }

    /// Largest t >= 0 keeping p + t d inside the box.
    fn exit(&self, p: [f64; 2], d: [f64; 2]) -> f64 {
        let mut t = f64::INFINITY;
        for i in 0..2 {
            if d[i] > 0.0 {
                t = t.min((self.hi[i] - p[i]) / d[i]);
            } else if d[i] < 0.0 {
                t = t.min((self.lo[i] - p[i]) / d[i]);
            }
        }
        t.max(0.0)
    }
}

pub fn render(c: &TropCurve, size: u32) -> Result<String, String> {
    if c.dim != 2 {
        return Err(format!(
            "can only draw plane curves, got dimension {}",
            c.dim
        ));
    }
    let c = c.canonical();
    let view = View::new(&c).ok_or("nothing to draw: the curve is empty")?;
    let (w, h) = (view.hi[0] - view.lo[0], view.hi[1] - view.lo[1]);
    let unit = w.max(h);
    let pt = |p: &[Rat]| [f(&p[0]), f(&p[1])];
    let dir = |d: &[i64]| [d[0] as f64, d[1] as f64];

    let mut segs: Vec<([f64; 2], [f64; 2], u64)> = Vec::new();
    for (piece, wt) in c.pieces() {
        match piece {
            Piece::Seg(a, b) => segs.push((pt(&a), pt(&b), wt)),
            Piece::Ray(a, d) => {
                let (p, d) = (pt(&a), dir(&d));
                let t = view.exit(p, d);
                segs.push((p, [p[0] + t * d[0], p[1] + t * d[1]], wt));
            }
            Piece::Line(a, d) => {
                let (p, d) = (pt(&a), dir(&d));
                let (t1, t0) = (view.exit(p, d), view.exit(p, [-d[0], -d[1]]));
                segs.push((
                    [p[0] - t0 * d[0], p[1] - t0 * d[1]],
                    [p[0] + t1 * d[0], p[1] + t1 * d[1]],
                    wt,
                ));
            }
            Piece::Point(_) => {}
        }
    }

    // y grows upwards in the plane, downwards in SVG
    let x = |v: f64| num(v);
    let y = |v: f64| num(-v);
    let mut s = String::new();
    let height = (size as f64 * h / w).round() as u32;
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" viewBox="{} {} {} {}">"#,
        x(view.lo[0]),
        y(view.hi[1]),
        num(w),
        num(h)
    )
    .unwrap();
    writeln!(
        s,
        r#"<g stroke="black" stroke-width="{}" stroke-linecap="round">"#,
        num(unit / 200.0)
    )
    .unwrap();
    for (a, b, _) in &segs {
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            x(a[0]),
            y(a[1]),
            x(b[0]),
            y(b[1])
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g fill="black">"#).unwrap();
    for v in &c.vertices {
        let p = pt(v);
        writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}"/>"#,
            x(p[0]),
            y(p[1]),
            num(unit / 80.0)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    let heavy: Vec<_> = segs.iter().filter(|(_, _, wt)| *wt > 1).collect();
    if !heavy.is_empty() {
        writeln!(
            s,
            r#"<g fill="firebrick" font-family="sans-serif" font-size="{}">"#,
            num(unit / 25.0)
        )
        .unwrap();
        for (a, b, wt) in heavy {
            let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
            writeln!(
                s,
                r#"<text x="{}" y="{}">{wt}</text>"#,
                x(m[0] + unit / 100.0),
                y(m[1] + unit / 100.0)
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
