//! SVG drawing: floors red, elevators blue. Tall gaps between floors are
//! drawn compressed and labeled with their true height.

use std::fmt::Write;

use tropical_floors::curve::{DualSubdivision, PieceId};
use tropical_floors::floors::floor_decompose;
use tropical_floors::{Curve, Rational, Scalar, Slope};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const FLOOR_COLOR: &str = "#d62728";
const ELEVATOR_COLOR: &str = "#1f77b4";

/// Piecewise-linear vertical map squeezing each gap between floors to `gap`.
struct Squeeze {
    /// `(from, to, image of from, image of to)`, increasing.
    pieces: Vec<(f64, f64, f64, f64)>,
    labels: Vec<(f64, String)>,
}

impl Squeeze {
    fn new(bands: &[(Rational, Rational)], gap: f64) -> Squeeze {
        let mut pieces = Vec::new();
        let mut labels = Vec::new();
        let mut at = 0.0;
        for (i, (lo, hi)) in bands.iter().enumerate() {
            if i > 0 {
                let prev = &bands[i - 1].1;
                let real = lo.clone() - prev.clone();
                let (a, b) = (prev.approx(), lo.approx());
                let len = if b - a > 2.0 * gap { gap } else { b - a };
                if b - a > 2.0 * gap {
                    labels.push((at + len / 2.0, format!("gap {}", real.to_fraction().trim_end_matches("/1"))));
                }
                pieces.push((a, b, at, at + len));
                at += len;
            }
            let (a, b) = (lo.approx(), hi.approx());
            pieces.push((a, b, at, at + (b - a)));
            at += b - a;
        }
        Squeeze { pieces, labels }
    }

    fn map(&self, y: f64) -> f64 {
        let Some(first) = self.pieces.first() else { return y };
        if y <= first.0 {
            return first.2 - (first.0 - y);
        }
        for &(a, b, fa, fb) in &self.pieces {
            if y <= b {
                return if b > a { fa + (y - a) / (b - a) * (fb - fa) } else { fa };
            }
        }
        let last = self.pieces.last().expect("nonempty");
        last.3 + (y - last.1)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" { "0.00".into() } else { s }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
    let _ = writeln!(
        out,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"/>"#,
        num(a.0),
        num(a.1),
        num(b.0),
        num(b.1),
        num(width)
    );
}

pub fn render_svg(c: &Curve, dual: Option<&DualSubdivision>) -> String {
    let n = c.vertex_count();
    let xs: Vec<f64> = (0..n).map(|v| c.position(v).x.approx()).collect();
    let ys: Vec<f64> = (0..n).map(|v| c.position(v).y.approx()).collect();

    // classify pieces; without a floor decomposition everything is drawn as floor
    let fd = floor_decompose(c).ok();
    let mut elevator_edges = vec![false; c.edge_count()];
    let mut elevator_legs = vec![false; c.leg_count()];
    let mut bands = Vec::new();
    if let Some(fd) = &fd {
        for e in &fd.elevators {
            match e.piece {
                PieceId::Edge(i) => elevator_edges[i] = true,
                PieceId::Leg(i) => elevator_legs[i] = true,
            }
        }
        for f in &fd.floors {
            let fy = f.vertices.iter().map(|&v| c.position(v).y.clone());
            let lo = fy.clone().min().expect("floor vertex");
            let hi = fy.max().expect("floor vertex");
            bands.push((lo, hi));
        }
        bands.sort();
    }
    let (xmin, xmax) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
    let width = (xmax - xmin).max(1.0);
    let squeeze = Squeeze::new(&bands, width);
    let my: Vec<f64> = ys.iter().map(|&y| squeeze.map(y)).collect();
    let (ymin, ymax) = my.iter().fold((f64::MAX, f64::MIN), |(a, b), &y| (a.min(y), b.max(y)));
    let leg = 0.35 * width.max(ymax - ymin).max(1.0);
    let (x0, x1, y0, y1) = (xmin - leg, xmax + leg, ymin - leg, ymax + leg);
    let scale = SIZE / (x1 - x0).max(y1 - y0);
    let to = |x: f64, y: f64| (MARGIN + (x - x0) * scale, MARGIN + (y1 - y) * scale);
    let panel = (x1 - x0) * scale + 2.0 * MARGIN;
    let total_w = if dual.is_some() { panel + SIZE * 0.6 + MARGIN } else { panel };
    let total_h = (y1 - y0) * scale + 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(total_w),
        num(total_h),
        num(total_w),
        num(total_h)
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for e in 0..c.edge_count() {
        let ge = c.edge(e);
        let color = if elevator_edges[e] { ELEVATOR_COLOR } else { FLOOR_COLOR };
        line(&mut out, to(xs[ge.tail], my[ge.tail]), to(xs[ge.head], my[ge.head]), color, 2.0);
    }
    for l in 0..c.leg_count() {
        let v = c.leg_anchor(l);
        let s: Slope = c.leg_slope(l);
        let norm = ((s.x * s.x + s.y * s.y) as f64).sqrt();
        let end = (xs[v] + leg * s.x as f64 / norm, my[v] + leg * s.y as f64 / norm);
        let color = if elevator_legs[l] { ELEVATOR_COLOR } else { FLOOR_COLOR };
        line(&mut out, to(xs[v], my[v]), to(end.0, end.1), color, 2.0);
    }
    for v in 0..n {
        let (px, py) = to(xs[v], my[v]);
        let _ = writeln!(out, r#"  <circle cx="{}" cy="{}" r="2.5" fill="black"/>"#, num(px), num(py));
    }
    for (y, text) in &squeeze.labels {
        let (px, py) = to(x1, *y);
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="11" font-family="sans-serif" text-anchor="end" fill="gray">{text}</text>"#,
            num(px - 4.0),
            num(py)
        );
    }
    if let Some(d) = dual {
        draw_dual(&mut out, d, panel, total_h);
    }
    out.push_str("</svg>\n");
    out
}

fn draw_dual(out: &mut String, d: &DualSubdivision, left: f64, height: f64) {
    let pts = d.cells.iter().flat_map(|c| c.vertices().iter().copied());
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for p in pts {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    if xmin > xmax {
        return;
    }
    let side = SIZE * 0.6;
    let scale = side / ((xmax - xmin).max(ymax - ymin).max(1) as f64);
    let top = (height - (ymax - ymin) as f64 * scale) / 2.0;
    let to = |x: i64, y: i64| (left + (x - xmin) as f64 * scale, top + (ymax - y) as f64 * scale);
    for (i, cell) in d.cells.iter().enumerate() {
        let fill = if d.crossing_cells.contains(&i) { "#eeeeee" } else { "none" };
        let points: Vec<String> = cell
            .vertices()
            .iter()
            .map(|p| {
                let (x, y) = to(p.x, p.y);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"  <polygon points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
            points.join(" ")
        );
    }
}
