//! Plain SVG pictures of the t-plane cycles and of affine atlases.

use crate::affine_structures::{AffineAtlas, AffinePath, Point};
use crate::novikov::Skeleton;
use crate::periods::CyclePath;
use std::fmt::Write;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Viewport mapping a world box to a square canvas, y pointing up.
struct Canvas {
    lo: Point,
    hi: Point,
    size: f64,
    body: String,
}

impl Canvas {
    fn new(points: impl Iterator<Item = Point>, pad: f64, size: f64) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        if !lo[0].is_finite() {
            lo = [-1.0, -1.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9) * (1.0 + 2.0 * pad);
        let mid = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        Canvas {
            lo: [mid[0] - span / 2.0, mid[1] - span / 2.0],
            hi: [mid[0] + span / 2.0, mid[1] + span / 2.0],
            size,
            body: String::new(),
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let sx = (p[0] - self.lo[0]) / (self.hi[0] - self.lo[0]) * self.size;
        let sy = (self.hi[1] - p[1]) / (self.hi[1] - self.lo[1]) * self.size;
        (sx, sy)
    }

    /// Clip a ray to the canvas box by walking out to its far corner distance.
    fn ray_end(&self, base: Point, dir: Point) -> Point {
        let reach = (self.hi[0] - self.lo[0]).hypot(self.hi[1] - self.lo[1]);
        let n = dir[0].hypot(dir[1]);
        [base[0] + dir[0] / n * reach, base[1] + dir[1] / n * reach]
    }

    fn polyline(&mut self, pts: &[Point], color: &str, width: f64, dash: bool) {
        if pts.len() < 2 {
            return;
        }
        let d: Vec<String> = pts.iter().map(|p| {
            let (x, y) = self.map(*p);
            format!("{:.3},{:.3}", x, y)
        }).collect();
        let dash = if dash { " stroke-dasharray=\"6,4\"" } else { "" };
        let _ = writeln!(self.body, "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}/>", d.join(" "), color, width, dash);
    }

    fn polygon(&mut self, pts: &[Point], fill: &str) {
        let d: Vec<String> = pts.iter().map(|p| {
            let (x, y) = self.map(*p);
            format!("{:.3},{:.3}", x, y)
        }).collect();
        let _ = writeln!(self.body, "<polygon points=\"{}\" fill=\"{}\" stroke=\"none\"/>", d.join(" "), fill);
    }

    fn dot(&mut self, p: Point, r: f64, color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{}\" fill=\"{}\"/>", x, y, r, color);
    }

    fn cross(&mut self, p: Point, r: f64, color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            "<path d=\"M{:.3},{:.3}L{:.3},{:.3}M{:.3},{:.3}L{:.3},{:.3}\" stroke=\"{}\" stroke-width=\"2\"/>",
            x - r, y - r, x + r, y + r, x - r, y + r, x + r, y - r, color
        );
    }

    fn label(&mut self, p: Point, text: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" font-family=\"sans-serif\">{}</text>", x + 5.0, y - 5.0, text);
    }

    fn axes(&mut self) {
        let (x0, y0) = self.map([0.0, 0.0]);
        let s = self.size;
        let _ = writeln!(self.body, "<path d=\"M0,{y0:.3}H{s}M{x0:.3},0V{s}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>");
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            s = self.size
        )
    }
}

/// Branch points and cycle paths over one base point.
pub fn cycles_svg(cycles: &[CyclePath<f64>]) -> String {
    let pts = cycles.iter().flat_map(|c| c.vertices.iter().chain(c.roots.iter()).map(|z| [z.re, z.im]));
    let mut cv = Canvas::new(pts, 0.1, 480.0);
    cv.axes();
    for (k, c) in cycles.iter().enumerate() {
        let pts: Vec<Point> = c.vertices.iter().map(|z| [z.re, z.im]).collect();
        cv.polyline(&pts, PALETTE[k % PALETTE.len()], 2.0, false);
        let mid = pts[pts.len() / 2];
        cv.label(mid, &c.name);
    }
    if let Some(c) = cycles.first() {
        for r in &c.roots {
            cv.cross([r.re, r.im], 4.0, "black");
        }
        let q = c.q;
        cv.label([cv.lo[0], cv.hi[1]], &format!("q = {:.4}{:+.4}i", q.re, q.im));
    }
    cv.finish()
}

/// Cuts, deleted sectors, singularities, traced lines and sample points.
pub fn atlas_svg(atlas: &AffineAtlas, lines: &[AffinePath], samples: &[Point]) -> String {
    let pts = atlas
        .positions()
        .into_iter()
        .chain(lines.iter().flat_map(|l| l.points.iter().copied()))
        .chain(samples.iter().copied());
    let mut cv = Canvas::new(pts, 0.35, 520.0);
    cv.axes();
    for s in &atlas.singularities {
        for c in &s.cuts {
            let dp = [c.d_plus[0] as f64, c.d_plus[1] as f64];
            let dm = [c.d_minus[0] as f64, c.d_minus[1] as f64];
            let ep = cv.ray_end(s.position, dp);
            let em = cv.ray_end(s.position, dm);
            let far = cv.ray_end(s.position, [dp[0] + dm[0], dp[1] + dm[1]]);
            cv.polygon(&[s.position, ep, far, em], "#eeeeee");
            cv.polyline(&[s.position, ep], "#444444", 1.5, true);
            cv.polyline(&[s.position, em], "#444444", 1.5, true);
        }
    }
    for (k, l) in lines.iter().enumerate() {
        for piece in l.pieces() {
            cv.polyline(&piece, PALETTE[k % PALETTE.len()], 2.0, false);
        }
    }
    for p in samples {
        cv.dot(*p, 2.0, "#d62728");
    }
    for s in &atlas.singularities {
        cv.cross(s.position, 5.0, "black");
        cv.label(s.position, &s.name);
    }
    cv.finish()
}

/// Valuation image of an `A_n` skeleton, one colour per chart.
pub fn skeleton_svg(sk: &Skeleton) -> String {
    let pts = sk.segments.iter().flat_map(|s| [s.start, s.end]);
    let mut cv = Canvas::new(pts, 0.2, 420.0);
    cv.axes();
    for s in &sk.segments {
        cv.polyline(&[s.start, s.end], PALETTE[s.chart % PALETTE.len()], 3.0, false);
        cv.dot(s.start, 3.0, "black");
        cv.dot(s.end, 3.0, "black");
    }
    cv.label([cv.lo[0], cv.hi[1]], &format!("n = {}, s = {}", sk.n, sk.s));
    cv.finish()
}
