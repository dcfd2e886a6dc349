//! SVG pictures of the tiles visited by an expansion.

use std::fmt::Write as _;

use crate::engine::ExpansionResult;
use crate::error::Result;
use crate::geometry::heptagon;
use crate::group::GroupElement;

/// Upper half-plane window `[X0, X1] × [0, Y1]`.
pub const X0: f64 = -2.5;
pub const X1: f64 = 2.5;
pub const Y1: f64 = 3.0;
const SCALE: f64 = 200.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug)]
pub struct Tile {
    pub k: usize,
    pub vertices: Vec<Pt>,
}

impl Tile {
    pub fn centroid(&self) -> Pt {
        let n = self.vertices.len() as f64;
        Pt {
            x: self.vertices.iter().map(|p| p.x).sum::<f64>() / n,
            y: self.vertices.iter().map(|p| p.y).sum::<f64>() / n,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenderScene {
    /// `𝒟` itself, drawn separately when it is not among the tiles.
    pub base: Option<Tile>,
    pub tiles: Vec<Tile>,
    pub beta: f64,
    pub alpha: f64,
    pub labels: Vec<(String, Pt)>,
}

fn act(g: &GroupElement, p: Pt) -> Pt {
    let [a, b, c, d] = g.entries().map(|e| e.to_f64());
    // (a z + b) / (c z + d) for z = x + iy
    let (nr, ni) = (a * p.x + b, a * p.y);
    let (dr, di) = (c * p.x + d, c * p.y);
    let den = dr * dr + di * di;
    Pt { x: (nr * dr + ni * di) / den, y: (ni * dr - nr * di) / den }
}

fn base_vertices() -> Vec<Pt> {
    heptagon()
        .vertices
        .iter()
        .map(|v| {
            let (x, y) = v.to_f64();
            Pt { x, y }
        })
        .collect()
}

fn is_rotation(g: &GroupElement) -> bool {
    heptagon().rotations.iter().any(|r| r.eq_up_to_sign(g))
}

/// Tiles `B_k 𝒟` for `k = 0..=n`.
pub fn scene(r: &ExpansionResult, n: usize) -> Result<RenderScene> {
    let base = base_vertices();
    let mut tiles = Vec::new();
    for k in 0..=n {
        let b = r.b_k(k)?;
        tiles.push(Tile { k, vertices: base.iter().map(|&p| act(&b, p)).collect() });
    }
    let h = heptagon();
    let mut labels = Vec::new();
    let (cx, cy) = h.tau7.to_f64();
    for m in 0..7 {
        let p = base[m];
        let q = base[(m + 1) % 7];
        let mid = Pt { x: (p.x + q.x) / 2.0, y: (p.y + q.y) / 2.0 };
        labels.push((format!("e{m}"), Pt { x: mid.x + 0.2 * (cx - mid.x), y: mid.y + 0.2 * (cy - mid.y) }));
    }
    labels.push(("τ3".into(), base[0]));
    labels.push(("τ7".into(), Pt { x: cx, y: cy }));
    let base_tile = (!is_rotation(&r.b0)).then(|| Tile { k: 0, vertices: base });
    Ok(RenderScene { base: base_tile, tiles, beta: r.geodesic.beta.to_f64(), alpha: r.geodesic.alpha.to_f64(), labels })
}

fn sx(x: f64) -> f64 {
    (x - X0) * SCALE
}

fn sy(y: f64) -> f64 {
    (Y1 - y) * SCALE
}

/// Path command drawing the geodesic segment from `p` to `q`.
fn arc_to(p: Pt, q: Pt) -> String {
    if (p.x - q.x).abs() < 1e-12 * (1.0 + p.x.abs()) {
        return format!("L {:.3} {:.3}", sx(q.x), sy(q.y));
    }
    let c = (p.x * p.x + p.y * p.y - q.x * q.x - q.y * q.y) / (2.0 * (p.x - q.x));
    let r = (p.x - c).hypot(p.y) * SCALE;
    let sweep = u8::from(p.x < q.x);
    format!("A {r:.3} {r:.3} 0 0 {sweep} {:.3} {:.3}", sx(q.x), sy(q.y))
}

fn polygon_path(vs: &[Pt]) -> String {
    let mut d = format!("M {:.3} {:.3}", sx(vs[0].x), sy(vs[0].y));
    for i in 0..vs.len() {
        d.push(' ');
        d.push_str(&arc_to(vs[i], vs[(i + 1) % vs.len()]));
    }
    d.push_str(" Z");
    d
}

fn geodesic_path(beta: f64, alpha: f64) -> String {
    let top = Y1 + 1.0;
    match (beta.is_finite(), alpha.is_finite()) {
        (true, true) => {
            let r = (alpha - beta).abs() / 2.0 * SCALE;
            let sweep = u8::from(beta < alpha);
            format!("M {:.3} {:.3} A {r:.3} {r:.3} 0 0 {sweep} {:.3} {:.3}", sx(beta), sy(0.0), sx(alpha), sy(0.0))
        }
        (false, true) => format!("M {:.3} {:.3} L {:.3} {:.3}", sx(alpha), sy(top), sx(alpha), sy(0.0)),
        (true, false) => format!("M {:.3} {:.3} L {:.3} {:.3}", sx(beta), sy(0.0), sx(beta), sy(top)),
        (false, false) => String::new(),
    }
}

impl RenderScene {
    pub fn to_svg(&self) -> String {
        let (w, h) = ((X1 - X0) * SCALE, Y1 * SCALE);
        let mut s = String::new();
        writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        )
        .unwrap();
        writeln!(s, r#"<defs><clipPath id="view"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath></defs>"#).unwrap();
        writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
        writeln!(s, r#"<line class="axis" x1="0" y1="{h}" x2="{w}" y2="{h}" stroke="black"/>"#).unwrap();
        writeln!(s, r#"<g clip-path="url(#view)">"#).unwrap();
        if let Some(b) = &self.base {
            writeln!(s, r##"<path class="base" d="{}" fill="#eef" stroke="#446" stroke-width="1"/>"##, polygon_path(&b.vertices)).unwrap();
        }
        for t in &self.tiles {
            let fill = if t.k == 0 { "#dde" } else { "none" };
            writeln!(
                s,
                r##"<path class="tile" data-k="{}" d="{}" fill="{fill}" stroke="#224" stroke-width="1"/>"##,
                t.k,
                polygon_path(&t.vertices)
            )
            .unwrap();
        }
        writeln!(
            s,
            r##"<path class="geodesic" d="{}" fill="none" stroke="#c00" stroke-width="2"/>"##,
            geodesic_path(self.beta, self.alpha)
        )
        .unwrap();
        for (text, p) in &self.labels {
            writeln!(
                s,
                r#"<text class="label" x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">{text}</text>"#,
                sx(p.x),
                sy(p.y)
            )
            .unwrap();
        }
        writeln!(s, "</g>\n</svg>").unwrap();
        s
    }
}
