//! Oriented geodesics in the upper half-plane and the fundamental heptagon.
//!
//! The heptagon 𝒟 has centre τ₇ on the imaginary axis and vertices
//! `V_m = g7^m τ₃`, listed clockwise. Edge `e_m` joins `V_m` to `V_{m+1}` and
//! lies on the geodesic from `g7^m(−θ)` to `g7^m(θ)`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{g3, g7, GroupElement};
use crate::numerics::{default_max_precision, resolve_sign, IntervalReal, NumExpr};
use crate::tower::{FElem, LElem, QuadCtx, QuadRealElem, Rat};

/// A real number computed from a closed form by an exact Möbius transform.
#[derive(Clone, Debug)]
pub struct NumericPoint {
    pub base: Arc<NumExpr>,
    /// `[a, b, c, d]`: the point is `(a x + b) / (c x + d)`.
    pub m: [LElem; 4],
    pub max_precision: u32,
}

impl NumericPoint {
    pub fn new(base: NumExpr, max_precision: u32) -> Self {
        NumericPoint {
            base: Arc::new(base),
            m: [LElem::one(), LElem::zero(), LElem::zero(), LElem::one()],
            max_precision,
        }
    }

    pub(crate) fn eval_at(&self, wp: u32) -> Option<IntervalReal> {
        let x = self.base.eval(wp)?;
        let [a, b, c, d] = self.m.clone().map(|e| e.eval_at(wp));
        let num = a.mul(&x).add(&b);
        let den = c.mul(&x).add(&d);
        num.div(&den)
    }
}

/// A point of ℝ ∪ {∞}.
#[derive(Clone, Debug)]
pub enum BoundaryPoint {
    Infinity,
    ExactL(LElem),
    ExactQuad(QuadRealElem),
    Numeric(NumericPoint),
}

/// Hashable identity of an exact boundary point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointKey {
    Infinity,
    Finite(Vec<Rat>),
}

impl BoundaryPoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, BoundaryPoint::Numeric(_))
    }

    /// `None` for numeric points.
    pub fn key(&self) -> Option<PointKey> {
        match self {
            BoundaryPoint::Infinity => Some(PointKey::Infinity),
            BoundaryPoint::ExactL(l) => Some(PointKey::Finite(l.coeffs().iter().cloned().chain(LElem::zero().coeffs().iter().cloned()).collect())),
            BoundaryPoint::ExactQuad(q) => Some(PointKey::Finite(q.key())),
            BoundaryPoint::Numeric(_) => None,
        }
    }

    /// Exact equality; `None` if either side is numeric.
    pub fn exact_eq(&self, o: &BoundaryPoint) -> Option<bool> {
        Some(self.key()? == o.key()?)
    }

    pub fn to_quad(&self, ctx: &Arc<QuadCtx>) -> Option<QuadRealElem> {
        match self {
            BoundaryPoint::ExactL(l) => Some(QuadRealElem::from_l(ctx, l.clone())),
            BoundaryPoint::ExactQuad(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// Enclosure at working precision `wp`; `None` for ∞ or an unresolved divisor.
    pub fn eval_at(&self, wp: u32) -> Option<IntervalReal> {
        match self {
            BoundaryPoint::Infinity => None,
            BoundaryPoint::ExactL(l) => Some(l.eval_at(wp)),
            BoundaryPoint::ExactQuad(q) => Some(q.eval_at(wp)),
            BoundaryPoint::Numeric(n) => n.eval_at(wp),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BoundaryPoint::Infinity => f64::INFINITY,
            _ => {
                let mut p = 64;
                loop {
                    if let Some(iv) = self.eval_at(p) {
                        if iv.width_at_most(40) || p >= 4096 {
                            return iv.to_f64();
                        }
                    }
                    if p >= 4096 {
                        return f64::NAN;
                    }
                    p *= 2;
                }
            }
        }
    }

    /// Decimal enclosure with an explicit error bound.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            BoundaryPoint::Infinity => "inf".into(),
            BoundaryPoint::ExactL(l) => l.eval_interval(4 * digits as u32 + 16).to_decimal(digits),
            BoundaryPoint::ExactQuad(q) => q.eval_interval(4 * digits as u32 + 16).to_decimal(digits),
            BoundaryPoint::Numeric(n) => {
                let mut p = 4 * digits as u32 + 32;
                loop {
                    if let Some(iv) = n.eval_at(p) {
                        if iv.width_at_most(4 * digits as u32) || p >= n.max_precision.max(256) {
                            return iv.to_decimal(digits);
                        }
                    }
                    if p >= n.max_precision.max(256) {
                        return "unresolved".into();
                    }
                    p *= 2;
                }
            }
        }
    }
}

impl std::fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryPoint::Infinity => f.write_str("inf"),
            BoundaryPoint::ExactL(l) => write!(f, "{l}"),
            BoundaryPoint::ExactQuad(q) => write!(f, "{q}"),
            BoundaryPoint::Numeric(n) => write!(f, "{}", n.base),
        }
    }
}

/// Action of a matrix on ℝ ∪ {∞}.
pub fn mobius(g: &GroupElement, p: &BoundaryPoint) -> BoundaryPoint {
    let [a, b, c, d] = g.entries();
    match p {
        BoundaryPoint::Infinity => {
            if c.is_zero() {
                BoundaryPoint::Infinity
            } else {
                BoundaryPoint::ExactL(a.div(&c).unwrap())
            }
        }
        BoundaryPoint::ExactL(x) => {
            let den = &(&c * x) + &d;
            if den.is_zero() {
                BoundaryPoint::Infinity
            } else {
                BoundaryPoint::ExactL((&(&a * x) + &b).div(&den).unwrap())
            }
        }
        BoundaryPoint::ExactQuad(x) => {
            let den = &(&x.lift(c) * x) + &x.lift(d);
            if den.is_zero() {
                BoundaryPoint::Infinity
            } else {
                let num = &(&x.lift(a) * x) + &x.lift(b);
                BoundaryPoint::ExactQuad(num.checked_div(&den).unwrap())
            }
        }
        BoundaryPoint::Numeric(n) => {
            let [p, q, r, s] = &n.m;
            let m = [
                &(&a * p) + &(&b * r),
                &(&a * q) + &(&b * s),
                &(&c * p) + &(&d * r),
                &(&c * q) + &(&d * s),
            ];
            BoundaryPoint::Numeric(NumericPoint { base: n.base.clone(), m, max_precision: n.max_precision })
        }
    }
}

/// Arithmetic shared by exact elements and interval enclosures, so that one
/// polynomial predicate serves both sign-determination paths.
pub trait Scalar: Clone {
    fn constant(&self, l: &LElem) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl Scalar for QuadRealElem {
    fn constant(&self, l: &LElem) -> Self {
        self.lift(l.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Scalar for IntervalReal {
    fn constant(&self, l: &LElem) -> Self {
        l.eval_at(self.precision)
    }
    fn add(&self, o: &Self) -> Self {
        IntervalReal::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        IntervalReal::mul(self, o)
    }
}

/// `Σ c · x^i · y^j` with coefficients in L.
#[derive(Clone, Debug)]
pub struct BiPoly(pub Vec<(LElem, u32, u32)>);

impl BiPoly {
    pub fn eval<S: Scalar>(&self, x: &S, y: Option<&S>) -> S {
        let mut acc = x.constant(&LElem::zero());
        for (c, i, j) in &self.0 {
            let mut t = x.constant(c);
            for _ in 0..*i {
                t = t.mul(x);
            }
            for _ in 0..*j {
                t = t.mul(y.expect("second variable"));
            }
            acc = acc.add(&t);
        }
        acc
    }
}

/// Certified sign of `poly(x, y)` at finite boundary points.
pub fn sign_at(poly: &BiPoly, x: &BoundaryPoint, y: Option<&BoundaryPoint>) -> Result<i8> {
    let pts: Vec<&BoundaryPoint> = std::iter::once(x).chain(y).collect();
    if pts.iter().any(|p| p.is_infinite()) {
        return Err(Error::Invalid("sign predicate at ∞".into()));
    }
    if pts.iter().all(|p| !p.is_numeric()) {
        // Certified enclosures usually settle the sign without exact arithmetic.
        for wp in [64, 128] {
            let ix = x.eval_at(wp).unwrap();
            let iy = y.map(|q| q.eval_at(wp).unwrap());
            if let Some(s) = poly.eval(&ix, iy.as_ref()).sign() {
                return Ok(s);
            }
        }
        let ctx = pts
            .iter()
            .find_map(|p| match p {
                BoundaryPoint::ExactQuad(q) => Some(q.ctx().clone()),
                _ => None,
            })
            .unwrap_or_else(QuadCtx::rational);
        let qx = x.to_quad(&ctx).unwrap();
        let qy = y.map(|p| p.to_quad(&ctx).unwrap());
        if let Some(q) = &qy {
            if !q.same_ctx(&qx) {
                return Err(Error::ContextMismatch);
            }
        }
        return Ok(poly.eval(&qx, qy.as_ref()).sign());
    }
    let max = pts
        .iter()
        .filter_map(|p| match p {
            BoundaryPoint::Numeric(n) => Some(n.max_precision),
            _ => None,
        })
        .max()
        .unwrap_or_else(default_max_precision);
    resolve_sign(None, Some(max), |p| {
        let ix = x.eval_at(p)?;
        let iy = match y {
            Some(q) => Some(q.eval_at(p)?),
            None => None,
        };
        Some(poly.eval(&ix, iy.as_ref()))
    })
}

/// A point `x + i·√(n − x²)` of ℍ with `x, n ∈ L` (`n = |V|²`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub x: LElem,
    pub n: LElem,
}

impl Vertex {
    /// Fixed point in ℍ of an elliptic element `[[a, b], [c, d]]`.
    pub fn fixed_point(g: &GroupElement) -> Vertex {
        let [a, b, c, d] = g.entries();
        let ci = c.inv().expect("elliptic element has c ≠ 0");
        Vertex { x: (&a - &d).div(&(&c + &c)).unwrap(), n: -&(&b * &ci) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let x = self.x.to_f64();
        let n = self.n.to_f64();
        (x, (n - x * x).max(0.0).sqrt())
    }
}

pub struct HeptagonData {
    pub vertices: Vec<Vertex>,
    pub tau7: Vertex,
    pub tau2: Vertex,
    /// `g7^m(−θ)` and `g7^m(θ)`: the edge geodesic `E_m` runs from the first to the second.
    pub edge_ends: Vec<(BoundaryPoint, BoundaryPoint)>,
    pub rotations: Vec<GroupElement>,
}

impl HeptagonData {
    fn compute() -> HeptagonData {
        let rotations: Vec<GroupElement> = (0..7).map(|m| g7().pow(m)).collect();
        let vertices: Vec<Vertex> = rotations
            .iter()
            .map(|r| Vertex::fixed_point(&r.compose(&g3()).compose(&r.inverse())))
            .collect();
        let theta = BoundaryPoint::ExactL(LElem::theta());
        let mtheta = BoundaryPoint::ExactL(-LElem::theta());
        let edge_ends = rotations.iter().map(|r| (mobius(r, &mtheta), mobius(r, &theta))).collect();
        let h = HeptagonData {
            vertices,
            tau7: Vertex::fixed_point(&g7()),
            tau2: Vertex::fixed_point(&crate::group::g2()),
            edge_ends,
            rotations,
        };
        h.self_check();
        h
    }

    fn self_check(&self) {
        let eta = FElem::eta();
        let tau3_x = (&FElem::from_ints([-2, 0, 1])).div(&FElem::from_ints([3, 0, -1])).unwrap().to_l();
        assert_eq!(self.vertices[0].x, tau3_x, "τ₃ real part");
        assert_eq!(self.vertices[0].n, eta.to_l(), "|τ₃|² = η");
        assert!(self.tau7.x.is_zero(), "τ₇ lies on the imaginary axis");
        assert_eq!(self.tau2, Vertex { x: LElem::zero(), n: eta.to_l() });
        for m in 0..7 {
            let e = OrientedGeodesic::new_unchecked(self.edge_ends[m].0.clone(), self.edge_ends[m].1.clone());
            assert_eq!(side_of_vertex(&self.vertices[m], &e).unwrap(), 0, "V_m on E_m");
            assert_eq!(side_of_vertex(&self.vertices[(m + 1) % 7], &e).unwrap(), 0, "V_m+1 on E_m");
        }
    }
}

pub fn heptagon() -> &'static HeptagonData {
    static H: OnceLock<HeptagonData> = OnceLock::new();
    H.get_or_init(HeptagonData::compute)
}

/// The geodesic from `beta` to `alpha`.
#[derive(Clone, Debug)]
pub struct OrientedGeodesic {
    pub beta: BoundaryPoint,
    pub alpha: BoundaryPoint,
}

fn t(c: LElem, i: u32, j: u32) -> (LElem, u32, u32) {
    (c, i, j)
}

impl OrientedGeodesic {
    pub fn new(beta: BoundaryPoint, alpha: BoundaryPoint) -> Result<Self> {
        let g = OrientedGeodesic { beta, alpha };
        match (&g.beta, &g.alpha) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => return Err(Error::DegenerateGeodesic),
            (BoundaryPoint::Infinity, _) | (_, BoundaryPoint::Infinity) => {}
            (b, a) => {
                if a.exact_eq(b) == Some(true) || g.endpoint_order()? == 0 {
                    return Err(Error::DegenerateGeodesic);
                }
            }
        }
        Ok(g)
    }

    fn new_unchecked(beta: BoundaryPoint, alpha: BoundaryPoint) -> Self {
        OrientedGeodesic { beta, alpha }
    }

    pub fn transform(&self, g: &GroupElement) -> OrientedGeodesic {
        OrientedGeodesic { beta: mobius(g, &self.beta), alpha: mobius(g, &self.alpha) }
    }

    pub fn is_vertical(&self) -> bool {
        self.alpha.is_infinite() || self.beta.is_infinite()
    }

    /// `sgn(α − β)` for a semicircle.
    fn endpoint_order(&self) -> Result<i8> {
        let p = BiPoly(vec![t(LElem::one(), 1, 0), t(-LElem::one(), 0, 1)]);
        sign_at(&p, &self.alpha, Some(&self.beta))
    }

    /// Signs of the seven vertices relative to the direction of travel,
    /// positive on the left.
    pub fn vertex_signs(&self) -> Result<[i8; 7]> {
        let orient = if self.is_vertical() { 1 } else { self.endpoint_order()? };
        let mut s = [0i8; 7];
        for (m, v) in heptagon().vertices.iter().enumerate() {
            s[m] = side_of_vertex(v, self)? * orient;
        }
        Ok(s)
    }
}

/// Position of a vertex against a geodesic. For a semicircle this is the
/// unoriented sign of `n − (α + β)x + αβ` (positive outside); for a vertical
/// line it is positive on the left of the direction of travel.
pub fn side_of_vertex(v: &Vertex, g: &OrientedGeodesic) -> Result<i8> {
    match (&g.beta, &g.alpha) {
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Err(Error::DegenerateGeodesic),
        (BoundaryPoint::Infinity, a) => sign_at(&BiPoly(vec![t(v.x.clone(), 0, 0), t(-LElem::one(), 1, 0)]), a, None),
        (b, BoundaryPoint::Infinity) => sign_at(&BiPoly(vec![t(-&v.x, 0, 0), t(LElem::one(), 1, 0)]), b, None),
        (b, a) => {
            let p = BiPoly(vec![t(v.n.clone(), 0, 0), t(-&v.x, 1, 0), t(-&v.x, 0, 1), t(LElem::one(), 1, 1)]);
            sign_at(&p, a, Some(b))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    /// Crosses the interior of 𝒟 (possibly through vertices).
    Interior,
    /// Runs along edge `E_m` in its own direction.
    AlongEdgeForward,
    /// Runs along edge `E_m` against its direction.
    AlongEdgeReverse,
    /// Touches 𝒟 only at a vertex.
    Tangent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossing {
    Disjoint,
    Through { entry: usize, exit: usize, kind: CrossingKind },
}

/// How the geodesic meets 𝒟: which side `e_m` it enters through and which
/// side `e′_m` it leaves through.
pub fn crossing(g: &OrientedGeodesic) -> Result<Crossing> {
    let s = g.vertex_signs()?;
    let zeros: Vec<usize> = (0..7).filter(|&m| s[m] == 0).collect();
    let others: Vec<i8> = (0..7).filter(|&m| s[m] != 0).map(|m| s[m]).collect();
    let uniform = others.windows(2).all(|w| w[0] == w[1]);
    match zeros.len() {
        0 if uniform => return Ok(Crossing::Disjoint),
        1 if uniform => {
            let m = zeros[0];
            return Ok(Crossing::Through { entry: m, exit: (m + 6) % 7, kind: CrossingKind::Tangent });
        }
        2 if uniform && ((zeros[0] + 1) % 7 == zeros[1] || (zeros[1] + 1) % 7 == zeros[0]) => {
            let m = if (zeros[0] + 1) % 7 == zeros[1] { zeros[0] } else { zeros[1] };
            return Ok(if others[0] < 0 {
                Crossing::Through { entry: m, exit: m, kind: CrossingKind::AlongEdgeForward }
            } else {
                Crossing::Through { entry: (m + 1) % 7, exit: (m + 6) % 7, kind: CrossingKind::AlongEdgeReverse }
            });
        }
        _ => {}
    }
    let mut entry = None;
    let mut exit = None;
    for m in 0..7 {
        let (prev, cur, next) = (s[(m + 6) % 7], s[m], s[(m + 1) % 7]);
        if cur < 0 && next > 0 {
            entry = Some(m);
        }
        if cur > 0 && next < 0 {
            exit = Some(m);
        }
        if cur == 0 {
            if prev < 0 && next > 0 {
                entry = Some(m);
            }
            if prev > 0 && next < 0 {
                exit = Some((m + 6) % 7);
            }
        }
    }
    match (entry, exit) {
        (Some(entry), Some(exit)) => Ok(Crossing::Through { entry, exit, kind: CrossingKind::Interior }),
        _ => Err(Error::Invalid(format!("inconsistent vertex signs {s:?}"))),
    }
}

/// `|α| < θ`, with α finite.
pub fn alpha_inside(g: &OrientedGeodesic) -> Result<bool> {
    if g.alpha.is_infinite() {
        return Ok(false);
    }
    let p = BiPoly(vec![t(-LElem::eta(), 0, 0), t(LElem::one(), 2, 0)]);
    Ok(sign_at(&p, &g.alpha, None)? < 0)
}

/// Enters 𝒟 through `e_0` and has `|α| < θ`.
pub fn is_reduced(g: &OrientedGeodesic) -> Result<bool> {
    if !alpha_inside(g)? {
        return Ok(false);
    }
    Ok(matches!(crossing(g)?, Crossing::Through { entry: 0, .. }))
}

/// The exit side of a reduced geodesic, as a digit in {±1, ±2, ±3}.
pub fn exit_edge(g: &OrientedGeodesic) -> Result<i8> {
    if !alpha_inside(g)? {
        return Err(Error::NotReduced);
    }
    match crossing(g)? {
        Crossing::Through { entry: 0, exit, .. } if exit != 0 => Ok(crate::group::balanced(exit)),
        _ => Err(Error::NotReduced),
    }
}

/// Monotone proxy for the hyperbolic distance from τ₇ to the geodesic.
fn distance_key(g: &OrientedGeodesic) -> f64 {
    let (_, y7) = heptagon().tau7.to_f64();
    match (&g.beta, &g.alpha) {
        (BoundaryPoint::Infinity, p) | (p, BoundaryPoint::Infinity) => p.to_f64().abs() / y7,
        (b, a) => {
            let (a, b) = (a.to_f64(), b.to_f64());
            let c = (a + b) / 2.0;
            let r = ((a - b) / 2.0).abs();
            (c * c + y7 * y7 - r * r).abs() / (2.0 * r * y7)
        }
    }
}

#[derive(PartialEq)]
struct Node(f64, usize);

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Node {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

/// Find `B₀` such that `B₀⁻¹ ϖ` is reduced.
///
/// Tiles `h𝒟` are searched best-first by the distance from their centre to
/// the geodesic, moving across one side at a time. Once a tile meets the
/// geodesic it is rotated so that the geodesic enters through `e_0`, with a
/// final correction by `g3^{±1}` for the vertex cases.
pub fn initial_reduce(g: &OrientedGeodesic, budget: usize) -> Result<GroupElement> {
    if is_reduced(g)? {
        return Ok(GroupElement::identity());
    }
    let neighbours: Vec<GroupElement> = (0..7).map(|m| g7().pow(m).compose(&crate::group::g2())).collect();
    let mut tiles: Vec<GroupElement> = vec![GroupElement::identity()];
    let mut seen: HashSet<(LElem, LElem)> = HashSet::new();
    let mut heap = BinaryHeap::new();
    seen.insert((LElem::zero(), heptagon().tau7.n.clone()));
    heap.push(Node(distance_key(g), 0));
    let mut expanded = 0;
    while let Some(Node(_, idx)) = heap.pop() {
        expanded += 1;
        if expanded > budget {
            return Err(Error::BudgetExhausted(budget));
        }
        let h = tiles[idx].clone();
        let local = g.transform(&h.inverse());
        if let Crossing::Through { entry, .. } = crossing(&local)? {
            let rot = g7().pow(-(entry as i32));
            for fix in [GroupElement::identity(), g3(), g3().inverse()] {
                let gg = fix.compose(&rot).compose(&h.inverse());
                if is_reduced(&g.transform(&gg))? {
                    return Ok(gg.inverse());
                }
            }
        }
        for n in &neighbours {
            let h2 = h.compose(n);
            let centre = Vertex::fixed_point(&h2.compose(&g7()).compose(&h2.inverse()));
            if !seen.insert((centre.x, centre.n)) {
                continue;
            }
            let key = distance_key(&g.transform(&h2.inverse()));
            tiles.push(h2);
            heap.push(Node(key, tiles.len() - 1));
        }
    }
    Err(Error::BudgetExhausted(budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(x: LElem) -> BoundaryPoint {
        BoundaryPoint::ExactL(x)
    }

    #[test]
    fn heptagon_vertices() {
        let h = heptagon();
        let (x0, y0) = h.vertices[0].to_f64();
        assert!((x0 + 0.30798).abs() < 1e-4 && (y0 - 1.07337).abs() < 1e-4);
        let (x1, _) = h.vertices[1].to_f64();
        assert!((x1 - 0.30798).abs() < 1e-4);
        assert!(h.vertices[4].x.is_zero());
        let (_, y7) = h.tau7.to_f64();
        assert!((y7 - 0.64732).abs() < 1e-4);
    }

    #[test]
    fn vertical_geodesic_through_tau3() {
        let v = heptagon().vertices[0].clone();
        let g = OrientedGeodesic::new(BoundaryPoint::Infinity, l(LElem::zero())).unwrap();
        assert_eq!(side_of_vertex(&v, &g).unwrap(), -1);
        assert!(is_reduced(&g).unwrap());
        assert_eq!(exit_edge(&g).unwrap(), 3);
    }

    #[test]
    fn c0_lies_on_edge() {
        let g = OrientedGeodesic::new(l(-LElem::theta()), l(LElem::theta())).unwrap();
        assert_eq!(side_of_vertex(&heptagon().vertices[0], &g).unwrap(), 0);
        assert_eq!(side_of_vertex(&heptagon().vertices[1], &g).unwrap(), 0);
        assert!(!is_reduced(&g).unwrap());
        let b0 = initial_reduce(&g, 1000).unwrap();
        assert!(b0.eq_up_to_sign(&g3().inverse()), "{b0}");
        assert!(is_reduced(&g.transform(&b0.inverse())).unwrap());
    }

    #[test]
    fn degenerate_geodesic() {
        let e = OrientedGeodesic::new(l(LElem::one()), l(LElem::one())).unwrap_err();
        assert_eq!(e, Error::DegenerateGeodesic);
    }
}
