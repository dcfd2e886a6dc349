use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{refine, FElem, LElem, Rat};
use crate::error::{Error, Result};
use crate::numerics::{eta_min_poly, isolate_root, resolve_sign, IntervalReal};

/// The discriminant `D ∈ F`, `D > 0`, that a family of [`QuadRealElem`]s share.
///
/// When `D` happens to be a square in L the square root is stored and every
/// element is kept in the canonical form `u + 0·√D`.
#[derive(Debug)]
pub struct QuadCtx {
    d: FElem,
    root: Option<LElem>,
}

impl QuadCtx {
    pub fn new(d: FElem) -> Result<Arc<QuadCtx>> {
        if d.sign() <= 0 {
            return Err(Error::NonPositiveDiscriminant);
        }
        let root = sqrt_in_l(&d).map(|r| if r.sign() < 0 { -r } else { r });
        Ok(Arc::new(QuadCtx { d, root }))
    }

    /// The context `D = 1`, in which elements are plain members of L.
    pub fn rational() -> Arc<QuadCtx> {
        static C: OnceLock<Arc<QuadCtx>> = OnceLock::new();
        C.get_or_init(|| Arc::new(QuadCtx { d: FElem::one(), root: Some(LElem::one()) })).clone()
    }

    pub fn d(&self) -> &FElem {
        &self.d
    }

    /// The positive square root of `D` when it lies in L.
    pub fn sqrt_in_l(&self) -> Option<&LElem> {
        self.root.as_ref()
    }

    pub fn is_degenerate(&self) -> bool {
        self.root.is_some()
    }
}

/// Enclosures of the three real roots of X³ + X² − 2X − 1.
fn eta_embeddings(prec: u32) -> [IntervalReal; 3] {
    let r = |a: i64| Rat::new(BigInt::from(a), BigInt::from(100));
    let p = eta_min_poly();
    [(124, 125), (-45, -44), (-181, -180)]
        .map(|(a, b)| isolate_root(&p, &r(a), &r(b), prec).expect("embedding roots are isolated"))
}

/// A square root of `g` in F, if one exists.
pub(crate) fn sqrt_in_f(g: &FElem) -> Option<FElem> {
    if g.is_zero() {
        return Some(FElem::zero());
    }
    let m = g.coeffs().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mq = Rat::from_integer(m.clone());
    let big = g.scale(&(&mq * &mq));
    let ints: Vec<BigInt> = big.coeffs().iter().map(|q| q.to_integer()).collect();
    let bits = ints.iter().map(|x| x.bits()).max().unwrap_or(1) as u32;
    let mut wp = 96 + 2 * bits;
    for _ in 0..4 {
        let roots = eta_embeddings(wp);
        let vals: Vec<IntervalReal> = roots
            .iter()
            .map(|e| {
                let e = e.with_precision(wp);
                let mut acc = IntervalReal::from_int(0, wp);
                for c in ints.iter().rev() {
                    acc = acc.mul(&e).add(&IntervalReal::from_rational(&Rat::from_integer(c.clone()), wp));
                }
                acc
            })
            .collect();
        if vals.iter().any(|v| v.hi.signum() < 0) {
            return None;
        }
        let sq: Vec<IntervalReal> = vals.iter().map(|v| v.sqrt().unwrap()).collect();
        let e: Vec<IntervalReal> = roots.iter().map(|r| r.with_precision(wp)).collect();
        let mut inexact = false;
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                let t = [sq[0].clone(), sq[1].mul(&IntervalReal::from_int(s1, wp)), sq[2].mul(&IntervalReal::from_int(s2, wp))];
                let Some(y) = lagrange(&t, &e) else {
                    inexact = true;
                    continue;
                };
                let cand: Option<Vec<BigInt>> = y.iter().map(nearest_integer).collect();
                let Some(cand) = cand else {
                    inexact = true;
                    continue;
                };
                let yf = FElem::new([0, 1, 2].map(|i| Rat::from_integer(cand[i].clone())));
                if &yf * &yf == big {
                    return Some(yf.scale(&mq.recip()));
                }
            }
        }
        if !inexact {
            return None;
        }
        wp *= 2;
    }
    None
}

fn lagrange(t: &[IntervalReal; 3], e: &[IntervalReal]) -> Option<[IntervalReal; 3]> {
    let p = t[0].precision;
    let mut y = [IntervalReal::from_int(0, p), IntervalReal::from_int(0, p), IntervalReal::from_int(0, p)];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let den = e[i].sub(&e[j]).mul(&e[i].sub(&e[k]));
        let w = t[i].div(&den)?;
        y[0] = y[0].add(&w.mul(&e[j].mul(&e[k])));
        y[1] = y[1].sub(&w.mul(&e[j].add(&e[k])));
        y[2] = y[2].add(&w);
    }
    Some(y)
}

/// The unique integer in the interval, provided the interval is narrow.
fn nearest_integer(iv: &IntervalReal) -> Option<BigInt> {
    let w = iv.width();
    if !w.is_zero() && w.log2_floor() >= -2 {
        return None;
    }
    let m = iv.mid().to_rational();
    let r = (m + Rat::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    Some(r)
}

/// A square root of `d` in L, if one exists. Squares of L lying in F are
/// exactly the elements of `F²` and `η F²`.
fn sqrt_in_l(d: &FElem) -> Option<LElem> {
    if let Some(y) = sqrt_in_f(d) {
        return Some(y.to_l());
    }
    let q = d.div(&FElem::eta()).ok()?;
    sqrt_in_f(&q).map(|y| &y.to_l() * &LElem::theta())
}

/// `u + v √D` with `u, v ∈ L`.
#[derive(Clone, Debug)]
pub struct QuadRealElem {
    u: LElem,
    v: LElem,
    ctx: Arc<QuadCtx>,
}

impl QuadRealElem {
    pub fn new(ctx: &Arc<QuadCtx>, u: LElem, v: LElem) -> Self {
        match &ctx.root {
            Some(r) if !v.is_zero() => QuadRealElem { u: &u + &(&v * r), v: LElem::zero(), ctx: ctx.clone() },
            _ => QuadRealElem { u, v, ctx: ctx.clone() },
        }
    }

    pub fn from_l(ctx: &Arc<QuadCtx>, l: LElem) -> Self {
        QuadRealElem { u: l, v: LElem::zero(), ctx: ctx.clone() }
    }

    pub fn sqrt_d(ctx: &Arc<QuadCtx>) -> Self {
        QuadRealElem::new(ctx, LElem::zero(), LElem::one())
    }

    pub fn u(&self) -> &LElem {
        &self.u
    }

    pub fn v(&self) -> &LElem {
        &self.v
    }

    pub fn ctx(&self) -> &Arc<QuadCtx> {
        &self.ctx
    }

    pub fn same_ctx(&self, o: &QuadRealElem) -> bool {
        Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx.d == o.ctx.d
    }

    /// The element as a member of L when its √D part vanishes.
    pub fn as_l(&self) -> Option<&LElem> {
        self.v.is_zero().then_some(&self.u)
    }

    pub fn lift(&self, l: LElem) -> Self {
        QuadRealElem::from_l(&self.ctx, l)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn check(&self, o: &QuadRealElem) -> Result<()> {
        if self.same_ctx(o) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, o: &QuadRealElem) -> Result<Self> {
        self.check(o)?;
        Ok(QuadRealElem { u: &self.u + &o.u, v: &self.v + &o.v, ctx: self.ctx.clone() })
    }

    pub fn checked_sub(&self, o: &QuadRealElem) -> Result<Self> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &QuadRealElem) -> Result<Self> {
        self.check(o)?;
        let d = self.ctx.d.to_l();
        let u = &(&self.u * &o.u) + &(&(&self.v * &o.v) * &d);
        let v = &(&self.u * &o.v) + &(&self.v * &o.u);
        Ok(QuadRealElem { u, v, ctx: self.ctx.clone() })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.v.is_zero() {
            return Ok(self.lift(self.u.inv()?));
        }
        let den = &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.ctx.d.to_l());
        let di = den.inv()?;
        Ok(QuadRealElem { u: &self.u * &di, v: -&(&self.v * &di), ctx: self.ctx.clone() })
    }

    pub fn checked_div(&self, o: &QuadRealElem) -> Result<Self> {
        self.checked_mul(&o.inv()?)
    }

    /// `u − v √D`; meaningless (and `None`) when `√D ∈ L`.
    pub fn conj_sqrt(&self) -> Option<Self> {
        if self.ctx.is_degenerate() {
            return None;
        }
        Some(QuadRealElem { u: self.u.clone(), v: -&self.v, ctx: self.ctx.clone() })
    }

    pub(crate) fn eval_at(&self, wp: u32) -> IntervalReal {
        let u = self.u.eval_at(wp);
        if self.v.is_zero() {
            return u;
        }
        let s = self.ctx.d.eval_at(wp).sqrt().expect("D > 0");
        u.add(&self.v.eval_at(wp).mul(&s))
    }

    /// Enclosure of width at most `2^-prec`.
    pub fn eval_interval(&self, prec: u32) -> IntervalReal {
        refine(prec, |wp| Some(self.eval_at(wp)))
    }

    pub fn to_f64(&self) -> f64 {
        self.eval_at(64).to_f64()
    }

    pub fn sign(&self) -> i8 {
        resolve_sign(Some(self.is_zero()), None, |p| Some(self.eval_at(p))).expect("exact sign terminates")
    }

    /// Canonical coefficient vector, suitable as a hash key within one context.
    pub fn key(&self) -> Vec<Rat> {
        self.u.coeffs().iter().chain(self.v.coeffs()).cloned().collect()
    }

    /// Write `self` as `a + b √D` with `a, b ∈ F`, if possible.
    pub fn to_f_pair(&self) -> Option<(FElem, FElem)> {
        match &self.ctx.root {
            None => Some((self.u.to_f()?, self.v.to_f()?)),
            Some(r) => {
                let (e, o) = self.u.split();
                if o.is_zero() {
                    return Some((e, FElem::zero()));
                }
                // √D = θ f with f ∈ F.
                let (re, ro) = r.split();
                if !re.is_zero() {
                    return None;
                }
                Some((e, o.div(&ro).ok()?))
            }
        }
    }
}

impl PartialEq for QuadRealElem {
    fn eq(&self, o: &Self) -> bool {
        self.same_ctx(o) && self.u == o.u && self.v == o.v
    }
}

impl Eq for QuadRealElem {}

impl Hash for QuadRealElem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.u.hash(h);
        self.v.hash(h);
    }
}

impl Add for &QuadRealElem {
    type Output = QuadRealElem;
    fn add(self, o: &QuadRealElem) -> QuadRealElem {
        self.checked_add(o).expect("mismatched discriminant contexts")
    }
}

impl Sub for &QuadRealElem {
    type Output = QuadRealElem;
    fn sub(self, o: &QuadRealElem) -> QuadRealElem {
        self.checked_sub(o).expect("mismatched discriminant contexts")
    }
}

impl Mul for &QuadRealElem {
    type Output = QuadRealElem;
    fn mul(self, o: &QuadRealElem) -> QuadRealElem {
        self.checked_mul(o).expect("mismatched discriminant contexts")
    }
}

impl Neg for &QuadRealElem {
    type Output = QuadRealElem;
    fn neg(self) -> QuadRealElem {
        QuadRealElem { u: -&self.u, v: -&self.v, ctx: self.ctx.clone() }
    }
}

impl Neg for QuadRealElem {
    type Output = QuadRealElem;
    fn neg(self) -> QuadRealElem {
        -&self
    }
}
