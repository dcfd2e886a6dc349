//! Digit expansion of reduced geodesics.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{exit_edge, initial_reduce, is_reduced, mobius, BoundaryPoint, OrientedGeodesic, PointKey};
use crate::group::{check_digit, digit_constants, digit_matrix, DigitConstants, GroupElement};
use crate::order::element_in_order;
use crate::tower::print::latex_l;
use crate::tower::{rat, FElem, LElem, QuadCtx, QuadRealElem};

pub const DEFAULT_MAX_DIGITS: usize = 10_000;
pub const DEFAULT_REDUCE_BUDGET: usize = 10_000;

/// The hyperbolic element `[[z, η w̄], [w, z̄]]` whose attracting or repelling
/// fixed point is to be expanded; `sign` picks the branch of the square root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticInput {
    pub z: LElem,
    pub w: LElem,
    pub sign: i8,
}

/// Endpoints of the axis of a quadratic input, together with the discriminant
/// context they live in.
#[derive(Clone, Debug)]
pub struct QuadraticGeodesic {
    pub geodesic: OrientedGeodesic,
    pub ctx: Arc<QuadCtx>,
}

/// `D = (z − z̄)² + 4η w w̄`, `α = (z − z̄ + s√D)/(2w)` and β the other root.
pub fn from_quadratic(q: &QuadraticInput) -> Result<QuadraticGeodesic> {
    if q.sign != 1 && q.sign != -1 {
        return Err(Error::Invalid("sign must be + or -".into()));
    }
    let diff = &q.z - &q.z.conj();
    let d = (&(&diff * &diff) + &(&(&LElem::eta() * &q.w) * &q.w.conj()).scale(&rat(4, 1)))
        .to_f()
        .expect("discriminant lies in F");
    if d.sign() <= 0 {
        return Err(Error::NonPositiveDiscriminant);
    }
    let ctx = QuadCtx::new(d)?;
    if q.w.is_zero() {
        let zero = BoundaryPoint::ExactL(LElem::zero());
        let (beta, alpha) = if q.sign > 0 { (zero, BoundaryPoint::Infinity) } else { (BoundaryPoint::Infinity, zero) };
        return Ok(QuadraticGeodesic { geodesic: OrientedGeodesic::new(beta, alpha)?, ctx });
    }
    let s = QuadRealElem::sqrt_d(&ctx);
    let s = if q.sign > 0 { s } else { -s };
    let base = QuadRealElem::from_l(&ctx, diff);
    let inv2w = QuadRealElem::from_l(&ctx, q.w.scale(&rat(2, 1)).inv()?);
    let alpha = &(&base + &s) * &inv2w;
    let beta = &(&base - &s) * &inv2w;
    let geodesic = OrientedGeodesic::new(BoundaryPoint::ExactQuad(beta), BoundaryPoint::ExactQuad(alpha))?;
    Ok(QuadraticGeodesic { geodesic, ctx })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Digits `k0+1 ..= k0+l0` repeat forever.
    Periodic { k0: usize, l0: usize },
    /// No period found within the digit budget.
    BudgetExhausted,
    /// A numeric input was expanded to the requested length.
    NumericStream,
    /// A sign could not be certified; digits so far are valid.
    PrecisionExhausted(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodMode {
    /// The pair `(α_k, β_k)` recurred.
    Closed,
    /// `α_k` recurred and a full period of digits was confirmed.
    BetaFree,
}

#[derive(Clone, Debug)]
pub struct ExpandOptions {
    pub max_digits: usize,
    pub reduce_budget: usize,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions { max_digits: DEFAULT_MAX_DIGITS, reduce_budget: DEFAULT_REDUCE_BUDGET }
    }
}

#[derive(Clone, Debug)]
pub struct ExpansionResult {
    pub geodesic: OrientedGeodesic,
    pub ctx: Option<Arc<QuadCtx>>,
    pub b0: GroupElement,
    pub digits: Vec<i8>,
    pub status: Status,
    pub mode: Option<PeriodMode>,
}

/// Smallest `d | block.len()` such that the block is `d`-periodic.
pub fn minimal_rotation_period(block: &[i8]) -> usize {
    let l = block.len();
    (1..=l).find(|&d| l % d == 0 && (0..l).all(|i| block[i] == block[(i + d) % l])).unwrap_or(l)
}

/// Expand `ϖ` starting from `B₀` (found automatically when `None`).
pub fn expand(g: &OrientedGeodesic, ctx: Option<Arc<QuadCtx>>, b0: Option<GroupElement>, opts: &ExpandOptions) -> Result<ExpansionResult> {
    let b0 = match b0 {
        Some(b) => {
            if !b.nrd().is_one() {
                return Err(Error::NotUnimodular);
            }
            if !is_reduced(&g.transform(&b.inverse()))? {
                return Err(Error::NotReduced);
            }
            b
        }
        None => initial_reduce(g, opts.reduce_budget)?,
    };
    let numeric = g.alpha.is_numeric() || g.beta.is_numeric();
    let mut cur = g.transform(&b0.inverse());
    let mut digits: Vec<i8> = Vec::new();
    let mut pair_seen: HashMap<(PointKey, PointKey), usize> = HashMap::new();
    let mut alpha_seen: HashMap<PointKey, Vec<usize>> = HashMap::new();
    let mut alpha_keys: Vec<PointKey> = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut status = if numeric { Status::NumericStream } else { Status::BudgetExhausted };
    let mut mode = None;
    for k in 0.. {
        if !numeric {
            let ak = cur.alpha.key().unwrap();
            let bk = cur.beta.key().unwrap();
            if let Some(&j) = pair_seen.get(&(ak.clone(), bk.clone())) {
                status = Status::Periodic { k0: j, l0: k - j };
                mode = Some(PeriodMode::Closed);
                alpha_keys.push(ak);
                break;
            }
            pair_seen.insert((ak.clone(), bk), k);
            alpha_keys.push(ak.clone());
            let mut confirmed = None;
            pending.retain(|&(j, k1)| {
                let l = k1 - j;
                if k1 + l != k {
                    return k1 + l > k;
                }
                if confirmed.is_none() && digits[j..k1] == digits[k1..k] && alpha_keys[k] == alpha_keys[k1] {
                    confirmed = Some((j, l));
                }
                false
            });
            if let Some((j, l)) = confirmed {
                status = Status::Periodic { k0: j, l0: l };
                mode = Some(PeriodMode::BetaFree);
                break;
            }
            let prev = alpha_seen.entry(ak).or_default();
            for &j in prev.iter() {
                pending.push((j, k));
            }
            prev.push(k);
        }
        if digits.len() >= opts.max_digits {
            break;
        }
        let d = match exit_edge(&cur) {
            Ok(d) => d,
            Err(Error::PrecisionExhausted(p)) => {
                status = Status::PrecisionExhausted(p);
                break;
            }
            Err(e) => return Err(e),
        };
        digits.push(d);
        cur = cur.transform(&digit_matrix(d as i32)?.inverse());
    }
    if let Status::Periodic { k0, l0 } = status {
        let (k0, l0) = tighten_period(&digits, &alpha_keys, k0, l0);
        status = Status::Periodic { k0, l0 };
    }
    Ok(ExpansionResult { geodesic: g.clone(), ctx, b0, digits, status, mode })
}

fn tighten_period(digits: &[i8], alpha_keys: &[PointKey], mut k0: usize, mut l0: usize) -> (usize, usize) {
    let d = minimal_rotation_period(&digits[k0..k0 + l0]);
    if d < l0 && alpha_keys.get(k0 + d) == alpha_keys.get(k0) {
        l0 = d;
    }
    while k0 > 0 && digits[k0 - 1] == digits[k0 - 1 + l0] && alpha_keys[k0 - 1] == alpha_keys[k0 - 1 + l0] {
        k0 -= 1;
    }
    (k0, l0)
}

impl ExpansionResult {
    pub fn period(&self) -> Option<(usize, usize)> {
        match self.status {
            Status::Periodic { k0, l0 } => Some((k0, l0)),
            _ => None,
        }
    }

    /// Digit `i_m` (1-based), extended periodically past the computed prefix.
    pub fn digit(&self, m: usize) -> Result<i8> {
        if m == 0 {
            return Err(Error::IndexOutOfRange(0));
        }
        if m <= self.digits.len() {
            return Ok(self.digits[m - 1]);
        }
        match self.period() {
            Some((k0, l0)) => Ok(self.digits[k0 + (m - 1 - k0) % l0]),
            None => Err(Error::IndexOutOfRange(m)),
        }
    }

    /// `B_k = B₀ A_{i1} ⋯ A_{ik}`.
    pub fn b_k(&self, k: usize) -> Result<GroupElement> {
        let mut b = self.b0.clone();
        for m in 1..=k {
            b = b.compose(&digit_matrix(self.digit(m)? as i32)?);
        }
        Ok(b)
    }

    /// `γ₀ = B_{k0+l0} B_{k0}⁻¹`, checked to be a hyperbolic norm-one element
    /// of the order fixing α (and β for closed geodesics).
    pub fn fundamental_unit(&self) -> Result<GroupElement> {
        let (k0, l0) = self.period().ok_or(Error::NotPeriodic)?;
        let gamma = self.b_k(k0 + l0)?.compose(&self.b_k(k0)?.inverse());
        if !gamma.nrd().is_one() {
            return Err(Error::NotUnimodular);
        }
        if !element_in_order(&gamma) {
            return Err(Error::NotInOrder);
        }
        if !gamma.is_hyperbolic() {
            return Err(Error::NotHyperbolic);
        }
        if mobius(&gamma, &self.geodesic.alpha).exact_eq(&self.geodesic.alpha) != Some(true) {
            return Err(Error::NotInStabilizer);
        }
        if self.mode == Some(PeriodMode::Closed)
            && mobius(&gamma, &self.geodesic.beta).exact_eq(&self.geodesic.beta) != Some(true)
        {
            return Err(Error::NotInStabilizer);
        }
        Ok(gamma)
    }

    /// `ε₀ = ρ_α(γ₀)` as `(a, b, D)` meaning `a + b√D`.
    ///
    /// Without a session discriminant, `D = trd(γ₀)² − 4`.
    pub fn epsilon0(&self) -> Result<(FElem, FElem, FElem)> {
        let g = self.fundamental_unit()?;
        let ctx = match &self.ctx {
            Some(c) => c.clone(),
            None => {
                let t = g.trd();
                QuadCtx::new(&(&t * &t) - &FElem::from_int(4))?
            }
        };
        let (a, b) = rho_alpha(&g, &self.geodesic.alpha, &ctx)?;
        Ok((a, b, ctx.d().clone()))
    }

    /// `x^reg_k = B_k · 0`.
    pub fn convergent_reg(&self, k: usize) -> Result<BoundaryPoint> {
        Ok(mobius(&self.b_k(k)?, &BoundaryPoint::ExactL(LElem::zero())))
    }

    /// `x^trad_k = B_{k+1} · ∞`.
    pub fn convergent_trad(&self, k: usize) -> Result<BoundaryPoint> {
        Ok(mobius(&self.b_k(k + 1)?, &BoundaryPoint::Infinity))
    }
}

/// The eigenvalue `γ` acts by on the line through `(α, 1)`: `c α + d`,
/// written as `a + b√D` with `a, b ∈ F`.
pub fn rho_alpha(g: &GroupElement, alpha: &BoundaryPoint, ctx: &Arc<QuadCtx>) -> Result<(FElem, FElem)> {
    let [a, _, c, d] = g.entries();
    let v = match alpha {
        BoundaryPoint::Infinity => {
            if !c.is_zero() {
                return Err(Error::NotInStabilizer);
            }
            QuadRealElem::from_l(ctx, a)
        }
        p => {
            let x = p.to_quad(ctx).ok_or(Error::Invalid("numeric endpoint".into()))?;
            x.checked_mul(&x.lift(c))?.checked_add(&x.lift(d))?
        }
    };
    v.to_f_pair().ok_or(Error::NotInStabilizer)
}

/// Units agree up to sign and inversion: `a = ±a′` and `b²D = b′²D′`.
pub fn units_equivalent(u: &(FElem, FElem, FElem), v: &(FElem, FElem, FElem)) -> bool {
    let (a, b, d) = u;
    let (a2, b2, d2) = v;
    (a == a2 || *a == -a2) && &(b * b) * d == &(b2 * b2) * d2
}

pub fn cf_coefficients(digits: &[i8]) -> Result<Vec<DigitConstants>> {
    digits.iter().map(|&i| digit_constants(check_digit(i as i32)? as i32)).collect()
}

/// `α = a + n₁/(e₁ + n₂/(e₂ + …))`, the digits' nested fraction after the
/// equivalence transformation that makes every partial numerator positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedFraction {
    pub leading: LElem,
    pub numerators: Vec<LElem>,
    pub denominators: Vec<LElem>,
}

pub fn nested_fraction(digits: &[i8]) -> Result<NestedFraction> {
    let cs = cf_coefficients(digits)?;
    let Some(first) = cs.first() else {
        return Err(Error::Invalid("no digits".into()));
    };
    let mut numerators = vec![first.b.scale(&rat(1, 2))];
    let mut denominators = Vec::new();
    for k in 1..cs.len() {
        let d = &cs[k - 1].c + &cs[k].a;
        let r = if k % 2 == 1 { rat(-1, 2) } else { rat(1, 2) };
        denominators.push(d.scale(&r));
        numerators.push(cs[k].b.scale(&rat(1, 4)));
    }
    Ok(NestedFraction { leading: first.a.clone(), numerators, denominators })
}

fn paren(s: String) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

impl NestedFraction {
    pub fn to_text(&self) -> String {
        let mut inner = "...".to_string();
        for k in (0..self.numerators.len()).rev() {
            let n = paren(self.numerators[k].to_string());
            let tail = match self.denominators.get(k) {
                Some(d) => format!("{} + {}", paren(d.to_string()), inner),
                None => inner,
            };
            inner = format!("{n}/({tail})");
        }
        format!("{} + {}", self.leading, inner)
    }

    pub fn to_latex(&self) -> String {
        let mut inner = "\\cdots".to_string();
        for k in (0..self.numerators.len()).rev() {
            let tail = match self.denominators.get(k) {
                Some(d) => format!("{} + {}", latex_l(d), inner),
                None => inner,
            };
            inner = format!("\\cfrac{{{}}}{{{}}}", latex_l(&self.numerators[k]), tail);
        }
        format!("{} + {}", latex_l(&self.leading), inner)
    }
}
