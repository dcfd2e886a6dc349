//! Turning textual inputs into an expansion session.

use std::sync::Arc;

use crate::engine::{from_quadratic, QuadraticInput};
use crate::error::{Error, Result};
use crate::expr::{parse, ExactValue};
use crate::geometry::{BoundaryPoint, NumericPoint, OrientedGeodesic};
use crate::group::{GroupElement, Word};
use crate::numerics::default_max_precision;
use crate::tower::QuadCtx;

/// Raw user input, as given on the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputSpec {
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub z: Option<String>,
    pub w: Option<String>,
    pub sign: Option<String>,
    pub b0: Option<String>,
    pub max_precision: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub geodesic: OrientedGeodesic,
    pub ctx: Option<Arc<QuadCtx>>,
    pub b0: Option<GroupElement>,
    pub numeric: bool,
}

fn is_infinity(s: &str) -> bool {
    matches!(s.trim(), "inf" | "infinity" | "∞" | "oo")
}

fn parse_sign(s: Option<&str>) -> Result<i8> {
    match s.map(str::trim) {
        None | Some("+") | Some("+1") | Some("1") => Ok(1),
        Some("-") | Some("-1") => Ok(-1),
        Some(o) => Err(Error::Parse(format!("sign must be + or -, got `{o}`"))),
    }
}

/// A boundary point: `inf`, an exact expression, or a numeric one.
pub fn parse_point(s: &str, ctx: Option<&Arc<QuadCtx>>, max_precision: u32) -> Result<BoundaryPoint> {
    if is_infinity(s) {
        return Ok(BoundaryPoint::Infinity);
    }
    let e = parse(s)?;
    if e.is_numeric() {
        return Ok(BoundaryPoint::Numeric(NumericPoint::new(e.to_num()?, max_precision)));
    }
    Ok(match e.to_exact(ctx)? {
        ExactValue::L(l) => BoundaryPoint::ExactL(l),
        ExactValue::Quad(q) => match q.as_l() {
            Some(l) => BoundaryPoint::ExactL(l.clone()),
            None => BoundaryPoint::ExactQuad(q),
        },
    })
}

fn point_ctx(p: &BoundaryPoint) -> Option<Arc<QuadCtx>> {
    match p {
        BoundaryPoint::ExactQuad(q) => Some(q.ctx().clone()),
        _ => None,
    }
}

/// The conjugate endpoint of an exact α: `√D ↦ −√D`, or `θ ↦ −θ` inside L.
fn conjugate(p: &BoundaryPoint) -> Result<BoundaryPoint> {
    let not_quadratic = || Error::Invalid("α is not quadratic over F; give --beta".into());
    match p {
        BoundaryPoint::ExactQuad(q) => Ok(BoundaryPoint::ExactQuad(q.conj_sqrt().ok_or_else(not_quadratic)?)),
        BoundaryPoint::ExactL(l) => {
            if l.to_f().is_some() {
                return Err(not_quadratic());
            }
            Ok(BoundaryPoint::ExactL(l.conj()))
        }
        BoundaryPoint::Infinity => Err(not_quadratic()),
        BoundaryPoint::Numeric(_) => Err(Error::Invalid("a numeric α needs --beta".into())),
    }
}

impl InputSpec {
    pub fn precision(&self) -> u32 {
        self.max_precision.unwrap_or_else(default_max_precision)
    }

    pub fn build(&self) -> Result<Session> {
        let prec = self.precision();
        let (geodesic, ctx) = match (&self.z, &self.w, &self.alpha) {
            (Some(_), _, Some(_)) | (_, Some(_), Some(_)) => {
                return Err(Error::Invalid("give either --alpha or --z/--w, not both".into()))
            }
            (Some(z), Some(w), None) => {
                let q = QuadraticInput { z: parse(z)?.to_l()?, w: parse(w)?.to_l()?, sign: parse_sign(self.sign.as_deref())? };
                let qg = from_quadratic(&q)?;
                match &self.beta {
                    None => (qg.geodesic, Some(qg.ctx)),
                    Some(b) => {
                        let beta = parse_point(b, Some(&qg.ctx), prec)?;
                        (OrientedGeodesic::new(beta, qg.geodesic.alpha)?, Some(qg.ctx))
                    }
                }
            }
            (Some(_), None, None) | (None, Some(_), None) => {
                return Err(Error::Invalid("--z and --w go together".into()))
            }
            (None, None, Some(a)) => {
                let alpha = parse_point(a, None, prec)?;
                let ctx = point_ctx(&alpha);
                let beta = match &self.beta {
                    Some(b) => parse_point(b, ctx.as_ref(), prec)?,
                    None => conjugate(&alpha)?,
                };
                let ctx = ctx.or_else(|| point_ctx(&beta));
                (OrientedGeodesic::new(beta, alpha)?, ctx)
            }
            (None, None, None) => return Err(Error::Invalid("no input: give --alpha or --z/--w".into())),
        };
        let b0 = self.b0.as_deref().map(|w| Word::parse(w).map(|w| w.eval())).transpose()?;
        let numeric = geodesic.alpha.is_numeric() || geodesic.beta.is_numeric();
        Ok(Session { geodesic, ctx, b0, numeric })
    }
}
