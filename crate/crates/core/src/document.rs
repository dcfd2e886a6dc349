//! JSON form of an expansion.

use serde::{Deserialize, Serialize};

use crate::engine::{nested_fraction, ExpansionResult, PeriodMode, Status};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Word};
use crate::tower::{FElem, LElem, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    /// θ-coefficients of `z`.
    pub z: Vec<String>,
    /// θ-coefficients of `w`.
    pub w: Vec<String>,
    pub word: Option<String>,
    pub text: [[String; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoDoc {
    /// η-coefficients.
    pub a: Vec<String>,
    pub b: Vec<String>,
    #[serde(rename = "D")]
    pub d: Vec<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDoc {
    pub matrix_z: Vec<String>,
    pub matrix_w: Vec<String>,
    pub word: Option<String>,
    pub rho_alpha: Option<RhoDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentDoc {
    pub k: usize,
    pub kind: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub alpha: String,
    pub beta: String,
    #[serde(rename = "D")]
    pub d: Option<Vec<String>>,
    pub b0_word: Option<String>,
    pub b0: Option<MatrixDoc>,
    pub digits: Vec<i8>,
    pub status: String,
    pub exhausted_at_bits: Option<u32>,
    pub preperiod: Option<usize>,
    pub period: Option<usize>,
    pub period_mode: Option<String>,
    pub unit: Option<UnitDoc>,
    pub continued_fraction: Option<String>,
    pub convergents: Vec<ConvergentDoc>,
    pub error: Option<ErrorDoc>,
}

fn coeff_strings(c: &[Rat]) -> Vec<String> {
    c.iter().map(ToString::to_string).collect()
}

fn parse_coeffs<const N: usize>(v: &[String]) -> Result<[Rat; N]> {
    if v.len() != N {
        return Err(Error::Parse(format!("expected {N} coefficients, got {}", v.len())));
    }
    let mut out: [Rat; N] = std::array::from_fn(|_| Rat::default());
    for (o, s) in out.iter_mut().zip(v) {
        *o = s.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    }
    Ok(out)
}

pub fn l_from_strings(v: &[String]) -> Result<LElem> {
    Ok(LElem::new(parse_coeffs::<6>(v)?))
}

pub fn f_from_strings(v: &[String]) -> Result<FElem> {
    Ok(FElem::new(parse_coeffs::<3>(v)?))
}

pub fn status_name(s: &Status) -> &'static str {
    match s {
        Status::Periodic { .. } => "periodic",
        Status::BudgetExhausted => "budget_exhausted",
        Status::NumericStream => "numeric_stream",
        Status::PrecisionExhausted(_) => "precision_exhausted",
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::BudgetExhausted(_) => "budget_exhausted",
        Error::PrecisionExhausted(_) => "precision_exhausted",
        _ => "invalid_input",
    }
}

impl MatrixDoc {
    pub fn new(g: &GroupElement) -> Self {
        let [a, b, c, d] = g.entries();
        MatrixDoc {
            z: coeff_strings(g.z.coeffs()),
            w: coeff_strings(g.w.coeffs()),
            word: g.word.as_ref().map(ToString::to_string),
            text: [[a.to_string(), b.to_string()], [c.to_string(), d.to_string()]],
        }
    }

    pub fn decode(&self) -> Result<GroupElement> {
        let g = GroupElement::new(l_from_strings(&self.z)?, l_from_strings(&self.w)?);
        Ok(match &self.word {
            Some(w) => g.with_word(Word::parse(w)?),
            None => g,
        })
    }
}

/// Which convergents to report.
#[derive(Clone, Debug, Default)]
pub struct ConvergentRequest {
    pub indices: Vec<usize>,
    pub traditional: bool,
    pub decimals: usize,
}

impl ResultDocument {
    pub fn from_result(r: &ExpansionResult, conv: &ConvergentRequest) -> Self {
        let (preperiod, period) = match r.period() {
            Some((k0, l0)) => (Some(k0), Some(l0)),
            None => (None, None),
        };
        let mut error = None;
        let unit = match r.fundamental_unit() {
            Ok(g) if r.period().is_some() => {
                let rho_alpha = match r.epsilon0() {
                    Ok((a, b, d)) => Some(RhoDoc {
                        text: format!("{} + ({})*sqrt({})", a, b, d),
                        a: coeff_strings(a.coeffs()),
                        b: coeff_strings(b.coeffs()),
                        d: coeff_strings(d.coeffs()),
                    }),
                    Err(e) => {
                        error = Some(ErrorDoc { kind: error_kind(&e).into(), message: e.to_string() });
                        None
                    }
                };
                Some(UnitDoc {
                    matrix_z: coeff_strings(g.z.coeffs()),
                    matrix_w: coeff_strings(g.w.coeffs()),
                    word: g.word.as_ref().map(ToString::to_string),
                    rho_alpha,
                })
            }
            Ok(_) => None,
            Err(e) => {
                if r.period().is_some() {
                    error = Some(ErrorDoc { kind: error_kind(&e).into(), message: e.to_string() });
                }
                None
            }
        };
        if let Status::PrecisionExhausted(p) = r.status {
            error = Some(ErrorDoc {
                kind: "precision_exhausted".into(),
                message: format!("sign undecided at {p} bits after {} digits", r.digits.len()),
            });
        }
        let decimals = if conv.decimals == 0 { 20 } else { conv.decimals };
        let mut convergents = Vec::new();
        for &k in &conv.indices {
            let mut push = |kind: &str, p: Result<crate::geometry::BoundaryPoint>| {
                if let Ok(p) = p {
                    convergents.push(ConvergentDoc { k, kind: kind.into(), value: p.to_decimal(decimals) });
                }
            };
            push("reg", r.convergent_reg(k));
            if conv.traditional {
                push("trad", r.convergent_trad(k));
            }
        }
        let continued_fraction = match r.period() {
            Some((k0, l0)) if !r.digits.is_empty() => {
                let n = (k0 + 2 * l0).min(8).max(1);
                let ds: Vec<i8> = (1..=n).map(|m| r.digit(m).unwrap()).collect();
                nested_fraction(&ds).ok().map(|f| f.to_text())
            }
            _ => None,
        };
        ResultDocument {
            alpha: r.geodesic.alpha.to_string(),
            beta: r.geodesic.beta.to_string(),
            d: r.ctx.as_ref().map(|c| coeff_strings(c.d().coeffs())),
            b0_word: r.b0.word.as_ref().map(ToString::to_string),
            b0: Some(MatrixDoc::new(&r.b0)),
            digits: r.digits.clone(),
            status: status_name(&r.status).into(),
            exhausted_at_bits: match r.status {
                Status::PrecisionExhausted(p) => Some(p),
                _ => None,
            },
            preperiod,
            period,
            period_mode: r.mode.map(|m| match m {
                PeriodMode::Closed => "closed".into(),
                PeriodMode::BetaFree => "beta_free".into(),
            }),
            unit,
            continued_fraction,
            convergents,
            error,
        }
    }

    /// A document for a run that failed before producing digits.
    pub fn failure(alpha: &str, beta: &str, e: &Error) -> Self {
        ResultDocument {
            alpha: alpha.into(),
            beta: beta.into(),
            d: None,
            b0_word: None,
            b0: None,
            digits: Vec::new(),
            status: error_kind(e).into(),
            exhausted_at_bits: match e {
                Error::PrecisionExhausted(p) => Some(*p),
                _ => None,
            },
            preperiod: None,
            period: None,
            period_mode: None,
            unit: None,
            continued_fraction: None,
            convergents: Vec::new(),
            error: Some(ErrorDoc { kind: error_kind(e).into(), message: e.to_string() }),
        }
    }

    pub fn status(&self) -> Result<Status> {
        Ok(match self.status.as_str() {
            "periodic" => Status::Periodic {
                k0: self.preperiod.ok_or_else(|| Error::Parse("missing preperiod".into()))?,
                l0: self.period.ok_or_else(|| Error::Parse("missing period".into()))?,
            },
            "budget_exhausted" => Status::BudgetExhausted,
            "numeric_stream" => Status::NumericStream,
            "precision_exhausted" => Status::PrecisionExhausted(self.exhausted_at_bits.unwrap_or(0)),
            s => return Err(Error::Parse(format!("unknown status `{s}`"))),
        })
    }

    pub fn decode_unit(&self) -> Result<Option<(GroupElement, Option<(FElem, FElem, FElem)>)>> {
        let Some(u) = &self.unit else { return Ok(None) };
        let mut g = GroupElement::new(l_from_strings(&u.matrix_z)?, l_from_strings(&u.matrix_w)?);
        if let Some(w) = &u.word {
            g = g.with_word(Word::parse(w)?);
        }
        let rho = match &u.rho_alpha {
            Some(r) => Some((f_from_strings(&r.a)?, f_from_strings(&r.b)?, f_from_strings(&r.d)?)),
            None => None,
        };
        Ok(Some((g, rho)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub digit: i8,
    pub a: String,
    pub b: String,
    pub c: String,
    pub a_value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantCheck {
    pub name: String,
    pub pass: bool,
}

/// The table of `a_i, b_i, c_i` with the identities they satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsDocument {
    pub rows: Vec<ConstantRow>,
    pub checks: Vec<ConstantCheck>,
}

impl ConstantsDocument {
    pub fn compute() -> Self {
        use crate::geometry::{mobius, BoundaryPoint};
        use crate::group::{constants_table, digit_constants, digit_matrix, g7, QuatElem};
        use crate::order::in_order;
        use crate::tower::rat;

        let table = constants_table();
        let rows = table
            .iter()
            .map(|c| ConstantRow {
                digit: c.digit,
                a: c.a.to_string(),
                b: c.b.to_string(),
                c: c.c.to_string(),
                a_value: c.a.eval_interval(80).to_decimal(20),
            })
            .collect();
        let zero = BoundaryPoint::ExactL(LElem::zero());
        let all = |f: &dyn Fn(&crate::group::DigitConstants) -> bool| table.iter().all(f);
        let mut checks = Vec::new();
        let mut check = |name: &str, pass: bool| checks.push(ConstantCheck { name: name.into(), pass });
        check(
            "a_j = g7^j 0",
            all(&|c| mobius(&g7().pow(c.digit as i32), &zero).exact_eq(&BoundaryPoint::ExactL(c.a.clone())) == Some(true)),
        );
        check("-c_j = conj(a_j)", all(&|c| -&c.c == c.a.conj()));
        check(
            "-c_j = (g7^j g2)^-1 inf",
            all(&|c| {
                let m = digit_matrix(c.digit as i32).unwrap().inverse();
                mobius(&m, &BoundaryPoint::Infinity).exact_eq(&BoundaryPoint::ExactL(-&c.c)) == Some(true)
            }),
        );
        check(
            "a_-j = -a_j, b_-j = b_j, c_-j = -c_j",
            all(&|c| {
                let n = digit_constants(-(c.digit as i32)).unwrap();
                n.a == -&c.a && n.b == c.b && n.c == -&c.c
            }),
        );
        check(
            "b_j/4 unit",
            all(&|c| {
                let Some(u) = c.b.scale(&rat(1, 4)).to_f() else { return false };
                let Ok(ui) = u.inv() else { return false };
                let scalar = |f: &FElem| QuatElem::new([f.clone(), FElem::zero(), FElem::zero(), FElem::zero()]);
                in_order(&scalar(&u)) && in_order(&scalar(&ui))
            }),
        );
        let sq = |d: i32| {
            let a = digit_constants(d).unwrap().a;
            &a * &a
        };
        let eta = LElem::eta();
        check(
            "|a_1| < |a_2| < theta < |a_3|",
            (&sq(2) - &sq(1)).sign() > 0 && (&eta - &sq(2)).sign() > 0 && (&sq(3) - &eta).sign() > 0,
        );
        ConstantsDocument { rows, checks }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{expand, from_quadratic, ExpandOptions, QuadraticInput};

    #[test]
    fn constants_checks_pass() {
        let d = ConstantsDocument::compute();
        assert_eq!(d.rows.len(), 6);
        assert!(d.all_pass(), "{:?}", d.checks);
        assert_eq!(d.rows[0].a, "-eta + eta^2 + (1 - eta^2)*theta");
    }

    #[test]
    fn json_round_trip() {
        let q = from_quadratic(&QuadraticInput { z: LElem::from_ints([0, 1, 0, 0, 0, -1]), w: LElem::one(), sign: 1 }).unwrap();
        let r = expand(&q.geodesic, Some(q.ctx), None, &ExpandOptions::default()).unwrap();
        let conv = ConvergentRequest { indices: vec![0, 3], traditional: true, decimals: 12 };
        let doc = ResultDocument::from_result(&r, &conv);
        let back = ResultDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.b0.as_ref().unwrap().decode().unwrap(), r.b0);
        assert_eq!(back.status().unwrap(), r.status);
        let (g, rho) = back.decode_unit().unwrap().unwrap();
        assert_eq!(g, r.fundamental_unit().unwrap());
        assert_eq!(rho.unwrap(), r.epsilon0().unwrap());
        assert_eq!(doc.convergents.len(), 4);
    }
}
