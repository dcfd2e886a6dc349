use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{FElem, LElem, QuadRealElem, Rat};

fn monomial(var: &str, d: usize) -> String {
    match d {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{d}"),
    }
}

fn term(c: &Rat, mono: &str) -> String {
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        mono.to_string()
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

fn join(terms: &[String]) -> String {
    let mut s = String::new();
    for t in terms {
        if s.is_empty() {
            s.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(t);
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn poly_terms(c: &[Rat], var: &str) -> Vec<String> {
    c.iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(d, q)| term(q, &monomial(var, d)))
        .collect()
}

/// `coef * sym`, where `coef` is already rendered.
fn times(coef: &str, sym: &str) -> String {
    if coef == "1" {
        sym.to_string()
    } else if coef == "-1" {
        format!("-{sym}")
    } else if coef.contains(' ') {
        format!("({coef})*{sym}")
    } else {
        format!("{coef}*{sym}")
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&poly_terms(self.coeffs(), "eta")))
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (e, o) = self.split();
        let mut terms = poly_terms(e.coeffs(), "eta");
        if !o.is_zero() {
            terms.push(times(&o.to_string(), "theta"));
        }
        f.write_str(&join(&terms))
    }
}

impl fmt::Display for QuadRealElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.u().is_zero() {
            terms.push(self.u().to_string());
        }
        if !self.v().is_zero() {
            terms.push(times(&self.v().to_string(), "sqrtD"));
        }
        let s = join(&terms);
        f.write_str(&s)
    }
}

/// LaTeX rendering of an element of L with `\sqrt{\eta}` for θ.
pub fn latex_l(x: &LElem) -> String {
    let (e, o) = x.split();
    let lat = |p: &FElem| -> Vec<String> {
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(d, q)| {
                let mono = match d {
                    0 => String::new(),
                    1 => "\\eta".into(),
                    _ => format!("\\eta^{{{d}}}"),
                };
                let c = if q.is_integer() {
                    q.to_string()
                } else {
                    let sign = if q.is_negative() { "-" } else { "" };
                    format!("{sign}\\tfrac{{{}}}{{{}}}", q.numer().abs(), q.denom())
                };
                if mono.is_empty() {
                    c
                } else if q.is_one() {
                    mono
                } else if (-q).is_one() {
                    format!("-{mono}")
                } else {
                    format!("{c}{mono}")
                }
            })
            .collect()
    };
    let mut terms = lat(&e);
    if !o.is_zero() {
        let inner = join(&lat(&o));
        let t = if inner == "1" {
            "\\sqrt{\\eta}".to_string()
        } else if inner == "-1" {
            "-\\sqrt{\\eta}".to_string()
        } else if inner.contains(' ') {
            format!("({inner})\\sqrt{{\\eta}}")
        } else {
            format!("{inner}\\sqrt{{\\eta}}")
        };
        terms.push(t);
    }
    join(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{QuadCtx, QuadRealElem};

    #[test]
    fn printing() {
        assert_eq!(FElem::from_ints([1, 0, -1]).to_string(), "1 - eta^2");
        assert_eq!(FElem::zero().to_string(), "0");
        let x = LElem::from_ints([0, 1, -1, 0, 1, -1]);
        assert_eq!(x.to_string(), "-eta + eta^2 + (1 - eta^2)*theta");
        assert_eq!(LElem::theta().to_string(), "theta");
        assert_eq!((-LElem::theta()).to_string(), "-theta");
        let ctx = QuadCtx::new(FElem::from_ints([-3, 2, 1])).unwrap();
        let q = QuadRealElem::new(&ctx, LElem::from_ints([0, 1, 0, 0, 0, -1]), LElem::one());
        assert_eq!(q.to_string(), "(1 - eta^2)*theta + sqrtD");
        assert_eq!(latex_l(&x), "-\\eta + \\eta^{2} + (1 - \\eta^{2})\\sqrt{\\eta}");
    }
}
