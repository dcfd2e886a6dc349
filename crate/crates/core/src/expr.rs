//! Expression grammar shared by the printer and the command line.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | decimal | eta | theta | e | pi | sqrtD
//!         | sqrt '(' expr ')' | '(' expr ')'
//! ```
//!
//! `e`, `pi` and decimal literals make an expression numeric. `sqrt(x)`
//! needs `x ∈ F` and at most one radicand per expression.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::NumExpr;
use crate::tower::{FElem, LElem, QuadCtx, QuadRealElem, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Decimal(Rat),
    Eta,
    Theta,
    E,
    Pi,
    SqrtD,
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal(Rat),
    Ident(String),
    Op(char),
}

fn err(pos: usize, msg: &str) -> Error {
    Error::Parse(format!("at {pos}: {msg}"))
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            if i < cs.len() && cs[i] == '.' {
                i += 1;
                let frac_start = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let int_part: String = cs[start..frac_start - 1].iter().collect();
                let frac: String = cs[frac_start..i].iter().collect();
                if int_part.is_empty() && frac.is_empty() {
                    return Err(err(start, "lone '.'"));
                }
                let digits: BigInt = format!("0{int_part}{frac}").parse().unwrap();
                let den = num_traits::pow(BigInt::from(10), frac.len());
                out.push((start, Tok::Decimal(Rat::new(digits, den))));
            } else {
                let t: String = cs[start..i].iter().collect();
                out.push((start, Tok::Int(t.parse().unwrap())));
            }
        } else if c.is_alphabetic() {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(cs[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(i, &format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.here(), &format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let n: i32 = n.try_into().map_err(|_| err(at, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
            }
            _ => Err(err(at, "expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        let Some(t) = self.peek().cloned() else {
            return Err(err(at, "unexpected end of input"));
        };
        self.pos += 1;
        match t {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Decimal(q) => Ok(Expr::Decimal(q)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op(c) => Err(err(at, &format!("unexpected '{c}'"))),
            Tok::Ident(id) => match id.as_str() {
                "eta" | "η" => Ok(Expr::Eta),
                "theta" | "θ" => Ok(Expr::Theta),
                "e" => Ok(Expr::E),
                "pi" | "π" => Ok(Expr::Pi),
                "sqrtD" => Ok(Expr::SqrtD),
                "sqrt" => {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Sqrt(Box::new(e)))
                }
                _ => Err(err(at, &format!("unknown identifier '{id}'"))),
            },
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end: s.chars().count() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(e)
}

/// An exactly evaluated expression.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValue {
    L(LElem),
    Quad(QuadRealElem),
}

impl Expr {
    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Sqrt(a) | Expr::Neg(a) | Expr::Pow(a, _) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    fn any(&self, f: &impl Fn(&Expr) -> bool) -> bool {
        f(self) || self.children().into_iter().any(|c| c.any(f))
    }

    /// Contains `e`, `pi` or a decimal literal.
    pub fn is_numeric(&self) -> bool {
        self.any(&|e| matches!(e, Expr::E | Expr::Pi | Expr::Decimal(_)))
    }

    pub fn has_radical(&self) -> bool {
        self.any(&|e| matches!(e, Expr::SqrtD | Expr::Sqrt(_)))
    }

    /// Evaluate in L; radicals and numeric constants are rejected.
    pub fn to_l(&self) -> Result<LElem> {
        Ok(match self {
            Expr::Int(n) => LElem::from_rat(Rat::from_integer(n.clone())),
            Expr::Eta => LElem::eta(),
            Expr::Theta => LElem::theta(),
            Expr::Decimal(_) | Expr::E | Expr::Pi => return Err(Error::Invalid("numeric constant in exact expression".into())),
            Expr::SqrtD | Expr::Sqrt(_) => return Err(Error::Invalid("radical in an element of L".into())),
            Expr::Neg(a) => -&a.to_l()?,
            Expr::Add(a, b) => &a.to_l()? + &b.to_l()?,
            Expr::Sub(a, b) => &a.to_l()? - &b.to_l()?,
            Expr::Mul(a, b) => &a.to_l()? * &b.to_l()?,
            Expr::Div(a, b) => a.to_l()?.div(&b.to_l()?)?,
            Expr::Pow(a, n) => {
                let x = a.to_l()?;
                let x = if *n < 0 { x.inv()? } else { x };
                x.pow(n.unsigned_abs())
            }
        })
    }

    pub fn to_f(&self) -> Result<FElem> {
        self.to_l()?.to_f().ok_or_else(|| Error::Invalid("expected an element of F".into()))
    }

    fn radicand(&self, ctx: Option<&Arc<QuadCtx>>) -> Result<Option<FElem>> {
        let mut d: Option<FElem> = ctx.map(|c| c.d().clone());
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                Expr::SqrtD if ctx.is_none() => return Err(Error::Invalid("sqrtD without a discriminant".into())),
                Expr::Sqrt(inner) => {
                    let x = inner.to_f()?;
                    match &d {
                        Some(prev) if *prev != x => return Err(Error::ContextMismatch),
                        _ => d = Some(x),
                    }
                }
                _ => stack.extend(e.children()),
            }
        }
        Ok(d)
    }

    fn to_quad_in(&self, ctx: &Arc<QuadCtx>) -> Result<QuadRealElem> {
        Ok(match self {
            Expr::SqrtD | Expr::Sqrt(_) => QuadRealElem::sqrt_d(ctx),
            Expr::Neg(a) => -a.to_quad_in(ctx)?,
            Expr::Add(a, b) => a.to_quad_in(ctx)?.checked_add(&b.to_quad_in(ctx)?)?,
            Expr::Sub(a, b) => a.to_quad_in(ctx)?.checked_sub(&b.to_quad_in(ctx)?)?,
            Expr::Mul(a, b) => a.to_quad_in(ctx)?.checked_mul(&b.to_quad_in(ctx)?)?,
            Expr::Div(a, b) => a.to_quad_in(ctx)?.checked_div(&b.to_quad_in(ctx)?)?,
            Expr::Pow(a, n) => {
                let x = a.to_quad_in(ctx)?;
                let x = if *n < 0 { x.inv()? } else { x };
                let mut acc = QuadRealElem::from_l(ctx, LElem::one());
                for _ in 0..n.unsigned_abs() {
                    acc = acc.checked_mul(&x)?;
                }
                acc
            }
            e => QuadRealElem::from_l(ctx, e.to_l()?),
        })
    }

    /// Exact value; `sqrtD` refers to `ctx`, `sqrt(x)` opens a context for `x`.
    pub fn to_exact(&self, ctx: Option<&Arc<QuadCtx>>) -> Result<ExactValue> {
        if self.is_numeric() {
            return Err(Error::Invalid("numeric constant in exact expression".into()));
        }
        match self.radicand(ctx)? {
            None => Ok(ExactValue::L(self.to_l()?)),
            Some(d) => {
                let ctx = match ctx {
                    Some(c) => c.clone(),
                    None => QuadCtx::new(d)?,
                };
                Ok(ExactValue::Quad(self.to_quad_in(&ctx)?))
            }
        }
    }

    pub fn to_num(&self) -> Result<NumExpr> {
        let b = |e: &Expr| e.to_num().map(Box::new);
        Ok(match self {
            Expr::Int(n) => NumExpr::Rat(Rat::from_integer(n.clone())),
            Expr::Decimal(q) => NumExpr::Rat(q.clone()),
            Expr::Eta => NumExpr::Eta,
            Expr::Theta => NumExpr::Theta,
            Expr::E => NumExpr::E,
            Expr::Pi => NumExpr::Pi,
            Expr::SqrtD => return Err(Error::Invalid("sqrtD in numeric expression".into())),
            Expr::Sqrt(a) => NumExpr::Sqrt(b(a)?),
            Expr::Neg(a) => NumExpr::Neg(b(a)?),
            Expr::Add(x, y) => NumExpr::Add(b(x)?, b(y)?),
            Expr::Sub(x, y) => NumExpr::Sub(b(x)?, b(y)?),
            Expr::Mul(x, y) => NumExpr::Mul(b(x)?, b(y)?),
            Expr::Div(x, y) => NumExpr::Div(b(x)?, b(y)?),
            Expr::Pow(a, n) => NumExpr::Pow(b(a)?, *n),
        })
    }
}

pub fn parse_l(s: &str) -> Result<LElem> {
    parse(s)?.to_l()
}

pub fn parse_f(s: &str) -> Result<FElem> {
    parse(s)?.to_f()
}
