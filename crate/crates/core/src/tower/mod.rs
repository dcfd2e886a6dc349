//! Exact arithmetic in F = Q(η) ⊂ L = Q(θ) ⊂ L(√D).
//!
//! η is the real root of X³ + X² − 2X − 1 near 1.247 and θ = √η. Elements are
//! stored as coefficient vectors in the power bases `1, η, η²` and
//! `1, θ, …, θ⁵`.

mod felem;
mod lelem;
pub mod print;
mod quad;

pub use felem::FElem;
pub use lelem::LElem;
pub use quad::{QuadCtx, QuadRealElem};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::numerics::IntervalReal;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Multiply two coefficient vectors of length `n` modulo the monic relation
/// `x^n = Σ rel[i] x^i`.
fn mul_reduce(a: &[Rat], b: &[Rat], rel: &[i64]) -> Vec<Rat> {
    let n = rel.len();
    let mut c = vec![Rat::zero(); 2 * n - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            c[i + j] += x * y;
        }
    }
    for d in (n..2 * n - 1).rev() {
        let t = std::mem::take(&mut c[d]);
        if t.is_zero() {
            continue;
        }
        for (i, &r) in rel.iter().enumerate() {
            if r != 0 {
                c[d - n + i] += &t * BigInt::from(r);
            }
        }
    }
    c.truncate(n);
    c
}

/// Solve `m x = rhs` over Q; `None` if `m` is singular.
fn solve(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].recip();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for k in col..n {
                let t = &f * &m[col][k];
                m[r][k] -= t;
            }
            let t = &f * &rhs[col];
            rhs[r] -= t;
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Tighten working precision until the enclosure has width at most `2^-prec`.
fn refine(prec: u32, mut f: impl FnMut(u32) -> Option<IntervalReal>) -> IntervalReal {
    let mut wp = prec + 16;
    loop {
        if let Some(iv) = f(wp) {
            if iv.width_at_most(prec) {
                return iv.with_precision(prec);
            }
        }
        wp *= 2;
    }
}

/// Horner evaluation of an ascending coefficient vector at an enclosure.
fn horner(coeffs: &[Rat], x: &IntervalReal) -> IntervalReal {
    let p = x.precision;
    let mut acc = IntervalReal::from_int(0, p);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x);
        if !c.is_zero() {
            acc = acc.add(&IntervalReal::from_rational(c, p));
        }
    }
    acc
}
