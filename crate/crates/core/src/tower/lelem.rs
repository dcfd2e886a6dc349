use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::felem::forward_owned;
use super::{horner, int, mul_reduce, refine, FElem, Rat};
use crate::error::{Error, Result};
use crate::numerics::{resolve_sign, theta_enclosure, IntervalReal};

const THETA_REL: [i64; 6] = [1, 0, 2, 0, -1, 0];

/// An element `Σ cᵢ θⁱ` of L, `i < 6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LElem {
    c: [Rat; 6],
}

impl LElem {
    pub fn new(c: [Rat; 6]) -> Self {
        LElem { c }
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        LElem { c: c.map(int) }
    }

    pub fn from_rat(q: Rat) -> Self {
        FElem::from_rat(q).to_l()
    }

    pub fn from_int(n: i64) -> Self {
        LElem::from_rat(int(n))
    }

    pub fn zero() -> Self {
        LElem::from_int(0)
    }

    pub fn one() -> Self {
        LElem::from_int(1)
    }

    pub fn theta() -> Self {
        LElem::from_ints([0, 1, 0, 0, 0, 0])
    }

    pub fn eta() -> Self {
        FElem::eta().to_l()
    }

    pub fn coeffs(&self) -> &[Rat; 6] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// `x = e + θ o` with `e, o ∈ F`.
    pub fn split(&self) -> (FElem, FElem) {
        let c = &self.c;
        (
            FElem::new([c[0].clone(), c[2].clone(), c[4].clone()]),
            FElem::new([c[1].clone(), c[3].clone(), c[5].clone()]),
        )
    }

    pub fn from_parts(e: &FElem, o: &FElem) -> Self {
        let (e, o) = (e.coeffs(), o.coeffs());
        LElem::new([
            e[0].clone(),
            o[0].clone(),
            e[1].clone(),
            o[1].clone(),
            e[2].clone(),
            o[2].clone(),
        ])
    }

    /// The even part as an element of F, if the odd part vanishes.
    pub fn to_f(&self) -> Option<FElem> {
        let (e, o) = self.split();
        o.is_zero().then_some(e)
    }

    /// Nontrivial automorphism of L/F: θ ↦ −θ.
    pub fn conj(&self) -> Self {
        let mut c = self.c.clone();
        for k in [1, 3, 5] {
            c[k] = -&c[k];
        }
        LElem { c }
    }

    /// Relative norm `x · conj(x)` to F.
    pub fn norm(&self) -> FElem {
        (self * &self.conj()).to_f().expect("relative norm lies in F")
    }

    pub fn scale(&self, q: &Rat) -> Self {
        LElem { c: self.c.clone().map(|x| x * q) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.conj() * &self.norm().inv()?.to_l())
    }

    pub fn div(&self, o: &LElem) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LElem::one(), |acc, _| &acc * self)
    }

    /// Enclosure of width at most `2^-prec`.
    pub fn eval_interval(&self, prec: u32) -> IntervalReal {
        refine(prec, |wp| Some(self.eval_at(wp)))
    }

    pub(crate) fn eval_at(&self, wp: u32) -> IntervalReal {
        horner(&self.c, &theta_enclosure(wp))
    }

    pub fn to_f64(&self) -> f64 {
        self.eval_at(64).to_f64()
    }

    pub fn sign(&self) -> i8 {
        resolve_sign(Some(self.is_zero()), None, |p| Some(self.eval_at(p))).expect("exact sign terminates")
    }
}

impl From<FElem> for LElem {
    fn from(f: FElem) -> Self {
        f.to_l()
    }
}

impl Add for &LElem {
    type Output = LElem;
    fn add(self, o: &LElem) -> LElem {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&o.c) {
            *x += y;
        }
        LElem { c }
    }
}

impl Sub for &LElem {
    type Output = LElem;
    fn sub(self, o: &LElem) -> LElem {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&o.c) {
            *x -= y;
        }
        LElem { c }
    }
}

impl Mul for &LElem {
    type Output = LElem;
    fn mul(self, o: &LElem) -> LElem {
        let v = mul_reduce(&self.c, &o.c, &THETA_REL);
        LElem { c: v.try_into().unwrap() }
    }
}

impl Neg for &LElem {
    type Output = LElem;
    fn neg(self) -> LElem {
        LElem { c: self.c.clone().map(|x| -x) }
    }
}

forward_owned!(LElem, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_relation() {
        let t = LElem::theta();
        let lhs = t.pow(6) + t.pow(4) - t.pow(2) * LElem::from_int(2);
        assert_eq!(lhs, LElem::one());
        assert_eq!(t.pow(2), LElem::eta());
    }

    #[test]
    fn theta_inverse() {
        let expect = LElem::from_ints([0, -2, 0, 1, 0, 1]);
        assert_eq!(LElem::theta().inv().unwrap(), expect);
    }

    #[test]
    fn conj_and_norm() {
        let x = LElem::from_ints([1, 2, 0, -1, 3, 1]);
        assert_eq!(x.conj().conj(), x);
        let n = x.norm();
        assert_eq!(n.to_l(), &x * &x.conj());
    }
}
