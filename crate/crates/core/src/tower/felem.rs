use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{horner, int, mul_reduce, refine, solve, LElem, Rat};
use crate::error::{Error, Result};
use crate::numerics::{eta_enclosure, resolve_sign, IntervalReal};

const ETA_REL: [i64; 3] = [1, 2, -1];

/// An element `c0 + c1 η + c2 η²` of F.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FElem {
    c: [Rat; 3],
}

impl FElem {
    pub fn new(c: [Rat; 3]) -> Self {
        FElem { c }
    }

    pub fn from_ints(c: [i64; 3]) -> Self {
        FElem { c: c.map(int) }
    }

    pub fn from_rat(q: Rat) -> Self {
        FElem { c: [q, Rat::zero(), Rat::zero()] }
    }

    pub fn from_int(n: i64) -> Self {
        FElem::from_rat(int(n))
    }

    pub fn zero() -> Self {
        FElem::from_int(0)
    }

    pub fn one() -> Self {
        FElem::from_int(1)
    }

    pub fn eta() -> Self {
        FElem::from_ints([0, 1, 0])
    }

    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && self.c[2].is_zero()
    }

    /// Coefficients are integers, i.e. the element lies in Z[η].
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|q| q.is_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero()
    }

    pub fn scale(&self, q: &Rat) -> Self {
        FElem { c: [&self.c[0] * q, &self.c[1] * q, &self.c[2] * q] }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Columns of the multiplication-by-self matrix are self * η^j.
        let cols: Vec<FElem> = (0..3).map(|j| self * &FElem::eta().pow(j)).collect();
        let m = (0..3).map(|i| (0..3).map(|j| cols[j].c[i].clone()).collect()).collect();
        let x = solve(m, vec![int(1), int(0), int(0)]).ok_or(Error::DivisionByZero)?;
        Ok(FElem { c: [x[0].clone(), x[1].clone(), x[2].clone()] })
    }

    pub fn div(&self, o: &FElem) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(FElem::one(), |acc, _| &acc * self)
    }

    /// Embedding η ↦ θ².
    pub fn to_l(&self) -> LElem {
        let z = Rat::zero;
        LElem::new([self.c[0].clone(), z(), self.c[1].clone(), z(), self.c[2].clone(), z()])
    }

    /// Enclosure of width at most `2^-prec`.
    pub fn eval_interval(&self, prec: u32) -> IntervalReal {
        refine(prec, |wp| Some(self.eval_at(wp)))
    }

    pub(crate) fn eval_at(&self, wp: u32) -> IntervalReal {
        horner(&self.c, &eta_enclosure(wp))
    }

    pub fn to_f64(&self) -> f64 {
        self.eval_at(64).to_f64()
    }

    pub fn sign(&self) -> i8 {
        resolve_sign(Some(self.is_zero()), None, |p| Some(self.eval_at(p))).expect("exact sign terminates")
    }
}

impl Add for &FElem {
    type Output = FElem;
    fn add(self, o: &FElem) -> FElem {
        FElem { c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2]] }
    }
}

impl Sub for &FElem {
    type Output = FElem;
    fn sub(self, o: &FElem) -> FElem {
        FElem { c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2]] }
    }
}

impl Mul for &FElem {
    type Output = FElem;
    fn mul(self, o: &FElem) -> FElem {
        let v = mul_reduce(&self.c, &o.c, &ETA_REL);
        let [a, b, c]: [Rat; 3] = v.try_into().unwrap();
        FElem { c: [a, b, c] }
    }
}

impl Neg for &FElem {
    type Output = FElem;
    fn neg(self) -> FElem {
        FElem { c: [-&self.c[0], -&self.c[1], -&self.c[2]] }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { (&self).$m(o) }
        }
    )*
    impl Neg for $t {
        type Output = $t;
        fn neg(self) -> $t { -&self }
    }
    };
}
pub(crate) use forward_owned;

forward_owned!(FElem, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_relation() {
        let e = FElem::eta();
        let lhs = &(&e.pow(3) + &e.pow(2)) - &(&e * &FElem::from_int(2));
        assert_eq!(lhs, FElem::one());
    }

    #[test]
    fn eta_inverse() {
        let inv = FElem::eta().inv().unwrap();
        assert_eq!(inv, FElem::from_ints([-2, 1, 1]));
        assert_eq!(FElem::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sign_and_value() {
        assert_eq!(FElem::eta().sign(), 1);
        let x = FElem::from_ints([0, 1, 0]) - FElem::from_int(2);
        assert_eq!(x.sign(), -1);
        assert!((FElem::eta().to_f64() - 1.246_979_603_717_467).abs() < 1e-14);
    }
}
