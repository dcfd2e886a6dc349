//! Certified real arithmetic on dyadic intervals.
//!
//! Every [`IntervalReal`] is a closed interval `[lo, hi]` whose endpoints are
//! dyadic rationals `m * 2^e`. Operations round outward, so the true value of
//! any expression built from enclosures stays inside the computed enclosure.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_PRECISION: u32 = 4096;
pub const START_PRECISION: u32 = 64;
pub const PRECISION_ENV: &str = "TRIANGLE_CF_MAX_PRECISION";

/// Ceiling for numeric-mode sign resolution, honouring the environment override.
pub fn default_max_precision() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&p| p >= START_PRECISION)
        .unwrap_or(DEFAULT_MAX_PRECISION)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// `man * 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        Dyadic { man, exp }.normalized()
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    fn normalized(mut self) -> Self {
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn add(&self, o: &Dyadic) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << ((self.exp - e) as usize);
        let b = &o.man << ((o.exp - e) as usize);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Self {
        Dyadic::new(&self.man * &o.man, self.exp + o.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, mode: Rounding) -> Self {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let floor = &self.man >> shift;
        let man = match mode {
            Rounding::Down => floor,
            Rounding::Up => {
                if (&floor << shift) == self.man {
                    floor
                } else {
                    floor + 1
                }
            }
        };
        Dyadic::new(man, self.exp + shift as i64)
    }

    pub fn div(&self, o: &Dyadic, prec: u32, mode: Rounding) -> Self {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + o.man.bits() as i64 - self.man.bits() as i64 + 2).max(0);
        let num = &self.man << (k as usize);
        let q = match mode {
            Rounding::Down => num.div_floor(&o.man),
            Rounding::Up => -((-num).div_floor(&o.man)),
        };
        Dyadic::new(q, self.exp - o.exp - k).round(prec, mode)
    }

    pub fn sqrt(&self, prec: u32, mode: Rounding) -> Self {
        assert!(self.signum() >= 0, "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let bits = self.man.bits() as i64;
        let mut s = (2 * prec as i64 + 4 - bits).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.man << (s as usize);
        let mut r = m.sqrt();
        if mode == Rounding::Up && &r * &r != m {
            r += 1;
        }
        Dyadic::new(r, (self.exp - s) / 2).round(prec, mode)
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, mode: Rounding) -> Self {
        Dyadic::new(num.clone(), 0).div(&Dyadic::new(den.clone(), 0), prec, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << (self.exp as usize))
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man >> (shift as usize)).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        let e = e.clamp(-2000, 2000) as i32;
        top * 2f64.powi(e)
    }

    /// Floor of log2 of the absolute value (for nonzero values).
    pub fn log2_floor(&self) -> i64 {
        self.man.bits() as i64 - 1 + self.exp
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }
}

/// A closed interval with dyadic endpoints, tagged with the working precision
/// used for subsequent operations.
#[derive(Clone, Debug)]
pub struct IntervalReal {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub precision: u32,
}

impl IntervalReal {
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u32) -> Self {
        debug_assert!(lo <= hi);
        IntervalReal { lo, hi, precision }
    }

    pub fn point(d: Dyadic, precision: u32) -> Self {
        IntervalReal { lo: d.clone(), hi: d, precision }
    }

    pub fn from_int(n: i64, precision: u32) -> Self {
        IntervalReal::point(Dyadic::from_int(n), precision)
    }

    pub fn from_rational(q: &BigRational, precision: u32) -> Self {
        if q.denom().is_one() {
            return IntervalReal::point(Dyadic::new(q.numer().clone(), 0), precision);
        }
        let lo = Dyadic::from_ratio(q.numer(), q.denom(), precision, Rounding::Down);
        let hi = Dyadic::from_ratio(q.numer(), q.denom(), precision, Rounding::Up);
        IntervalReal { lo, hi, precision }
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        IntervalReal { precision, ..self.clone() }
    }

    fn p(&self, o: &IntervalReal) -> u32 {
        self.precision.max(o.precision)
    }

    pub fn add(&self, o: &IntervalReal) -> Self {
        let p = self.p(o);
        IntervalReal {
            lo: self.lo.add(&o.lo).round(p, Rounding::Down),
            hi: self.hi.add(&o.hi).round(p, Rounding::Up),
            precision: p,
        }
    }

    pub fn neg(&self) -> Self {
        IntervalReal { lo: self.hi.neg(), hi: self.lo.neg(), precision: self.precision }
    }

    pub fn sub(&self, o: &IntervalReal) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntervalReal) -> Self {
        let p = self.p(o);
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min().unwrap().round(p, Rounding::Down);
        let hi = c.iter().max().unwrap().round(p, Rounding::Up);
        IntervalReal { lo, hi, precision: p }
    }

    pub fn square(&self) -> Self {
        let m = self.mul(self);
        if self.contains_zero() {
            IntervalReal { lo: Dyadic::zero(), ..m }
        } else {
            m
        }
    }

    /// `None` when the divisor straddles zero.
    pub fn div(&self, o: &IntervalReal) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let p = self.p(o);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let d = a.div(b, p, Rounding::Down);
                let u = a.div(b, p, Rounding::Up);
                lo = Some(match lo {
                    Some(x) if x <= d => x,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(x) if x >= u => x,
                    _ => u,
                });
            }
        }
        Some(IntervalReal { lo: lo.unwrap(), hi: hi.unwrap(), precision: p })
    }

    pub fn recip(&self) -> Option<Self> {
        IntervalReal::from_int(1, self.precision).div(self)
    }

    /// `None` when the interval is entirely negative.
    pub fn sqrt(&self) -> Option<Self> {
        if self.hi.signum() < 0 {
            return None;
        }
        let p = self.precision;
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(p, Rounding::Down)
        };
        Some(IntervalReal { lo, hi: self.hi.sqrt(p, Rounding::Up), precision: p })
    }

    pub fn powi(&self, n: i32) -> Option<Self> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut acc = IntervalReal::from_int(1, self.precision);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        Some(acc)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    /// Sign of every member, if uniform and nonzero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// True when `hi - lo <= 2^-bits`.
    pub fn width_at_most(&self, bits: u32) -> bool {
        let w = self.width();
        w.is_zero() || w.log2_floor() < -(bits as i64)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Decimal midpoint with an explicit error bound, e.g. `2.71828 ± 1e-5`.
    pub fn to_decimal(&self, max_digits: usize) -> String {
        let half = self.width().mul_pow2(-1).to_rational();
        let mut digits = max_digits;
        loop {
            let unit = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits));
            if half <= unit.clone() / BigInt::from(2) || digits == 0 {
                break;
            }
            digits -= 1;
        }
        let m = self.mid().to_rational();
        format!("{} ± 1e-{}", rational_to_decimal(&m, digits), digits)
    }
}

/// Round a rational to `digits` fractional decimal places (nearest).
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let num: BigInt = q.numer() * &scale * 2 + q.denom();
    let den: BigInt = q.denom() * 2;
    let r = num.div_floor(&den);
    let neg = r.is_negative();
    let s = r.abs().to_string();
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (ip, fp) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// Certified sign: consult the exact-zero oracle, then refine enclosures by
/// doubling precision from 64 bits. `max_precision = None` means unbounded,
/// which is only sound for values known to be nonzero.
pub fn resolve_sign<F>(exact_zero: Option<bool>, max_precision: Option<u32>, mut enclose: F) -> Result<i8>
where
    F: FnMut(u32) -> Option<IntervalReal>,
{
    if exact_zero == Some(true) {
        return Ok(0);
    }
    let mut p = START_PRECISION;
    loop {
        if let Some(iv) = enclose(p) {
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
        }
        match max_precision {
            Some(m) if p >= m => return Err(Error::PrecisionExhausted(m)),
            Some(m) => p = (2 * p).min(m),
            None => p *= 2,
        }
    }
}

fn integer_poly(coeffs: &[BigRational]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// Sign of `P(m * 2^e)` for an integer polynomial, computed exactly.
fn poly_sign_at(p: &[BigInt], x: &Dyadic) -> i8 {
    let n = p.len() - 1;
    let (m, e) = (x.mantissa(), x.exponent());
    // Scale by 2^(-e n) when e < 0 so everything stays integral.
    let mut acc = BigInt::zero();
    let mut mpow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        let mut t = c * &mpow;
        if e >= 0 {
            t <<= (e as usize) * i;
        } else {
            t <<= ((-e) as usize) * (n - i);
        }
        acc += t;
        mpow *= m;
    }
    match acc.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Isolate the unique root of `coeffs` (ascending) in `[lo, hi]` by bisection
/// until the enclosure has width at most `2^-prec`.
pub fn isolate_root(coeffs: &[BigRational], lo: &BigRational, hi: &BigRational, prec: u32) -> Result<IntervalReal> {
    let p = integer_poly(coeffs);
    let wp = prec + 16;
    let mut a = IntervalReal::from_rational(lo, wp).lo;
    let mut b = IntervalReal::from_rational(hi, wp).hi;
    let sa = poly_sign_at(&p, &a);
    let sb = poly_sign_at(&p, &b);
    if sa == 0 {
        return Ok(IntervalReal::point(a, prec));
    }
    if sb == 0 {
        return Ok(IntervalReal::point(b, prec));
    }
    if sa == sb {
        return Err(Error::NoSignChange);
    }
    loop {
        let iv = IntervalReal::new(a.clone(), b.clone(), prec);
        if iv.width_at_most(prec) {
            return Ok(iv);
        }
        let m = iv.mid();
        let sm = poly_sign_at(&p, &m);
        if sm == 0 {
            return Ok(IntervalReal::point(m, prec));
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Minimal polynomial of θ = √η, ascending: X⁶ + X⁴ − 2X² − 1.
pub fn theta_min_poly() -> Vec<BigRational> {
    [-1, 0, -2, 0, 1, 0, 1].iter().map(|&c| rat(c, 1)).collect()
}

/// Minimal polynomial of η, ascending: X³ + X² − 2X − 1.
pub fn eta_min_poly() -> Vec<BigRational> {
    [-1, -2, 1, 1].iter().map(|&c| rat(c, 1)).collect()
}

type Cache = Mutex<HashMap<u32, IntervalReal>>;

fn cached(cache: &'static OnceLock<Cache>, prec: u32, make: impl FnOnce(u32) -> IntervalReal) -> IntervalReal {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = make(prec);
    map.lock().unwrap().insert(prec, v.clone());
    v
}

/// Enclosure of θ of width at most `2^-prec`.
pub fn theta_enclosure(prec: u32) -> IntervalReal {
    static C: OnceLock<Cache> = OnceLock::new();
    cached(&C, prec, |p| {
        isolate_root(&theta_min_poly(), &rat(11, 10), &rat(12, 10), p + 4)
            .expect("θ is isolated in [1.1, 1.2]")
            .with_precision(p)
    })
}

/// Enclosure of η of width at most `2^-prec`.
pub fn eta_enclosure(prec: u32) -> IntervalReal {
    static C: OnceLock<Cache> = OnceLock::new();
    cached(&C, prec, |p| {
        isolate_root(&eta_min_poly(), &rat(124, 100), &rat(125, 100), p + 4)
            .expect("η is isolated in [1.24, 1.25]")
            .with_precision(p)
    })
}

fn factorial_series_e(prec: u32) -> IntervalReal {
    // e = Σ 1/k!, tail after term N bounded by 2/(N+1)!.
    let target = BigInt::one() << (prec as usize + 8);
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    let mut k = 0u64;
    loop {
        sum += BigRational::new(BigInt::one(), fact.clone());
        k += 1;
        fact *= k;
        if fact > target {
            break;
        }
    }
    let tail = BigRational::new(BigInt::from(2), fact);
    let lo = IntervalReal::from_rational(&sum, prec + 8).lo;
    let hi = IntervalReal::from_rational(&(sum + tail), prec + 8).hi;
    IntervalReal::new(lo, hi, prec)
}

/// Enclosure of e of width at most about `2^-prec`.
pub fn e_enclosure(prec: u32) -> IntervalReal {
    static C: OnceLock<Cache> = OnceLock::new();
    cached(&C, prec, factorial_series_e)
}

/// Alternating series for atan(1/x): returns bracketing partial sums.
fn atan_inv(x: i64, prec: u32) -> (BigRational, BigRational) {
    let target = BigInt::one() << (prec as usize + 8);
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut pow = x.clone();
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        let term = BigRational::new(BigInt::one(), &pow * BigInt::from(2 * k + 1));
        let prev = sum.clone();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        if &pow * BigInt::from(2 * k + 1) > target {
            return if prev < sum { (prev, sum) } else { (sum, prev) };
        }
        pow *= &x2;
        k += 1;
    }
}

fn machin_pi(prec: u32) -> IntervalReal {
    let (a_lo, a_hi) = atan_inv(5, prec + 8);
    let (b_lo, b_hi) = atan_inv(239, prec + 8);
    let lo = a_lo * BigInt::from(16) - b_hi * BigInt::from(4);
    let hi = a_hi * BigInt::from(16) - b_lo * BigInt::from(4);
    let lo = IntervalReal::from_rational(&lo, prec + 8).lo;
    let hi = IntervalReal::from_rational(&hi, prec + 8).hi;
    IntervalReal::new(lo, hi, prec)
}

/// Enclosure of π of width at most about `2^-prec`.
pub fn pi_enclosure(prec: u32) -> IntervalReal {
    static C: OnceLock<Cache> = OnceLock::new();
    cached(&C, prec, machin_pi)
}

/// A real number given by a closed-form expression, evaluable to any precision.
#[derive(Clone, Debug, PartialEq)]
pub enum NumExpr {
    Rat(BigRational),
    Eta,
    Theta,
    E,
    Pi,
    Neg(Box<NumExpr>),
    Add(Box<NumExpr>, Box<NumExpr>),
    Sub(Box<NumExpr>, Box<NumExpr>),
    Mul(Box<NumExpr>, Box<NumExpr>),
    Div(Box<NumExpr>, Box<NumExpr>),
    Pow(Box<NumExpr>, i32),
    Sqrt(Box<NumExpr>),
}

impl NumExpr {
    /// Enclosure computed with working precision `prec`; `None` if a divisor
    /// could not be separated from zero at this precision.
    pub fn eval(&self, prec: u32) -> Option<IntervalReal> {
        Some(match self {
            NumExpr::Rat(q) => IntervalReal::from_rational(q, prec),
            NumExpr::Eta => eta_enclosure(prec),
            NumExpr::Theta => theta_enclosure(prec),
            NumExpr::E => e_enclosure(prec),
            NumExpr::Pi => pi_enclosure(prec),
            NumExpr::Neg(a) => a.eval(prec)?.neg(),
            NumExpr::Add(a, b) => a.eval(prec)?.add(&b.eval(prec)?),
            NumExpr::Sub(a, b) => a.eval(prec)?.sub(&b.eval(prec)?),
            NumExpr::Mul(a, b) => a.eval(prec)?.mul(&b.eval(prec)?),
            NumExpr::Div(a, b) => a.eval(prec)?.div(&b.eval(prec)?)?,
            NumExpr::Pow(a, n) => a.eval(prec)?.powi(*n)?,
            NumExpr::Sqrt(a) => a.eval(prec)?.sqrt()?,
        })
    }

    pub fn is_transcendental_free(&self) -> bool {
        match self {
            NumExpr::E | NumExpr::Pi => false,
            NumExpr::Rat(_) | NumExpr::Eta | NumExpr::Theta => true,
            NumExpr::Neg(a) | NumExpr::Pow(a, _) | NumExpr::Sqrt(a) => a.is_transcendental_free(),
            NumExpr::Add(a, b) | NumExpr::Sub(a, b) | NumExpr::Mul(a, b) | NumExpr::Div(a, b) => {
                a.is_transcendental_free() && b.is_transcendental_free()
            }
        }
    }
}

impl std::fmt::Display for NumExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NumExpr::Rat(q) => write!(f, "{q}"),
            NumExpr::Eta => write!(f, "eta"),
            NumExpr::Theta => write!(f, "theta"),
            NumExpr::E => write!(f, "e"),
            NumExpr::Pi => write!(f, "pi"),
            NumExpr::Neg(a) => write!(f, "-({a})"),
            NumExpr::Add(a, b) => write!(f, "({a} + {b})"),
            NumExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            NumExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            NumExpr::Div(a, b) => write!(f, "({a} / {b})"),
            NumExpr::Pow(a, n) => write!(f, "({a})^{n}"),
            NumExpr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_and_eta_enclosures() {
        let t = theta_enclosure(100);
        assert!(t.width_at_most(100));
        assert!((t.to_f64() - 1.116_682_4).abs() < 1e-6);
        let e = eta_enclosure(50);
        assert!(e.width_at_most(50));
        assert!((e.to_f64() - 1.246_979_6).abs() < 1e-6);
    }

    #[test]
    fn bracket_without_sign_change() {
        let r = isolate_root(&eta_min_poly(), &rat(2, 1), &rat(3, 1), 20);
        assert_eq!(r.unwrap_err(), Error::NoSignChange);
    }

    #[test]
    fn e_and_pi() {
        let e = e_enclosure(200);
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        assert!(e.width_at_most(190));
        let p = pi_enclosure(300);
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(p.width_at_most(290));
    }

    #[test]
    fn directed_rounding_encloses() {
        let third = IntervalReal::from_rational(&rat(1, 3), 30);
        assert!(third.lo < third.hi);
        let three = IntervalReal::from_int(3, 30);
        let one = third.mul(&three);
        assert!(one.contains(&Dyadic::from_int(1)));
        let s = IntervalReal::from_int(2, 60).sqrt().unwrap();
        let sq = s.mul(&s);
        assert!(sq.contains(&Dyadic::from_int(2)));
    }

    #[test]
    fn resolve_sign_escalates_and_gives_up() {
        let s = resolve_sign(None, Some(256), |p| Some(theta_enclosure(p).sub(&IntervalReal::from_int(1, p))));
        assert_eq!(s, Ok(1));
        let z = resolve_sign(None, Some(128), |p| Some(IntervalReal::new(Dyadic::from_int(-1).mul_pow2(-(p as i64)), Dyadic::from_int(1).mul_pow2(-(p as i64)), p)));
        assert_eq!(z, Err(Error::PrecisionExhausted(128)));
        assert_eq!(resolve_sign(Some(true), None, |_| None), Ok(0));
    }

    #[test]
    fn decimal_rendering() {
        let e = e_enclosure(128);
        let s = e.to_decimal(16);
        assert!(s.starts_with("2.7182818284590452"), "{s}");
        assert!(s.ends_with("± 1e-16"));
        assert_eq!(rational_to_decimal(&rat(-1, 8), 2), "-0.12");
        assert_eq!(rational_to_decimal(&rat(1, 3), 0), "0");
    }
}
