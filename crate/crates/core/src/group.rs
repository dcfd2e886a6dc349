//! The triangle group as norm-one quaternions, realised as 2×2 matrices over L.
//!
//! An element is stored as a pair `(z, w)` standing for the matrix
//! `[[z, η w̄], [w, z̄]]`, where the bar is the automorphism θ ↦ −θ.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::tower::{rat, FElem, LElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    G2,
    G3,
    G7,
}

impl Gen {
    /// `n` with `gⁿ = −1`.
    pub fn half_order(self) -> i32 {
        match self {
            Gen::G2 => 2,
            Gen::G3 => 3,
            Gen::G7 => 7,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Gen::G2 => "g2",
            Gen::G3 => "g3",
            Gen::G7 => "g7",
        }
    }

    pub fn element(self) -> &'static GroupElement {
        let g = generators();
        match self {
            Gen::G2 => &g.0,
            Gen::G3 => &g.1,
            Gen::G7 => &g.2,
        }
    }
}

/// A word in the generators, kept in a normal form in which adjacent letters
/// differ and exponents are balanced (`g2^{0,1}`, `g3^{-1,1}`, `g7^{-3..3}`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub negated: bool,
    pub letters: Vec<(Gen, i32)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(g: Gen, e: i32) -> Self {
        Word { negated: false, letters: vec![(g, e)] }.normalized()
    }

    pub fn is_identity(&self) -> bool {
        !self.negated && self.letters.is_empty()
    }

    fn normalized(mut self) -> Self {
        loop {
            let mut out: Vec<(Gen, i32)> = Vec::with_capacity(self.letters.len());
            let mut changed = false;
            for &(g, e) in &self.letters {
                match out.last_mut() {
                    Some((h, f)) if *h == g => {
                        *f += e;
                        changed = true;
                    }
                    _ => out.push((g, e)),
                }
            }
            for (g, e) in out.iter_mut() {
                let n = g.half_order();
                let r = match g {
                    Gen::G2 => e.rem_euclid(2),
                    _ => (*e + n / 2).rem_euclid(n) - n / 2,
                };
                let q = (*e - r) / n;
                if q.rem_euclid(2) == 1 {
                    self.negated = !self.negated;
                }
                if r != *e {
                    changed = true;
                }
                *e = r;
            }
            let before = out.len();
            out.retain(|&(_, e)| e != 0);
            changed |= out.len() != before;
            self.letters = out;
            if !changed {
                return self;
            }
        }
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Word { negated: self.negated ^ o.negated, letters }.normalized()
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
        Word { negated: self.negated, letters }.normalized()
    }

    pub fn negate(&self) -> Word {
        Word { negated: !self.negated, letters: self.letters.clone() }
    }

    pub fn eval(&self) -> GroupElement {
        let mut acc = GroupElement::identity();
        for &(g, e) in &self.letters {
            acc = acc.compose(&g.element().pow(e));
        }
        let acc = if self.negated { acc.neg() } else { acc };
        acc.with_word(self.clone())
    }

    /// Parse words such as `g7^2 g2 g7^-2`, `-g3`, or `1`.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        let (negated, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, s),
        };
        let mut letters = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim_start_matches(['(', '{']).trim_end_matches([')', '}']);
                    (n, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?)
                }
                None => (tok, 1),
            };
            let g = match name {
                "g2" => Gen::G2,
                "g3" => Gen::G3,
                "g7" => Gen::G7,
                _ => return Err(Error::Parse(format!("unknown generator `{name}`"))),
            };
            letters.push((g, exp));
        }
        if body.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        Ok(Word { negated, letters }.normalized())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| if e == 1 { g.name().to_string() } else { format!("{}^{}", g.name(), e) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A quaternion `x0 + x1 i + x2 j + x3 ij` over F with `i² = η`, `j² = η`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElem {
    pub x: [FElem; 4],
}

impl QuatElem {
    pub fn new(x: [FElem; 4]) -> Self {
        QuatElem { x }
    }

    pub fn one() -> Self {
        QuatElem::basis(0)
    }

    pub fn i() -> Self {
        QuatElem::basis(1)
    }

    pub fn j() -> Self {
        QuatElem::basis(2)
    }

    pub fn ij() -> Self {
        QuatElem::basis(3)
    }

    fn basis(k: usize) -> Self {
        let mut x = [FElem::zero(), FElem::zero(), FElem::zero(), FElem::zero()];
        x[k] = FElem::one();
        QuatElem { x }
    }

    /// `j′ = ½(1 + η i + (1 + η + η²) j)`.
    pub fn j_prime() -> Self {
        let h = rat(1, 2);
        QuatElem {
            x: [
                FElem::one().scale(&h),
                FElem::eta().scale(&h),
                FElem::from_ints([1, 1, 1]).scale(&h),
                FElem::zero(),
            ],
        }
    }

    pub fn scale(&self, f: &FElem) -> Self {
        QuatElem { x: self.x.clone().map(|c| &c * f) }
    }

    /// Matrix coordinates: `z = x0 + x2 θ`, `w = x1 + x3 θ`.
    pub fn to_zw(&self) -> (LElem, LElem) {
        (LElem::from_parts(&self.x[0], &self.x[2]), LElem::from_parts(&self.x[1], &self.x[3]))
    }

    pub fn from_zw(z: &LElem, w: &LElem) -> Self {
        let (x0, x2) = z.split();
        let (x1, x3) = w.split();
        QuatElem { x: [x0, x1, x2, x3] }
    }

    pub fn mul(&self, o: &QuatElem) -> QuatElem {
        let (z1, w1) = self.to_zw();
        let (z2, w2) = o.to_zw();
        let (z, w) = compose_zw(&z1, &w1, &z2, &w2);
        QuatElem::from_zw(&z, &w)
    }

    pub fn add(&self, o: &QuatElem) -> QuatElem {
        QuatElem { x: [0, 1, 2, 3].map(|k| &self.x[k] + &o.x[k]) }
    }

    pub fn nrd(&self) -> FElem {
        let (z, w) = self.to_zw();
        nrd_zw(&z, &w)
    }

    pub fn trd(&self) -> FElem {
        self.x[0].scale(&rat(2, 1))
    }
}

fn compose_zw(z1: &LElem, w1: &LElem, z2: &LElem, w2: &LElem) -> (LElem, LElem) {
    let eta = LElem::eta();
    let z = z1 * z2 + &(&eta * &w1.conj()) * w2;
    let w = w1 * z2 + &z1.conj() * w2;
    (z, w)
}

fn nrd_zw(z: &LElem, w: &LElem) -> FElem {
    (z.norm().to_l() - &LElem::eta() * &w.norm().to_l()).to_f().expect("reduced norm lies in F")
}

/// A matrix `[[z, η w̄], [w, z̄]]`, optionally remembering a word that produced it.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub z: LElem,
    pub w: LElem,
    pub word: Option<Word>,
}

impl PartialEq for GroupElement {
    fn eq(&self, o: &Self) -> bool {
        self.z == o.z && self.w == o.w
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn new(z: LElem, w: LElem) -> Self {
        GroupElement { z, w, word: None }
    }

    pub fn identity() -> Self {
        GroupElement { z: LElem::one(), w: LElem::zero(), word: Some(Word::identity()) }
    }

    pub fn with_word(mut self, w: Word) -> Self {
        self.word = Some(w);
        self
    }

    /// Build from an arbitrary matrix, checking that it has the required shape.
    pub fn from_matrix(a: &LElem, b: &LElem, c: &LElem, d: &LElem) -> Result<Self> {
        if *d != a.conj() || *b != &LElem::eta() * &c.conj() {
            return Err(Error::Invalid("matrix is not of the form [[z, ηw̄], [w, z̄]]".into()));
        }
        Ok(GroupElement::new(a.clone(), c.clone()))
    }

    pub fn a(&self) -> LElem {
        self.z.clone()
    }

    pub fn b(&self) -> LElem {
        &LElem::eta() * &self.w.conj()
    }

    pub fn c(&self) -> LElem {
        self.w.clone()
    }

    pub fn d(&self) -> LElem {
        self.z.conj()
    }

    pub fn entries(&self) -> [LElem; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    pub fn compose(&self, o: &GroupElement) -> GroupElement {
        let (z, w) = compose_zw(&self.z, &self.w, &o.z, &o.w);
        let word = match (&self.word, &o.word) {
            (Some(a), Some(b)) => Some(a.mul(b)),
            _ => None,
        };
        GroupElement { z, w, word }
    }

    /// Inverse of a norm-one element: `(z̄, −w)`.
    pub fn inverse(&self) -> GroupElement {
        GroupElement { z: self.z.conj(), w: -&self.w, word: self.word.as_ref().map(Word::inverse) }
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement { z: -&self.z, w: -&self.w, word: self.word.as_ref().map(Word::negate) }
    }

    pub fn pow(&self, e: i32) -> GroupElement {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement::identity();
        acc.word = self.word.as_ref().map(|_| Word::identity());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn nrd(&self) -> FElem {
        nrd_zw(&self.z, &self.w)
    }

    pub fn trd(&self) -> FElem {
        (&self.z + &self.z.conj()).to_f().expect("trace lies in F")
    }

    /// `trd² − 4 > 0`.
    pub fn is_hyperbolic(&self) -> bool {
        let t = self.trd();
        (&(&t * &t) - &FElem::from_int(4)).sign() > 0
    }

    pub fn is_identity(&self) -> bool {
        self.z == LElem::one() && self.w.is_zero()
    }

    pub fn eq_up_to_sign(&self, o: &GroupElement) -> bool {
        self == o || (self.z == -&o.z && self.w == -&o.w)
    }

    pub fn quat(&self) -> QuatElem {
        QuatElem::from_zw(&self.z, &self.w)
    }

    pub fn from_quat(q: &QuatElem) -> Self {
        let (z, w) = q.to_zw();
        GroupElement::new(z, w)
    }
}

fn generators() -> &'static (GroupElement, GroupElement, GroupElement) {
    static G: OnceLock<(GroupElement, GroupElement, GroupElement)> = OnceLock::new();
    G.get_or_init(|| {
        let h = rat(1, 2);
        let eta = FElem::eta();
        let z = FElem::zero;
        // g2 = ij/η
        let g2 = QuatElem::new([z(), z(), z(), eta.inv().unwrap()]);
        // g3 = ½(1 + (η² − 2) j + (3 − η²) ij)
        let g3 = QuatElem::new([FElem::one().scale(&h), z(), FElem::from_ints([-2, 0, 1]).scale(&h), FElem::from_ints([3, 0, -1]).scale(&h)]);
        // g7 = ½(η² + η − 1 + (2 − η²) i + (η² + η − 2) ij)
        let g7 = QuatElem::new([
            FElem::from_ints([-1, 1, 1]).scale(&h),
            FElem::from_ints([2, 0, -1]).scale(&h),
            z(),
            FElem::from_ints([-2, 1, 1]).scale(&h),
        ]);
        (
            GroupElement::from_quat(&g2).with_word(Word::letter(Gen::G2, 1)),
            GroupElement::from_quat(&g3).with_word(Word::letter(Gen::G3, 1)),
            GroupElement::from_quat(&g7).with_word(Word::letter(Gen::G7, 1)),
        )
    })
}

pub fn g2() -> GroupElement {
    Gen::G2.element().clone()
}

pub fn g3() -> GroupElement {
    Gen::G3.element().clone()
}

pub fn g7() -> GroupElement {
    Gen::G7.element().clone()
}

pub const DIGITS: [i8; 6] = [1, 2, 3, -3, -2, -1];

pub fn check_digit(i: i32) -> Result<i8> {
    if (1..=3).contains(&i.abs()) {
        Ok(i as i8)
    } else {
        Err(Error::InvalidDigit(i))
    }
}

/// Exit index `1..=6` written in the balanced alphabet.
pub fn balanced(index: usize) -> i8 {
    debug_assert!((1..=6).contains(&index));
    if index <= 3 {
        index as i8
    } else {
        index as i8 - 7
    }
}

/// `A_i = g7^i g2` for a digit `i ∈ {±1, ±2, ±3}`.
pub fn digit_matrix(i: i32) -> Result<GroupElement> {
    check_digit(i)?;
    Ok(g7().pow(i).compose(&g2()))
}

/// The numbers `a_i = A/C`, `b_i = 1/C²`, `c_i = D/C` read off `A_i = [[A, B], [C, D]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitConstants {
    pub digit: i8,
    pub a: LElem,
    pub b: LElem,
    pub c: LElem,
}

pub fn digit_constants(i: i32) -> Result<DigitConstants> {
    let m = digit_matrix(i)?;
    let ci = m.c().inv()?;
    Ok(DigitConstants { digit: i as i8, a: &m.a() * &ci, b: &ci * &ci, c: &m.d() * &ci })
}

pub fn constants_table() -> Vec<DigitConstants> {
    DIGITS.iter().map(|&i| digit_constants(i as i32).expect("valid digit")).collect()
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a(), self.b(), self.c(), self.d())
    }
}
