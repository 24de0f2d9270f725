//! Multivariate Laurent polynomials over the integers.
//!
//! Terms are kept in a sparse map ordered by graded lexicographic order
//! on exponent vectors; the coefficient map never stores zeros.

mod dense;
mod gcd;
mod json;
mod matrix;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use gcd::{exact_div, gcd, gcd_many};
pub use json::PolyJson;
pub use matrix::LaurentMatrix;

/// An exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<i64>);

impl Mono {
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// `c · x^exp`.
    pub fn monomial(nvars: usize, exp: Vec<i64>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length mismatch");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(exp), c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, C)>) -> Self {
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            *acc.entry(Mono(e)).or_default() += c.into();
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Mono, BigInt>) -> Self {
        LaurentPoly { nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        self.terms.get(&Mono(exp.to_vec())).cloned().unwrap_or_default()
    }

    /// A unit of the Laurent ring: `±x^v`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&[i64], &BigInt)> {
        self.terms.iter().next_back().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Componentwise minimum exponent (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut mins: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            match &mut mins {
                None => mins = Some(m.0.clone()),
                Some(v) => v.iter_mut().zip(&m.0).for_each(|(a, &b)| *a = (*a).min(b)),
            }
        }
        mins.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Mono(m.0.iter().zip(shift).map(|(a, b)| a + b).collect()), c.clone()))
            .collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Canonical representative of the class `±x^v · p`.
    ///
    /// Exponents are shifted so each variable has minimum exponent 0, and
    /// the sign is chosen so the graded-lex leading coefficient is positive.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mins = self.min_exponents();
        let neg: Vec<i64> = mins.iter().map(|m| -m).collect();
        let shifted = self.shift(&neg);
        if shifted.leading_term().unwrap().1.is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// Equality up to a unit `±x^v`.
    pub fn unit_equiv(&self, other: &Self) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    /// Value at `x_1 = … = x_r = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Applies the monomial map `x^v ↦ χ(v) · y^{A v}`.
    ///
    /// `a` is an `s × r` matrix (rows indexed by target variables) and
    /// `chi`, when given, is a sign per source variable with
    /// `χ(v) = ∏ chi_i^{v_i}`.
    pub fn specialize(&self, a: &[Vec<i64>], chi: Option<&[i8]>) -> Self {
        assert!(a.iter().all(|row| row.len() == self.nvars), "specialisation matrix has wrong width");
        if let Some(chi) = chi {
            assert_eq!(chi.len(), self.nvars, "sign character has wrong length");
        }
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let img: Vec<i64> = a.iter().map(|row| row.iter().zip(&m.0).map(|(x, y)| x * y).sum()).collect();
            let negative = chi.is_some_and(|chi| {
                chi.iter().zip(&m.0).filter(|(&s, &e)| s < 0 && e.rem_euclid(2) == 1).count() % 2 == 1
            });
            let entry = acc.entry(Mono(img)).or_default();
            if negative {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        Self::from_map(a.len(), acc)
    }

    /// The substitution `x_i ↦ chi_i · x_i`.
    pub fn twist(&self, chi: &[i8]) -> Self {
        self.specialize(&identity(self.nvars), Some(chi))
    }

    /// Largest real root of a univariate polynomial, if any.
    pub fn largest_real_root(&self) -> Option<f64> {
        assert_eq!(self.nvars, 1, "largest_real_root needs a univariate polynomial");
        let p = self.normalize_unit();
        let deg = p.leading_term()?.0[0] as usize;
        let coeffs: Vec<f64> = (0..=deg).map(|k| bigint_to_f64(&p.coeff(&[k as i64]))).collect();
        let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        let bound = 1.0 + coeffs[..deg].iter().map(|c| (c / coeffs[deg]).abs()).fold(0.0, f64::max);
        // Real roots are isolated by sampling between the Cauchy bounds, then bisected.
        let samples = 200_000;
        let step = 2.0 * bound / samples as f64;
        let mut best = None;
        let mut prev_x = -bound;
        let mut prev_v = eval(prev_x);
        for k in 1..=samples {
            let x = -bound + step * k as f64;
            let v = eval(x);
            if v == 0.0 {
                best = Some(x);
            } else if prev_v.signum() != v.signum() && prev_v != 0.0 {
                let (mut lo, mut hi) = (prev_x, x);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if eval(mid).signum() == eval(lo).signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                best = Some(0.5 * (lo + hi));
            }
            prev_x = x;
            prev_v = v;
        }
        best
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_string().parse().unwrap_or(f64::NAN)
}

/// The `n × n` identity matrix.
pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["a", "b", "c", "d"];
        let name = |i: usize| {
            if self.nvars == 1 {
                "t".to_string()
            } else if self.nvars <= 4 {
                NAMES[i].to_string()
            } else {
                format!("x{}", i + 1)
            }
        };
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut body = String::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => body.push_str(&name(i)),
                    _ => body.push_str(&format!("{}^{}", name(i), e)),
                }
            }
            let abs = c.abs();
            let coef = if body.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                String::new()
            } else {
                abs.to_string()
            };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{coef}{body}")?,
                (0, false) => write!(f, "{coef}{body}")?,
                (_, true) => write!(f, " - {coef}{body}")?,
                (_, false) => write!(f, " + {coef}{body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl LaurentPoly {
    fn accumulate(&mut self, rhs: &LaurentPoly, negate: bool) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            let entry = self.terms.entry(m.clone()).or_default();
            if negate {
                *entry -= c;
            } else {
                *entry += c;
            }
            if entry.is_zero() {
                self.terms.remove(m);
            }
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.accumulate(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.accumulate(rhs, true);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        if let Some(p) = dense::mul_small(self, rhs) {
            return p;
        }
        let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = Mono(m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect());
                *acc.entry(m).or_default() += c1 * c2;
            }
        }
        LaurentPoly::from_map(self.nvars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
