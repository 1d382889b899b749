//! Sparse exact polynomials over the integers, in one variable `t` or two
//! variables `t`, `s`.  The zero polynomial is the empty coefficient map and
//! its degree is `None`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial with big-integer coefficients, keyed by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

fn add_term(map: &mut BTreeMap<u32, BigInt>, exp: u32, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(exp).or_insert_with(BigInt::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&exp);
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        add_term(&mut coeffs, 0, c);
        UniPoly { coeffs }
    }

    pub fn monomial(exp: u32, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        add_term(&mut coeffs, exp, c);
        UniPoly { coeffs }
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Self::monomial(1, BigInt::one())
    }

    /// `c0 + c1*t`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::constant(BigInt::from(c0)) + &Self::monomial(1, BigInt::from(c1))
    }

    pub fn from_pairs(pairs: &[(u32, i64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for &(e, c) in pairs {
            add_term(&mut coeffs, e, BigInt::from(c));
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms as (exponent, coefficient), ascending by exponent.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner over the sparse terms, highest exponent first.
        let mut acc = BigRational::zero();
        let mut prev_exp: Option<u32> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev_exp {
                acc *= pow_rational(x, p - e);
            }
            acc += BigRational::from(c.clone());
            prev_exp = Some(e);
        }
        if let Some(e) = prev_exp {
            acc *= pow_rational(x, e);
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev_exp: Option<u32> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev_exp {
                acc *= x.pow(p - e);
            }
            acc += c;
            prev_exp = Some(e);
        }
        if let Some(e) = prev_exp {
            acc *= x.pow(e);
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `image` for the variable.
    pub fn compose(&self, image: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (e, c) in self.terms() {
            acc = &acc + &image.pow(e).scaled(c);
        }
        acc
    }

    pub fn scaled(&self, c: &BigInt) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Coefficients from degree 0 up to `deg`, zero padded.
    pub fn dense_coeffs(&self, deg: u32) -> Vec<BigInt> {
        (0..=deg).map(|e| self.coeff(e)).collect()
    }
}

fn pow_rational(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            add_term(&mut coeffs, e, c.clone());
        }
        UniPoly { coeffs }
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            add_term(&mut coeffs, e, -c.clone());
        }
        UniPoly { coeffs }
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut coeffs = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                add_term(&mut coeffs, e1 + e2, c1 * c2);
            }
        }
        UniPoly { coeffs }
    }
}

impl Add<&UniPoly> for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        &self + rhs
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let mon = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            write_term(f, c, &mon, &mut first)?;
        }
        Ok(())
    }
}

/// Bivariate polynomial in `t` and `s`, keyed by (t-degree, s-degree).
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

fn add_term2(map: &mut BTreeMap<(u32, u32), BigInt>, exp: (u32, u32), c: BigInt) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(exp).or_insert_with(BigInt::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&exp);
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        add_term2(&mut coeffs, (0, 0), c);
        BiPoly { coeffs }
    }

    pub fn from_pairs(pairs: &[((u32, u32), i64)]) -> Self {
        let mut p = BiPoly::zero();
        for &((i, j), c) in pairs {
            p = &p + &BiPoly::monomial(i, j, BigInt::from(c));
        }
        p
    }

    pub fn monomial(t_exp: u32, s_exp: u32, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        add_term2(&mut coeffs, (t_exp, s_exp), c);
        BiPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t_exp: u32, s_exp: u32) -> BigInt {
        self.coeffs.get(&(t_exp, s_exp)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms as ((t-degree, s-degree), coefficient), ascending.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Embed a univariate polynomial as a polynomial in `t`.
    pub fn from_uni_t(p: &UniPoly) -> Self {
        BiPoly {
            coeffs: p.terms().map(|(e, c)| ((e, 0), c.clone())).collect(),
        }
    }

    /// Embed a univariate polynomial as a polynomial in `s`.
    pub fn from_uni_s(p: &UniPoly) -> Self {
        BiPoly {
            coeffs: p.terms().map(|(e, c)| ((0, e), c.clone())).collect(),
        }
    }

    /// Product of a polynomial in `t` and a polynomial in `s`.
    pub fn product_uni(t_part: &UniPoly, s_part: &UniPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        for (et, ct) in t_part.terms() {
            for (es, cs) in s_part.terms() {
                add_term2(&mut coeffs, (et, es), ct * cs);
            }
        }
        BiPoly { coeffs }
    }

    /// Substitute the monomial `t*s` for the variable of a univariate
    /// polynomial: `t^k` becomes `t^k s^k`.
    pub fn diagonal(p: &UniPoly) -> Self {
        BiPoly {
            coeffs: p.terms().map(|(e, c)| ((e, e), c.clone())).collect(),
        }
    }

    /// `(-1)^sign_exponent * p(t_image, s_image)` as a univariate polynomial.
    pub fn specialize(&self, t_image: &UniPoly, s_image: &UniPoly, sign_exponent: u32) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (&(et, es), c) in &self.coeffs {
            let term = &t_image.pow(et) * &s_image.pow(es);
            acc = &acc + &term.scaled(c);
        }
        if sign_exponent % 2 == 1 {
            acc = -&acc;
        }
        acc
    }

    /// Evaluate `t` at an integer, leaving a polynomial in `s`.
    pub fn set_t(&self, v: &BigInt) -> UniPoly {
        let mut coeffs = BTreeMap::new();
        for (&(et, es), c) in &self.coeffs {
            add_term(&mut coeffs, es, c * v.pow(et));
        }
        UniPoly { coeffs }
    }

    /// Evaluate `s` at an integer, leaving a polynomial in `t`.
    pub fn set_s(&self, v: &BigInt) -> UniPoly {
        let mut coeffs = BTreeMap::new();
        for (&(et, es), c) in &self.coeffs {
            add_term(&mut coeffs, et, c * v.pow(es));
        }
        UniPoly { coeffs }
    }

    pub fn eval(&self, t: &BigRational, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(et, es), c) in &self.coeffs {
            acc += BigRational::from(c.clone()) * pow_rational(t, et) * pow_rational(s, es);
        }
        acc
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            add_term2(&mut coeffs, e, c.clone());
        }
        BiPoly { coeffs }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            add_term2(&mut coeffs, e, -c.clone());
        }
        BiPoly { coeffs }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut coeffs = BTreeMap::new();
        for (&(t1, s1), c1) in &self.coeffs {
            for (&(t2, s2), c2) in &rhs.coeffs {
                add_term2(&mut coeffs, (t1 + t2, s1 + s2), c1 * c2);
            }
        }
        BiPoly { coeffs }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(et, es), c) in self.coeffs.iter().rev() {
            write_term(f, c, &monomial_str2(et, es), &mut first)?;
        }
        Ok(())
    }
}

fn monomial_str2(et: u32, es: u32) -> String {
    let mut parts = Vec::new();
    match et {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{et}")),
    }
    match es {
        0 => {}
        1 => parts.push("s".to_string()),
        _ => parts.push(format!("s^{es}")),
    }
    parts.join("*")
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &BigInt, mon: &str, first: &mut bool) -> fmt::Result {
    let sign = if c.is_negative() { "-" } else { "+" };
    let abs = c.abs();
    if *first {
        if c.is_negative() {
            write!(f, "-")?;
        }
        *first = false;
    } else {
        write!(f, " {sign} ")?;
    }
    if mon.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{mon}")
    } else {
        write!(f, "{abs}*{mon}")
    }
}

/// Signed coefficients of a characteristic polynomial read as unsigned
/// Whitney numbers: `values[i]` is `(-1)^i` times the coefficient of
/// `t^(rank-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneySeq {
    pub rank: usize,
    pub values: Vec<BigInt>,
}

/// Extract the Whitney number sequence from a characteristic polynomial of
/// the given rank.  The polynomial's degree must not exceed the rank.
pub fn whitney_sequence(chi: &UniPoly, rank: usize) -> Result<WhitneySeq> {
    if let Some(d) = chi.degree() {
        if d as usize > rank {
            return Err(Error::InvalidInput(format!(
                "degree {d} exceeds rank {rank}"
            )));
        }
    }
    let values = (0..=rank)
        .map(|i| {
            let c = chi.coeff((rank - i) as u32);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(WhitneySeq { rank, values })
}

/// Coefficient shape tests on a Whitney number sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    /// All entries positive and the leading entry is 1.
    pub alternating_nonzero: bool,
    /// Rises to a peak, then falls.
    pub unimodal: bool,
    /// `w[k]^2 >= w[k-1]*w[k+1]` for all interior `k`.
    pub log_concave: bool,
}

pub fn shape_report(w: &WhitneySeq) -> ShapeReport {
    let v = &w.values;
    let alternating_nonzero =
        v.iter().all(|x| x.is_positive()) && v.first().map(|x| x.is_one()).unwrap_or(false);
    let mut unimodal = true;
    let mut falling = false;
    for k in 1..v.len() {
        if v[k] > v[k - 1] {
            if falling {
                unimodal = false;
                break;
            }
        } else if v[k] < v[k - 1] {
            falling = true;
        }
    }
    let mut log_concave = true;
    for k in 1..v.len().saturating_sub(1) {
        if &v[k] * &v[k] < &v[k - 1] * &v[k + 1] {
            log_concave = false;
            break;
        }
    }
    ShapeReport {
        alternating_nonzero,
        unimodal,
        log_concave,
    }
}
