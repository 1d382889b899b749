//! Finite posets, incidence functions, Mobius functions and Mobius
//! conjugation.  Incidence values live in any commutative ring; big integers
//! and bivariate polynomials are the two rings used in practice.

use crate::error::{Error, Result};
use crate::poly::BiPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Commutative ring interface for incidence algebra values.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: &BigInt) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Ring for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: &BigInt) -> Self {
        BiPoly::constant(n.clone())
    }
}

/// Finite poset on elements `0..n` stored as a full order relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Build from an explicit relation, checking reflexivity, antisymmetry
    /// and transitivity.
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != n * n {
            return Err(Error::InvalidPoset(format!(
                "relation matrix has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let p = FinitePoset { n, leq };
        for i in 0..n {
            if !p.leq(i, i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && p.leq(i, j) && p.leq(j, i) {
                    return Err(Error::InvalidPoset(format!("not antisymmetric at ({i},{j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !p.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if p.leq(j, k) && !p.leq(i, k) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn from_relation(n: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = rel(i, j);
            }
        }
        Self::new(n, leq)
    }

    /// Order a family of subsets (as bitmasks) by inclusion.  The masks must
    /// be distinct.
    pub fn from_subset_family(masks: &[u32]) -> Result<Self> {
        Self::from_relation(masks.len(), |i, j| masks[i] & !masks[j] == 0)
    }

    /// Same, with an artificial top element appended as index `masks.len()`.
    pub fn from_subset_family_with_top(masks: &[u32]) -> Result<Self> {
        let n = masks.len() + 1;
        Self::from_relation(n, |i, j| {
            if j == n - 1 {
                true
            } else if i == n - 1 {
                false
            } else {
                masks[i] & !masks[j] == 0
            }
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    /// Elements in a linear extension order (sorted by down-set size).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        let below: Vec<usize> = (0..self.n)
            .map(|j| (0..self.n).filter(|&i| self.leq(i, j)).count())
            .collect();
        order.sort_by_key(|&j| (below[j], j));
        order
    }
}

/// A function on the comparable pairs of a poset with values in a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceFunction<R> {
    values: BTreeMap<(usize, usize), R>,
}

impl<R: Ring> IncidenceFunction<R> {
    fn empty() -> Self {
        IncidenceFunction {
            values: BTreeMap::new(),
        }
    }

    pub fn get(&self, x: usize, y: usize) -> R {
        self.values.get(&(x, y)).cloned().unwrap_or_else(R::zero)
    }

    pub fn set(&mut self, x: usize, y: usize, v: R) {
        // normalized: zero values are not stored
        if v == R::zero() {
            self.values.remove(&(x, y));
        } else {
            self.values.insert((x, y), v);
        }
    }

    /// Pairs with explicitly stored values, ascending.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &R)> {
        self.values.iter().map(|(&k, v)| (k, v))
    }

    /// The delta function: 1 on the diagonal, 0 elsewhere.
    pub fn identity(p: &FinitePoset) -> Self {
        let mut f = Self::empty();
        for i in 0..p.len() {
            f.set(i, i, R::one());
        }
        f
    }

    /// The zeta function: 1 on every comparable pair.
    pub fn zeta(p: &FinitePoset) -> Self {
        let mut f = Self::empty();
        for i in 0..p.len() {
            for j in 0..p.len() {
                if p.leq(i, j) {
                    f.set(i, j, R::one());
                }
            }
        }
        f
    }

    /// Diagonal embedding of a pointwise function: `delta(f)(x,x) = f(x)`.
    pub fn diagonal(f: &[R]) -> Self {
        let mut g = Self::empty();
        for (i, v) in f.iter().enumerate() {
            g.set(i, i, v.clone());
        }
        g
    }
}

/// Convolution product: `(f*g)(x,y) = sum over x <= z <= y of f(x,z)g(z,y)`.
pub fn convolve<R: Ring>(p: &FinitePoset, f: &IncidenceFunction<R>, g: &IncidenceFunction<R>) -> IncidenceFunction<R> {
    let mut h = IncidenceFunction::empty();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if !p.leq(x, y) {
                continue;
            }
            let mut acc = R::zero();
            for z in 0..p.len() {
                if p.leq(x, z) && p.leq(z, y) {
                    acc = acc.add(&f.get(x, z).mul(&g.get(z, y)));
                }
            }
            h.set(x, y, acc);
        }
    }
    h
}

/// The Mobius function of the poset as an integer incidence table.
pub fn mobius_table(p: &FinitePoset) -> IncidenceFunction<BigInt> {
    let mut mu = IncidenceFunction::empty();
    let order = p.linear_extension();
    for x in 0..p.len() {
        for &y in &order {
            if !p.leq(x, y) {
                continue;
            }
            if x == y {
                mu.set(x, y, <BigInt as One>::one());
                continue;
            }
            // mu(x,y) = - sum over x <= z < y of mu(x,z)
            let mut acc = <BigInt as Zero>::zero();
            for z in 0..p.len() {
                if z != y && p.leq(x, z) && p.leq(z, y) {
                    acc += mu.get(x, z);
                }
            }
            mu.set(x, y, -acc);
        }
    }
    mu
}

/// The Mobius function with values embedded into a ring.
pub fn mobius_in<R: Ring>(p: &FinitePoset) -> IncidenceFunction<R> {
    let mu = mobius_table(p);
    let mut out = IncidenceFunction::empty();
    for ((x, y), v) in mu.entries() {
        out.set(x, y, R::from_int(v));
    }
    out
}

/// Mobius conjugation of a pointwise function: `mu * diagonal(f) * zeta`.
/// This map is multiplicative: conjugating a pointwise product gives the
/// convolution of the conjugates.
pub fn mobius_conjugation<R: Ring>(p: &FinitePoset, f: &[R]) -> IncidenceFunction<R> {
    let mu = mobius_in::<R>(p);
    let step = convolve(p, &mu, &IncidenceFunction::diagonal(f));
    convolve(p, &step, &IncidenceFunction::zeta(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_relation(n, |i, j| i <= j).unwrap()
    }

    fn boolean_lattice(k: u32) -> FinitePoset {
        let masks: Vec<u32> = (0..(1u32 << k)).collect();
        FinitePoset::from_subset_family(&masks).unwrap()
    }

    #[test]
    fn rejects_invalid_relations() {
        // not reflexive
        assert!(FinitePoset::new(1, vec![false]).is_err());
        // not antisymmetric
        assert!(FinitePoset::from_relation(2, |_, _| true).is_err());
        // not transitive: 0<=1, 1<=2, but not 0<=2
        assert!(FinitePoset::from_relation(3, |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2)).is_err());
        // wrong matrix size
        assert!(FinitePoset::new(2, vec![true; 3]).is_err());
    }

    #[test]
    fn mobius_of_chain() {
        let p = chain(4);
        let mu = mobius_table(&p);
        assert_eq!(mu.get(0, 0), BigInt::from(1));
        assert_eq!(mu.get(0, 1), BigInt::from(-1));
        assert_eq!(mu.get(0, 2), BigInt::from(0));
        assert_eq!(mu.get(1, 3), BigInt::from(0));
        assert_eq!(mu.get(2, 3), BigInt::from(-1));
    }

    #[test]
    fn mobius_of_boolean_lattice() {
        // mu(X,Y) = (-1)^{|Y-X|}
        let p = boolean_lattice(3);
        let mu = mobius_table(&p);
        for x in 0..8u32 {
            for y in 0..8u32 {
                if x & !y == 0 {
                    let d = (y & !x).count_ones();
                    let expect = if d % 2 == 0 { 1 } else { -1 };
                    assert_eq!(mu.get(x as usize, y as usize), BigInt::from(expect));
                }
            }
        }
    }

    #[test]
    fn mobius_inverts_zeta() {
        for p in [chain(5), boolean_lattice(3)] {
            let mu = mobius_table(&p);
            let zeta = IncidenceFunction::<BigInt>::zeta(&p);
            let id = IncidenceFunction::<BigInt>::identity(&p);
            assert_eq!(convolve(&p, &mu, &zeta), id);
            assert_eq!(convolve(&p, &zeta, &mu), id);
        }
    }

    #[test]
    fn zeta_squared_counts_intervals() {
        let p = boolean_lattice(2);
        let zeta = IncidenceFunction::<BigInt>::zeta(&p);
        let z2 = convolve(&p, &zeta, &zeta);
        // interval [0, {0,1}] has 4 elements
        assert_eq!(z2.get(0, 3), BigInt::from(4));
    }

    #[test]
    fn conjugation_of_ones_is_identityish() {
        // f = all ones: mu * delta(1) * zeta = mu * zeta = identity.
        let p = boolean_lattice(2);
        let f = vec![BigInt::from(1); p.len()];
        let conj = mobius_conjugation(&p, &f);
        assert_eq!(conj, IncidenceFunction::identity(&p));
    }

    #[test]
    fn conjugation_is_multiplicative_on_small_posets() {
        // mu*(fg) = mu*(f) * mu*(g) with integer values
        let posets = [chain(4), boolean_lattice(3)];
        for p in posets {
            let f: Vec<BigInt> = (0..p.len()).map(|i| BigInt::from(i as i64 + 2)).collect();
            let g: Vec<BigInt> = (0..p.len()).map(|i| BigInt::from(3 - (i as i64 % 5))).collect();
            let fg: Vec<BigInt> = f.iter().zip(&g).map(|(a, b)| a * b).collect();
            let lhs = mobius_conjugation(&p, &fg);
            let rhs = convolve(&p, &mobius_conjugation(&p, &f), &mobius_conjugation(&p, &g));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn subset_family_with_top() {
        let masks = [0b00u32, 0b01, 0b10];
        let p = FinitePoset::from_subset_family_with_top(&masks).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.leq(1, 3) && p.leq(2, 3) && p.leq(0, 3));
        assert!(!p.leq(1, 2));
        // mu(0, top) over this diamond: 1 - 1 - 1 = -1, so mu = ... check via table
        let mu = mobius_table(&p);
        assert_eq!(mu.get(0, 3), BigInt::from(1));
    }
}
