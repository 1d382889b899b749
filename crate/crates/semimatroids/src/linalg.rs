//! Exact linear algebra.  Rational systems are handled by clearing
//! denominators and running fraction-free (Bareiss) Gaussian elimination on
//! big integers; prime field systems use plain elimination mod p.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Scale a rational row to integers (multiply by the lcm of denominators).
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Row echelon form of an integer matrix computed fraction-free.
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each nonzero echelon row, strictly increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Bareiss elimination.  Rows may be rational; they are cleared first.
pub fn echelon_q(rows: &[Vec<BigRational>]) -> Echelon {
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    echelon_int(int_rows)
}

pub fn echelon_int(mut m: Vec<Vec<BigInt>>) -> Echelon {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Echelon { rows: m, pivots, cols }
}

/// Rank of a rational matrix.
pub fn rank_q(rows: &[Vec<BigRational>]) -> usize {
    echelon_q(rows).rank()
}

/// Affine solution set of a consistent linear system: a particular point
/// plus a basis of the homogeneous kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpaceQ {
    pub point: Vec<BigRational>,
    pub basis: Vec<Vec<BigRational>>,
}

impl AffineSpaceQ {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solve `A x = b` over the rationals.  Returns `None` when inconsistent.
pub fn solve_q(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<AffineSpaceQ> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    debug_assert!(a.iter().all(|r| r.len() == n));
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = echelon_q(&aug);
    if ech.pivots.contains(&n) {
        return None; // pivot in the constants column
    }
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let point = back_substitute(&ech, n, None);
    let basis = free
        .iter()
        .map(|&fc| back_substitute(&ech, n, Some(fc)))
        .collect();
    Some(AffineSpaceQ { point, basis })
}

/// Back substitution on an echelon augmented matrix.  Free variables are 0,
/// except `unit_free`, which is set to 1 and switches to the homogeneous
/// system (constants column ignored); this yields one kernel vector per
/// free column.
fn back_substitute(ech: &Echelon, n: usize, unit_free: Option<usize>) -> Vec<BigRational> {
    let mut x = vec![BigRational::zero(); n];
    if let Some(fc) = unit_free {
        x[fc] = BigRational::one();
    }
    for (ri, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[ri];
        let mut acc = if unit_free.is_none() {
            BigRational::from(row[n].clone())
        } else {
            BigRational::zero()
        };
        for j in pc + 1..n {
            if !row[j].is_zero() {
                acc -= BigRational::from(row[j].clone()) * &x[j];
            }
        }
        x[pc] = acc / BigRational::from(row[pc].clone());
    }
    x
}

/// Basis of the right kernel `{x : A x = 0}` of a rational matrix.
pub fn kernel_q(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let b = vec![BigRational::zero(); a.len()];
    solve_q(a, &b)
        .map(|s| s.basis)
        .unwrap_or_else(|| {
            debug_assert!(n == 0 || !a.is_empty());
            Vec::new()
        })
}

/// Trial-division primality check, sufficient for small moduli.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduce a rational number mod p; fails when p divides the denominator.
pub fn reduce_mod(x: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    let den: u64 = den.try_into().expect("mod p fits");
    if den == 0 {
        return Err(Error::BadReduction(x.to_string(), p));
    }
    let num = x.numer().mod_floor(&pb);
    let num: u64 = num.try_into().expect("mod p fits");
    Ok(fp_mul(num, fp_inv(den, p), p))
}

pub fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn fp_sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

pub fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod a prime, via Fermat.
pub fn fp_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    fp_pow(a % p, p - 2, p)
}

pub fn fp_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(acc, base, p);
        }
        base = fp_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Row echelon form over F_p.
pub struct EchelonFp {
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl EchelonFp {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn echelon_fp(mut m: Vec<Vec<u64>>, p: u64) -> EchelonFp {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    for row in &mut m {
        for x in row.iter_mut() {
            *x %= p;
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = fp_inv(m[r][c], p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let factor = fp_mul(m[i][c], inv, p);
            for j in c..cols {
                let sub = fp_mul(factor, m[r][j], p);
                m[i][j] = fp_sub(m[i][j], sub, p);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    EchelonFp { rows: m, pivots, cols }
}

pub fn rank_fp(rows: &[Vec<u64>], p: u64) -> usize {
    echelon_fp(rows.to_vec(), p).rank()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpaceFp {
    pub point: Vec<u64>,
    pub basis: Vec<Vec<u64>>,
}

/// Solve `A x = b` over F_p.
pub fn solve_fp(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<AffineSpaceFp> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let aug: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let ech = echelon_fp(aug, p);
    if ech.pivots.contains(&n) {
        return None;
    }
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let solve_one = |unit_free: Option<usize>| -> Vec<u64> {
        let mut x = vec![0u64; n];
        if let Some(fc) = unit_free {
            x[fc] = 1;
        }
        for (ri, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[ri];
            let mut acc = if unit_free.is_none() { row[n] } else { 0 };
            for j in pc + 1..n {
                if row[j] != 0 {
                    acc = fp_sub(acc, fp_mul(row[j], x[j], p), p);
                }
            }
            x[pc] = fp_mul(acc, fp_inv(row[pc], p), p);
        }
        x
    };
    let point = solve_one(None);
    let basis = free.iter().map(|&fc| solve_one(Some(fc))).collect();
    Some(AffineSpaceFp { point, basis })
}
