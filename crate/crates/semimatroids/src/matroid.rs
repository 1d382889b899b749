//! Matroids on small ground sets, stored as a dense rank table indexed by
//! subset bitmask.  Constructors validate the local rank axioms, so every
//! value of this type is a genuine matroid.

use crate::bits;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{BiPoly, UniPoly};
use crate::MAX_ENUM;
use num_bigint::BigInt;
use num_rational::BigRational;

/// A matroid on a subset of `{0, .., width-1}` given by its rank function.
///
/// The ground set is a bitmask, so minors keep their original element
/// labels.  The rank table covers all of `0..2^width`; masks are clipped to
/// the ground set on lookup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    width: u32,
    ground: u32,
    rank: Vec<u8>,
}

impl Matroid {
    /// Build from a rank function on subsets of `ground`, checking the
    /// local axioms: empty set has rank 0, adding one element raises rank
    /// by 0 or 1, and two non-increasing extensions stay non-increasing
    /// jointly.
    pub fn from_rank_fn<F: Fn(u32) -> u8>(width: u32, ground: u32, f: F) -> Result<Matroid> {
        if width as usize > MAX_ENUM {
            return Err(Error::GroundTooLarge(width as usize, MAX_ENUM));
        }
        if ground >> width != 0 {
            return Err(Error::NotInGround(ground >> width << width));
        }
        let mut rank = vec![0u8; 1 << width];
        for x in bits::submasks(ground) {
            rank[x as usize] = f(x);
        }
        for m in 0u32..(1 << width) {
            if m & !ground != 0 {
                rank[m as usize] = rank[(m & ground) as usize];
            }
        }
        let m = Matroid { width, ground, rank };
        m.check_axioms()?;
        Ok(m)
    }

    /// The uniform matroid of rank `r` on `n` elements.
    pub fn uniform(r: u8, n: u32) -> Result<Matroid> {
        if n as usize > MAX_ENUM {
            return Err(Error::GroundTooLarge(n as usize, MAX_ENUM));
        }
        let ground = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        Matroid::from_rank_fn(n, ground, |x| (bits::count(x) as u8).min(r))
    }

    /// Linear matroid of a list of rational column vectors.
    pub fn from_columns_q(cols: &[Vec<BigRational>]) -> Result<Matroid> {
        let n = cols.len() as u32;
        if n as usize > MAX_ENUM {
            return Err(Error::GroundTooLarge(n as usize, MAX_ENUM));
        }
        let ground = mask_all(n);
        let rank = greedy_rank_table(n, |basis: &[usize], e| {
            let mut rows: Vec<Vec<BigRational>> = basis.iter().map(|&i| cols[i].clone()).collect();
            rows.push(cols[e].clone());
            linalg::rank_q(&rows) == rows.len()
        });
        Ok(Matroid { width: n, ground, rank })
    }

    /// Linear matroid of column vectors over F_p.
    pub fn from_columns_fp(cols: &[Vec<u64>], p: u64) -> Result<Matroid> {
        if !linalg::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = cols.len() as u32;
        if n as usize > MAX_ENUM {
            return Err(Error::GroundTooLarge(n as usize, MAX_ENUM));
        }
        let ground = mask_all(n);
        let rank = greedy_rank_table(n, |basis: &[usize], e| {
            let mut rows: Vec<Vec<u64>> = basis.iter().map(|&i| cols[i].clone()).collect();
            rows.push(cols[e].clone());
            linalg::rank_fp(&rows, p) == rows.len()
        });
        Ok(Matroid { width: n, ground, rank })
    }

    /// Build from a circuit family on `{0, .., n-1}`.  The family must be
    /// an antichain of nonempty sets and satisfy circuit elimination (the
    /// latter is caught by the rank axiom check).
    pub fn from_circuits(n: u32, circuits: &[u32]) -> Result<Matroid> {
        if n as usize > MAX_ENUM {
            return Err(Error::GroundTooLarge(n as usize, MAX_ENUM));
        }
        let ground = mask_all(n);
        for (i, &c) in circuits.iter().enumerate() {
            if c == 0 {
                return Err(Error::InvalidMatroid("empty circuit".into()));
            }
            if c & !ground != 0 {
                return Err(Error::NotInGround(c & !ground));
            }
            for (j, &d) in circuits.iter().enumerate() {
                if i != j && c & d == c {
                    return Err(Error::InvalidMatroid(format!(
                        "circuit {c} contained in circuit {d}"
                    )));
                }
            }
        }
        let size = 1usize << n;
        let mut dependent = vec![false; size];
        for m in 0..size as u32 {
            dependent[m as usize] = circuits.iter().any(|&c| c & m == c);
        }
        let mut rank = vec![0u8; size];
        for m in 1..size as u32 {
            if !dependent[m as usize] {
                rank[m as usize] = bits::count(m) as u8;
            } else {
                rank[m as usize] = bits::elements(m)
                    .map(|e| rank[(m & !(1 << e)) as usize])
                    .max()
                    .unwrap();
            }
        }
        let m = Matroid { width: n, ground, rank };
        m.check_axioms()?;
        if m.circuits() != {
            let mut c = circuits.to_vec();
            c.sort_unstable();
            c
        } {
            return Err(Error::InvalidMatroid(
                "family is not the circuit set of its span".into(),
            ));
        }
        Ok(m)
    }

    /// Validate the local rank axioms over the whole table.
    pub fn check_axioms(&self) -> Result<()> {
        if self.rank[0] != 0 {
            return Err(Error::InvalidMatroid("rank of empty set is nonzero".into()));
        }
        for x in bits::submasks(self.ground) {
            let rx = self.rank[x as usize];
            for e in bits::elements(self.ground & !x) {
                let rxe = self.rank[(x | 1 << e) as usize];
                if rxe < rx || rxe > rx + 1 {
                    return Err(Error::InvalidMatroid(format!(
                        "adding element {e} to {x} changes rank from {rx} to {rxe}"
                    )));
                }
                if rxe > rx {
                    continue;
                }
                for f in bits::elements(self.ground & !x) {
                    if f <= e {
                        continue;
                    }
                    let rxf = self.rank[(x | 1 << f) as usize];
                    let rxef = self.rank[(x | 1 << e | 1 << f) as usize];
                    if rxf == rx && rxef != rx {
                        return Err(Error::InvalidMatroid(format!(
                            "elements {e}, {f} over {x} break exchange"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn size(&self) -> u32 {
        bits::count(self.ground) as u32
    }

    /// Rank of a subset (clipped to the ground set).
    pub fn rank_of(&self, x: u32) -> u8 {
        self.rank[(x & self.ground) as usize]
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> u8 {
        self.rank_of(self.ground)
    }

    pub fn is_independent(&self, x: u32) -> bool {
        x & !self.ground == 0 && self.rank_of(x) as usize == bits::count(x)
    }

    /// Elements whose addition does not raise the rank of `x`.
    pub fn closure(&self, x: u32) -> u32 {
        let x = x & self.ground;
        let rx = self.rank_of(x);
        let mut cl = x;
        for e in bits::elements(self.ground & !x) {
            if self.rank_of(x | 1 << e) == rx {
                cl |= 1 << e;
            }
        }
        cl
    }

    /// All closed subsets, ascending as masks.
    pub fn flats(&self) -> Vec<u32> {
        bits::submasks(self.ground)
            .filter(|&x| self.closure(x) == x)
            .collect()
    }

    /// Minimal dependent subsets, ascending as masks.
    pub fn circuits(&self) -> Vec<u32> {
        bits::submasks(self.ground)
            .filter(|&x| {
                x != 0
                    && !self.is_independent(x)
                    && bits::elements(x).all(|e| self.is_independent(x & !(1 << e)))
            })
            .collect()
    }

    /// Mask of rank-zero elements.
    pub fn loops(&self) -> u32 {
        let mut l = 0;
        for e in bits::elements(self.ground) {
            if self.rank_of(1 << e) == 0 {
                l |= 1 << e;
            }
        }
        l
    }

    pub fn is_loop(&self, e: u32) -> bool {
        self.ground & (1 << e) != 0 && self.rank_of(1 << e) == 0
    }

    /// An element lying in every maximal independent set.
    pub fn is_coloop(&self, e: u32) -> bool {
        self.ground & (1 << e) != 0 && self.rank_of(self.ground & !(1 << e)) + 1 == self.rank()
    }

    /// Remove the elements of `d` from the ground set.
    pub fn delete(&self, d: u32) -> Matroid {
        let ground = self.ground & !d;
        let rank = (0..1u32 << self.width)
            .map(|m| self.rank[(m & ground) as usize])
            .collect();
        Matroid { width: self.width, ground, rank }
    }

    /// Contract the elements of `c` (they leave the ground set).
    pub fn contract(&self, c: u32) -> Matroid {
        let c = c & self.ground;
        let rc = self.rank_of(c);
        let ground = self.ground & !c;
        let rank = (0..1u32 << self.width)
            .map(|m| self.rank[((m & ground) | c) as usize] - rc)
            .collect();
        Matroid { width: self.width, ground, rank }
    }

    /// Keep only the elements of `x`.
    pub fn restrict(&self, x: u32) -> Matroid {
        self.delete(self.ground & !x)
    }

    /// Signed sum `sum_X (-1)^|X| t^(r - r(X))` over all subsets.
    pub fn characteristic(&self) -> UniPoly {
        let r = self.rank() as u32;
        let mut p = UniPoly::zero();
        for x in bits::submasks(self.ground) {
            let sign = if bits::count(x) % 2 == 0 { 1 } else { -1 };
            p = &p + &UniPoly::monomial(r - self.rank_of(x) as u32, BigInt::from(sign));
        }
        p
    }

    /// Corank-nullity sum `sum_X (t-1)^(r - r(X)) (s-1)^(|X| - r(X))`.
    pub fn tutte(&self) -> BiPoly {
        let r = self.rank() as u32;
        let tm1 = UniPoly::linear(-1, 1);
        let sm1 = tm1.clone();
        let mut acc = BiPoly::zero();
        for x in bits::submasks(self.ground) {
            let rx = self.rank_of(x) as u32;
            let t_part = tm1.pow(r - rx);
            let s_part = sm1.pow(bits::count(x) as u32 - rx);
            acc = &acc + &BiPoly::product_uni(&t_part, &s_part);
        }
        acc
    }
}

fn mask_all(n: u32) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Dense rank table from a greedy independence oracle: `extends(basis, e)`
/// answers whether column `e` is outside the span of the columns in
/// `basis`.  Valid whenever the oracle comes from a vector configuration.
fn greedy_rank_table<F: Fn(&[usize], usize) -> bool>(n: u32, extends: F) -> Vec<u8> {
    let size = 1usize << n;
    // basis[m] is a maximal independent subset of m built greedily by
    // ascending element index; for representable inputs its size is r(m)
    let mut basis: Vec<u32> = vec![0; size];
    let mut rank = vec![0u8; size];
    for m in 1..size as u32 {
        let e = 31 - m.leading_zeros();
        let prev = m & !(1 << e);
        let b = basis[prev as usize];
        let members: Vec<usize> = bits::elements(b).map(|x| x as usize).collect();
        if extends(&members, e as usize) {
            basis[m as usize] = b | 1 << e;
            rank[m as usize] = rank[prev as usize] + 1;
        } else {
            basis[m as usize] = b;
            rank[m as usize] = rank[prev as usize];
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn uniform_two_four() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_of(0b0001), 1);
        assert_eq!(m.rank_of(0b0111), 2);
        assert_eq!(m.circuits(), vec![0b0111, 0b1011, 0b1101, 0b1110]);
        assert_eq!(m.flats().len(), 6); // empty, four points, everything
        assert_eq!(m.loops(), 0);
        assert!(!m.is_coloop(0));
    }

    #[test]
    fn uniform_two_four_polynomials() {
        let m = Matroid::uniform(2, 4).unwrap();
        let chi = UniPoly::from_pairs(&[(2, 1), (1, -4), (0, 3)]);
        assert_eq!(m.characteristic(), chi);
        let tutte = BiPoly::from_pairs(&[((2, 0), 1), ((1, 0), 2), ((0, 1), 2), ((0, 2), 1)]);
        assert_eq!(m.tutte(), tutte);
    }

    #[test]
    fn columns_give_uniform() {
        let cols = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(1)],
            vec![rat(1), rat(2)],
        ];
        let m = Matroid::from_columns_q(&cols).unwrap();
        assert_eq!(m, Matroid::uniform(2, 4).unwrap());
        m.check_axioms().unwrap();
    }

    #[test]
    fn columns_mod_two() {
        let cols = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let m = Matroid::from_columns_fp(&cols, 2).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
        // the zero column is a loop
        let m = Matroid::from_columns_fp(&[vec![0, 0], vec![1, 0]], 3).unwrap();
        assert_eq!(m.loops(), 0b01);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn circuits_round_trip() {
        let m = Matroid::from_circuits(3, &[0b111]).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
        // parallel pairs
        let m = Matroid::from_circuits(4, &[0b0011, 0b1100]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.circuits(), vec![0b0011, 0b1100]);
        // not an antichain
        assert!(Matroid::from_circuits(3, &[0b011, 0b111]).is_err());
        // violates circuit elimination: {0,1} and {0,2} force {1,2}
        assert!(Matroid::from_circuits(3, &[0b011, 0b101]).is_err());
        assert!(Matroid::from_circuits(2, &[0]).is_err());
    }

    #[test]
    fn axiom_rejection() {
        // two parallel-looking elements that jump to rank 2 together
        let table = [0u8, 0, 0, 1];
        let err = Matroid::from_rank_fn(2, 0b11, |x| table[x as usize]);
        assert!(err.is_err());
        // rank jump of two
        let err = Matroid::from_rank_fn(1, 0b1, |x| if x == 1 { 2 } else { 0 });
        assert!(err.is_err());
    }

    #[test]
    fn minors() {
        let m = Matroid::uniform(2, 4).unwrap();
        let d = m.delete(0b1000);
        assert_eq!(d.ground(), 0b0111);
        assert_eq!(d.rank(), 2);
        assert_eq!(d.circuits(), vec![0b0111]);
        let c = m.contract(0b0001);
        assert_eq!(c.ground(), 0b1110);
        assert_eq!(c.rank(), 1);
        // every remaining pair is dependent
        assert_eq!(c.circuits(), vec![0b0110, 0b1010, 0b1100]);
        // deletion then contraction commute here
        assert_eq!(m.delete(0b1000).contract(0b0001), m.contract(0b0001).delete(0b1000));
    }

    #[test]
    fn closure_and_coloops() {
        let free = Matroid::uniform(2, 2).unwrap();
        assert!(free.is_coloop(0) && free.is_coloop(1));
        let m = Matroid::uniform(1, 3).unwrap();
        assert_eq!(m.closure(0b001), 0b111);
        assert_eq!(m.closure(0), 0);
        // loops join every closure
        let with_loop = Matroid::from_rank_fn(2, 0b11, |x| u8::from(x & 0b10 != 0)).unwrap();
        assert_eq!(with_loop.loops(), 0b01);
        assert_eq!(with_loop.closure(0), 0b01);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_columns() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
            (1usize..5, 1usize..4).prop_flat_map(|(n, d)| {
                proptest::collection::vec(proptest::collection::vec(-2i64..3, d), n).prop_map(
                    |cols| {
                        cols.into_iter()
                            .map(|c| c.into_iter().map(rat).collect())
                            .collect()
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn column_matroids_satisfy_axioms(cols in arb_columns()) {
                let m = Matroid::from_columns_q(&cols).unwrap();
                prop_assert!(m.check_axioms().is_ok());
            }

            #[test]
            fn closure_is_a_closure_operator(cols in arb_columns(), x in 0u32..16) {
                let m = Matroid::from_columns_q(&cols).unwrap();
                let x = x & m.ground();
                let cl = m.closure(x);
                prop_assert_eq!(cl & x, x);
                prop_assert_eq!(m.closure(cl), cl);
                prop_assert_eq!(m.rank_of(cl), m.rank_of(x));
            }

            #[test]
            fn deletion_keeps_axioms(cols in arb_columns(), d in 0u32..16) {
                let m = Matroid::from_columns_q(&cols).unwrap();
                prop_assert!(m.delete(d).check_axioms().is_ok());
                prop_assert!(m.contract(d).check_axioms().is_ok());
            }
        }
    }
}
