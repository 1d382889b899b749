//! Convolution identities: the two-variable factorization of the
//! characteristic polynomial over flats, and the corank-nullity
//! factorization over central sets, flats, or cyclic flats.  Each identity
//! is also recomputed through generic incidence-algebra convolution as an
//! independent route.

use crate::error::{Error, Result};
use crate::poly::{BiPoly, UniPoly};
use crate::poset::{convolve, mobius_conjugation, FinitePoset};
use crate::semimatroid::Semimatroid;
use num_bigint::BigInt;

/// A two-sided identity check: the directly computed left side and the
/// convolution sum on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionReport {
    pub lhs: BiPoly,
    pub rhs: BiPoly,
}

impl ConvolutionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Which sets index the corank-nullity convolution sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TutteIndex {
    CentralSets,
    Flats,
    CyclicFlats,
}

/// Flats whose restriction has no bridges.
pub fn cyclic_flats(c: &Semimatroid) -> Vec<u32> {
    c.flats()
        .into_iter()
        .filter(|&x| c.restriction(x).bridges() == 0)
        .collect()
}

/// `chi(C; ts)` against `sum over flats X` of
/// `t^(r - r(X)) chi(C|X; t) chi(C/X; s)`.  Defined for loopless families.
pub fn char_convolution(c: &Semimatroid) -> Result<ConvolutionReport> {
    if c.loops() != 0 {
        return Err(Error::HasLoops);
    }
    let r = c.rank() as u32;
    let lhs = BiPoly::diagonal(&c.characteristic());
    let mut rhs = BiPoly::zero();
    for x in c.flats() {
        let rx = c.rank_of(x)? as u32;
        let restriction_chi = c.restriction(x).characteristic();
        let contraction_chi = c.contraction(x)?.characteristic();
        let t_part = &UniPoly::monomial(r - rx, BigInt::from(1)) * &restriction_chi;
        rhs = &rhs + &BiPoly::product_uni(&t_part, &contraction_chi);
    }
    Ok(ConvolutionReport { lhs, rhs })
}

/// The same left side computed a third way: convolve the two conjugated
/// incidence functions over the flat semilattice with an artificial top,
/// where both weight functions vanish on the top.
pub fn char_convolution_by_conjugation(c: &Semimatroid) -> Result<BiPoly> {
    if c.loops() != 0 {
        return Err(Error::HasLoops);
    }
    let flats = c.flats();
    let poset = FinitePoset::from_subset_family_with_top(&flats)?;
    let r = c.rank() as u32;
    let mut f = Vec::with_capacity(flats.len() + 1);
    let mut g = Vec::with_capacity(flats.len() + 1);
    for &x in &flats {
        let e = r - c.rank_of(x)? as u32;
        f.push(BiPoly::from_uni_t(&UniPoly::monomial(e, BigInt::from(1))));
        g.push(BiPoly::from_uni_s(&UniPoly::monomial(e, BigInt::from(1))));
    }
    f.push(BiPoly::zero());
    g.push(BiPoly::zero());
    let mf = mobius_conjugation(&poset, &f);
    let mg = mobius_conjugation(&poset, &g);
    let product = convolve(&poset, &mf, &mg);
    // the empty set is the bottom flat, the artificial top is last
    Ok(product.get(0, flats.len()))
}

/// `T(C; t, s)` against `sum over X` of `T(C|X; 0, s) T(C/X; t, 0)`, with
/// `X` running over the chosen index family.
pub fn tutte_convolution(c: &Semimatroid, index: TutteIndex) -> Result<ConvolutionReport> {
    let sets: Vec<u32> = match index {
        TutteIndex::CentralSets => c.central().to_vec(),
        TutteIndex::Flats => c.flats(),
        TutteIndex::CyclicFlats => cyclic_flats(c),
    };
    let lhs = c.tutte();
    let zero = BigInt::from(0);
    let mut rhs = BiPoly::zero();
    for x in sets {
        let s_part = c.restriction(x).tutte().set_t(&zero);
        let t_part = c.contraction(x)?.tutte().set_s(&zero);
        rhs = &rhs + &BiPoly::product_uni(&t_part, &s_part);
    }
    Ok(ConvolutionReport { lhs, rhs })
}

/// Incidence-algebra route for the corank-nullity identity: on the poset
/// of central sets with an artificial top, conjugate the nullity weight
/// `(1-s)^(|X|-r(X))` and the corank weight `(1-t)^(r-r(X))`, convolve,
/// and read the bottom-to-top value, which is `(-1)^r T(C;t,s)`.
pub fn tutte_convolution_by_conjugation(c: &Semimatroid) -> Result<BiPoly> {
    let central = c.central().to_vec();
    let poset = FinitePoset::from_subset_family_with_top(&central)?;
    let r = c.rank() as u32;
    let one_minus = UniPoly::linear(1, -1);
    let mut f = Vec::with_capacity(central.len() + 1);
    let mut g = Vec::with_capacity(central.len() + 1);
    for &x in &central {
        let rx = c.rank_of(x)? as u32;
        let nullity = crate::bits::count(x) as u32 - rx;
        f.push(BiPoly::from_uni_s(&one_minus.pow(nullity)));
        g.push(BiPoly::from_uni_t(&one_minus.pow(r - rx)));
    }
    f.push(BiPoly::zero());
    g.push(BiPoly::zero());
    let mf = mobius_conjugation(&poset, &f);
    let mg = mobius_conjugation(&poset, &g);
    let product = convolve(&poset, &mf, &mg);
    Ok(product.get(0, central.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;
    use crate::matroid::Matroid;

    fn truncated_boolean() -> Semimatroid {
        let mut pairs = Vec::new();
        for x in 0u32..16 {
            if bits::count(x) <= 2 {
                pairs.push((x, bits::count(x) as u8));
            }
        }
        Semimatroid::new(4, 0b1111, pairs).unwrap()
    }

    fn line_with_four_points() -> Semimatroid {
        Semimatroid::from_matroid(&Matroid::uniform(2, 4).unwrap())
    }

    #[test]
    fn char_identity_on_fixtures() {
        for c in [truncated_boolean(), line_with_four_points()] {
            let report = char_convolution(&c).unwrap();
            assert!(report.holds(), "lhs {} vs rhs {}", report.lhs, report.rhs);
            assert_eq!(char_convolution_by_conjugation(&c).unwrap(), report.lhs);
        }
        // frozen expansion for the four-point line matroid complex
        let report = char_convolution(&line_with_four_points()).unwrap();
        let expected = BiPoly::from_pairs(&[((2, 2), 1), ((1, 1), -4), ((0, 0), 3)]);
        assert_eq!(report.lhs, expected);
        // and for the truncated complex
        let report = char_convolution(&truncated_boolean()).unwrap();
        let expected = BiPoly::from_pairs(&[((2, 2), 1), ((1, 1), -4), ((0, 0), 6)]);
        assert_eq!(report.lhs, expected);
    }

    #[test]
    fn char_identity_requires_loopless() {
        let pairs = vec![(0b0u32, 0u8), (0b1, 0)];
        let c = Semimatroid::new(1, 0b1, pairs).unwrap();
        assert!(matches!(char_convolution(&c), Err(Error::HasLoops)));
    }

    #[test]
    fn tutte_identity_three_index_families() {
        for c in [truncated_boolean(), line_with_four_points()] {
            for index in [
                TutteIndex::CentralSets,
                TutteIndex::Flats,
                TutteIndex::CyclicFlats,
            ] {
                let report = tutte_convolution(&c, index).unwrap();
                assert!(
                    report.holds(),
                    "{index:?}: lhs {} vs rhs {}",
                    report.lhs,
                    report.rhs
                );
            }
        }
    }

    #[test]
    fn cyclic_flat_families() {
        // full complex on the four-point line: only the empty set and the
        // whole ground set have bridge-free restrictions
        assert_eq!(cyclic_flats(&line_with_four_points()), vec![0, 0b1111]);
        // truncated complex: every nonempty restriction has a bridge
        assert_eq!(cyclic_flats(&truncated_boolean()), vec![0]);
        // free matroid: only the empty flat
        let free = Semimatroid::from_matroid(&Matroid::uniform(2, 2).unwrap());
        assert_eq!(cyclic_flats(&free), vec![0]);
    }

    #[test]
    fn truncated_boolean_tutte_terms() {
        // in the truncated complex every nonempty restriction has a bridge
        // and so contributes nothing; the whole sum is the contraction by
        // the empty set
        let c = truncated_boolean();
        let report = tutte_convolution(&c, TutteIndex::CyclicFlats).unwrap();
        let t = BiPoly::from_pairs(&[((2, 0), 1), ((1, 0), 2), ((0, 0), 3)]);
        assert_eq!(report.lhs, t);
        assert_eq!(report.rhs, t);
    }

    #[test]
    fn conjugation_route_matches_tutte() {
        for c in [truncated_boolean(), line_with_four_points()] {
            let value = tutte_convolution_by_conjugation(&c).unwrap();
            let sign = if c.rank() % 2 == 0 { 1 } else { -1 };
            let expected = &c.tutte() * &BiPoly::constant(BigInt::from(sign));
            assert_eq!(value, expected);
        }
    }

    #[test]
    fn one_point_contraction_keeps_multiplicities() {
        // contracting one point of the four-point line leaves three
        // mutually parallel elements; their corank-nullity polynomial
        // remembers all three
        let c = line_with_four_points();
        let k = c.contraction(0b0001).unwrap();
        assert_eq!(
            k.tutte(),
            BiPoly::from_pairs(&[((1, 0), 1), ((0, 1), 1), ((0, 2), 1)])
        );
    }

    mod properties {
        use super::*;
        use num_rational::BigRational;
        use proptest::prelude::*;

        fn rat(n: i64) -> BigRational {
            BigRational::from(BigInt::from(n))
        }

        fn arb_semimatroid() -> impl Strategy<Value = Semimatroid> {
            (2usize..6, 1usize..4)
                .prop_flat_map(|(n, d)| {
                    proptest::collection::vec(proptest::collection::vec(-2i64..3, d), n)
                })
                .prop_filter_map("needs a non-loop distinguished element", |cols| {
                    let cols: Vec<Vec<BigRational>> = cols
                        .into_iter()
                        .map(|c| c.into_iter().map(rat).collect())
                        .collect();
                    let m = Matroid::from_columns_q(&cols).ok()?;
                    let p = (0..m.width()).find(|&e| !m.is_loop(e))?;
                    crate::semimatroid::Semimatroid::from_pointed_matroid(&m, p).ok()
                })
        }

        proptest! {
            #[test]
            fn char_identity(c in arb_semimatroid()) {
                if c.loops() == 0 {
                    let report = char_convolution(&c).unwrap();
                    prop_assert!(report.holds());
                    prop_assert_eq!(char_convolution_by_conjugation(&c).unwrap(), report.lhs);
                }
            }

            #[test]
            fn tutte_identity_all_families(c in arb_semimatroid()) {
                let full = tutte_convolution(&c, TutteIndex::CentralSets).unwrap();
                prop_assert!(full.holds());
                let flats = tutte_convolution(&c, TutteIndex::Flats).unwrap();
                prop_assert!(flats.holds());
                let cyclic = tutte_convolution(&c, TutteIndex::CyclicFlats).unwrap();
                prop_assert!(cyclic.holds());
            }

            #[test]
            fn conjugation_routes(c in arb_semimatroid()) {
                let value = tutte_convolution_by_conjugation(&c).unwrap();
                let sign = if c.rank() % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(value, &c.tutte() * &BiPoly::constant(BigInt::from(sign)));
            }

            #[test]
            fn setting_the_second_variable_to_one(c in arb_semimatroid()) {
                if c.loops() == 0 {
                    // at s = 1 the factorization collapses to the plain
                    // characteristic polynomial
                    let report = char_convolution(&c).unwrap();
                    let one = BigInt::from(1);
                    prop_assert_eq!(report.lhs.set_s(&one), c.characteristic());
                    prop_assert_eq!(report.rhs.set_s(&one), c.characteristic());
                }
            }
        }
    }
}
