//! Matroids with 0/1 labels on their circuits.  A subset is compatible
//! when every circuit inside it is labeled 0; the compatible subsets form
//! a simplicial complex that is sometimes, but not always, a semimatroid.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::{BiPoly, UniPoly};
use crate::semimatroid::{verify, AxiomReport, Semimatroid};
use crate::{bits, MAX_ENUM};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// A matroid together with a 0/1 label on each of its circuits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssigningMatroid {
    matroid: Matroid,
    labels: BTreeMap<u32, u8>,
}

impl AssigningMatroid {
    /// Pair a matroid with a labeling of its circuits.  Every circuit must
    /// be labeled, no extra keys are allowed, and labels are 0 or 1.
    pub fn new(matroid: Matroid, labels: BTreeMap<u32, u8>) -> Result<AssigningMatroid> {
        let circuits = matroid.circuits();
        if labels.keys().copied().collect::<Vec<u32>>() != circuits {
            return Err(Error::InvalidInput(
                "labels do not cover exactly the circuits".into(),
            ));
        }
        if labels.values().any(|&v| v > 1) {
            return Err(Error::InvalidInput("labels must be 0 or 1".into()));
        }
        Ok(AssigningMatroid { matroid, labels })
    }

    /// Label every circuit 0.
    pub fn all_zero(matroid: Matroid) -> AssigningMatroid {
        let labels = matroid.circuits().into_iter().map(|c| (c, 0)).collect();
        AssigningMatroid { matroid, labels }
    }

    /// Label every circuit 1.
    pub fn all_one(matroid: Matroid) -> AssigningMatroid {
        let labels = matroid.circuits().into_iter().map(|c| (c, 1)).collect();
        AssigningMatroid { matroid, labels }
    }

    /// The labeling induced by a semimatroid on its rank extension
    /// matroid: a circuit is labeled 0 exactly when it is central.
    pub fn from_semimatroid(c: &Semimatroid) -> Result<AssigningMatroid> {
        let matroid = c.rank_extension_matroid()?;
        let labels = matroid
            .circuits()
            .into_iter()
            .map(|cc| (cc, u8::from(!c.is_central(cc))))
            .collect();
        Ok(AssigningMatroid { matroid, labels })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn labels(&self) -> &BTreeMap<u32, u8> {
        &self.labels
    }

    pub fn label(&self, circuit: u32) -> Result<u8> {
        self.labels
            .get(&circuit)
            .copied()
            .ok_or(Error::InvalidInput(format!("{circuit:b} is not a circuit")))
    }

    /// Circuits labeled 0, ascending.
    pub fn compatible_circuits(&self) -> Vec<u32> {
        self.labels
            .iter()
            .filter(|&(_, &v)| v == 0)
            .map(|(&c, _)| c)
            .collect()
    }

    /// Whether every circuit contained in `x` is labeled 0.
    pub fn is_compatible(&self, x: u32) -> bool {
        x & !self.matroid.ground() == 0
            && self
                .labels
                .iter()
                .all(|(&c, &v)| v == 0 || c & !x != 0)
    }

    /// All compatible subsets with their matroid ranks, ascending.
    pub fn compatible_family(&self) -> Vec<(u32, u8)> {
        debug_assert!(self.matroid.width() as usize <= MAX_ENUM);
        bits::submasks(self.matroid.ground())
            .filter(|&x| self.is_compatible(x))
            .map(|x| (x, self.matroid.rank_of(x)))
            .collect()
    }

    /// Run the semimatroid axioms on the compatible family.
    pub fn family_report(&self) -> AxiomReport {
        verify(
            self.matroid.width(),
            self.matroid.ground(),
            &self.compatible_family(),
        )
    }

    /// The compatible family as a semimatroid, or the axiom report
    /// explaining why it is not one.
    pub fn as_semimatroid(&self) -> std::result::Result<Semimatroid, AxiomReport> {
        let report = self.family_report();
        if !report.is_valid() {
            return Err(report);
        }
        let fam = self.compatible_family();
        Ok(Semimatroid::new(self.matroid.width(), self.matroid.ground(), fam)
            .expect("axioms just verified"))
    }

    /// Signed sum `sum (-1)^|X| t^(r(M) - r(X))` over compatible subsets.
    pub fn compatible_characteristic(&self) -> UniPoly {
        let r = self.matroid.rank() as u32;
        let mut p = UniPoly::zero();
        for (x, rx) in self.compatible_family() {
            let sign = if bits::count(x) % 2 == 0 { 1 } else { -1 };
            p = &p + &UniPoly::monomial(r - rx as u32, BigInt::from(sign));
        }
        p
    }

    /// Corank-nullity sum over compatible subsets.
    pub fn compatible_tutte(&self) -> BiPoly {
        let r = self.matroid.rank() as u32;
        let tm1 = UniPoly::linear(-1, 1);
        let mut acc = BiPoly::zero();
        for (x, rx) in self.compatible_family() {
            let t_part = tm1.pow(r - rx as u32);
            let s_part = tm1.pow(bits::count(x) as u32 - rx as u32);
            acc = &acc + &BiPoly::product_uni(&t_part, &s_part);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimatroid::AxiomFailure;

    /// The four 3-element circuits of the rank-2 uniform matroid on four
    /// elements, in ascending mask order.
    fn u24_circuits() -> Vec<u32> {
        vec![0b0111, 0b1011, 0b1101, 0b1110]
    }

    fn u24_with_zeros(zero_set: &[u32]) -> AssigningMatroid {
        let m = Matroid::uniform(2, 4).unwrap();
        let labels = u24_circuits()
            .into_iter()
            .map(|c| (c, u8::from(!zero_set.contains(&c))))
            .collect();
        AssigningMatroid::new(m, labels).unwrap()
    }

    #[test]
    fn label_validation() {
        let m = Matroid::uniform(2, 4).unwrap();
        // missing circuit
        let labels: BTreeMap<u32, u8> = [(0b0111u32, 0u8)].into_iter().collect();
        assert!(AssigningMatroid::new(m.clone(), labels).is_err());
        // label out of range
        let labels: BTreeMap<u32, u8> =
            u24_circuits().into_iter().map(|c| (c, 2u8)).collect();
        assert!(AssigningMatroid::new(m, labels).is_err());
    }

    #[test]
    fn compatibility_by_contained_circuits() {
        let a = u24_with_zeros(&[0b0111]);
        assert!(a.is_compatible(0b0111));
        assert!(!a.is_compatible(0b1011));
        assert!(!a.is_compatible(0b1111)); // contains labeled-1 circuits
        assert!(a.is_compatible(0b0011));
        assert_eq!(a.compatible_circuits(), vec![0b0111]);
    }

    /// Every one of the sixteen labelings of the four circuits: the family
    /// is a semimatroid exactly when zero or one circuit is labeled 0, or
    /// all four are.
    #[test]
    fn sixteen_labelings_verdicts() {
        let circuits = u24_circuits();
        for pick in 0u32..16 {
            let zeros: Vec<u32> = circuits
                .iter()
                .enumerate()
                .filter(|&(i, _)| pick & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect();
            let a = u24_with_zeros(&zeros);
            let expect_semimatroid = zeros.len() <= 1 || zeros.len() == 4;

            // the family is everything except supersets of a 1-circuit
            let expected: Vec<u32> = (0u32..16)
                .filter(|&x| {
                    circuits
                        .iter()
                        .all(|&c| c & !x != 0 || zeros.contains(&c))
                })
                .collect();
            let family: Vec<u32> = a.compatible_family().iter().map(|&(x, _)| x).collect();
            assert_eq!(family, expected);

            let report = a.family_report();
            assert_eq!(report.is_valid(), expect_semimatroid, "labels {pick:04b}");
            if expect_semimatroid {
                let s = a.as_semimatroid().unwrap();
                assert_eq!(s.characteristic(), a.compatible_characteristic());
                assert_eq!(s.tutte(), a.compatible_tutte());
            } else {
                // the reported witness must genuinely break its axiom
                let rank = |x: u32| {
                    a.is_compatible(x).then(|| a.matroid().rank_of(x))
                };
                let f = report.failures.first().unwrap();
                match *f {
                    AxiomFailure::MissingUnion { x, y } => {
                        assert_eq!(rank(x).unwrap(), rank(x & y).unwrap());
                        assert!(rank(x | y).is_none());
                    }
                    AxiomFailure::MissingExtension { x, y } => {
                        assert!(rank(x).unwrap() < rank(y).unwrap());
                        for e in crate::bits::elements(y & !x) {
                            assert!(rank(x | 1 << e).is_none());
                        }
                    }
                    ref other => panic!("unexpected failure kind {other:?}"),
                }
            }
        }
    }

    #[test]
    fn one_zero_characteristic() {
        let a = u24_with_zeros(&[0b0111]);
        assert_eq!(
            a.compatible_characteristic(),
            UniPoly::from_pairs(&[(2, 1), (1, -4), (0, 5)])
        );
        let a = u24_with_zeros(&[]);
        assert_eq!(
            a.compatible_characteristic(),
            UniPoly::from_pairs(&[(2, 1), (1, -4), (0, 6)])
        );
        // all zeros: the whole matroid
        let zeros = u24_circuits();
        let a = u24_with_zeros(&zeros);
        assert_eq!(
            a.compatible_characteristic(),
            Matroid::uniform(2, 4).unwrap().characteristic()
        );
        assert_eq!(a.compatible_tutte(), Matroid::uniform(2, 4).unwrap().tutte());
    }

    #[test]
    fn semimatroid_round_trip() {
        // compatible family of the induced labeling recovers the original
        let mut pairs = Vec::new();
        for x in 0u32..16 {
            if crate::bits::count(x) <= 2 {
                pairs.push((x, crate::bits::count(x) as u8));
            }
        }
        let c = Semimatroid::new(4, 0b1111, pairs).unwrap();
        let a = AssigningMatroid::from_semimatroid(&c).unwrap();
        assert_eq!(a.matroid(), &Matroid::uniform(2, 4).unwrap());
        assert_eq!(a.labels().values().copied().collect::<Vec<u8>>(), vec![1, 1, 1, 1]);
        let back = a.as_semimatroid().unwrap();
        assert_eq!(back, c);
        // polynomials transfer
        assert_eq!(a.compatible_characteristic(), c.characteristic());
        assert_eq!(a.compatible_tutte(), c.tutte());
    }

    mod properties {
        use super::*;
        use num_bigint::BigInt;
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
                    Semimatroid::from_pointed_matroid(&m, p).ok()
                })
        }

        proptest! {
            #[test]
            fn induced_labeling_round_trips(c in arb_semimatroid()) {
                let a = AssigningMatroid::from_semimatroid(&c).unwrap();
                let back = a.as_semimatroid().expect("families from semimatroids stay semimatroids");
                prop_assert_eq!(back, c.clone());
                prop_assert_eq!(a.compatible_characteristic(), c.characteristic());
                prop_assert_eq!(a.compatible_tutte(), c.tutte());
            }

            #[test]
            fn circuits_transfer(c in arb_semimatroid()) {
                let a = AssigningMatroid::from_semimatroid(&c).unwrap();
                // circuits of the family are the label-0 circuits
                prop_assert_eq!(c.circuits(), a.compatible_circuits());
            }
        }
    }
}
