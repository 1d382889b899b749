//! Semimatroids: a downward-closed family of "central" subsets of a finite
//! ground set together with a rank function satisfying submodular-type
//! axioms.  This module carries the combinatorial core: minors, flats and
//! their semilattice, circuits, several independent routes to the
//! characteristic and corank-nullity polynomials, Mobius values, and the
//! broken-circuit counts.

use crate::bits;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::{whitney_sequence, BiPoly, UniPoly, WhitneySeq};
use crate::poset::{mobius_table, FinitePoset};
use crate::MAX_GROUND;
use num_bigint::BigInt;
use std::collections::HashMap;

/// Why a candidate family fails to be a semimatroid, with the first
/// offending sets found in ascending scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    /// Structural problems: duplicate sets, sets outside the ground set,
    /// an empty family, or an oversized ground set.
    Malformed(String),
    /// `set` is central but `subset` (one element smaller) is not.
    NotDownwardClosed { set: u32, subset: u32 },
    /// The rank of `set` exceeds its cardinality.
    RankTooLarge { set: u32 },
    /// `sub` is contained in `sup` but has larger rank.
    NotMonotone { sub: u32, sup: u32 },
    /// `x`, `y` and their union are central but rank is not submodular.
    NotSubmodular { x: u32, y: u32 },
    /// `r(x) = r(x intersect y)` yet the union of `x` and `y` is missing.
    MissingUnion { x: u32, y: u32 },
    /// `r(x) < r(y)` yet no element of `y - x` extends `x` centrally.
    MissingExtension { x: u32, y: u32 },
}

impl AxiomFailure {
    /// Stable name of the violated requirement.
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomFailure::Malformed(_) => "well-formed",
            AxiomFailure::NotDownwardClosed { .. } => "downward-closed",
            AxiomFailure::RankTooLarge { .. } => "rank-within-size",
            AxiomFailure::NotMonotone { .. } => "rank-monotone",
            AxiomFailure::NotSubmodular { .. } => "rank-submodular",
            AxiomFailure::MissingUnion { .. } => "equal-rank-union",
            AxiomFailure::MissingExtension { .. } => "extension-step",
        }
    }
}

/// Outcome of checking all axioms, keeping at most one witness per axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passed(&self, axiom: &str) -> bool {
        self.failures.iter().all(|f| f.axiom() != axiom)
    }

    /// All axiom names in the order they are checked.
    pub fn axiom_names() -> [&'static str; 7] {
        [
            "well-formed",
            "downward-closed",
            "rank-within-size",
            "rank-monotone",
            "rank-submodular",
            "equal-rank-union",
            "extension-step",
        ]
    }
}

/// Check whether `(ground, pairs)` forms a semimatroid; `pairs` lists each
/// central set with its rank.  All axioms are scanned even after one fails,
/// so the report names every broken requirement.
pub fn verify(width: u32, ground: u32, pairs: &[(u32, u8)]) -> AxiomReport {
    let mut failures = Vec::new();
    if width as usize > MAX_GROUND {
        failures.push(AxiomFailure::Malformed(format!(
            "ground set width {width} exceeds {MAX_GROUND}"
        )));
        return AxiomReport { failures };
    }
    if ground >> width != 0 {
        failures.push(AxiomFailure::Malformed(
            "ground mask has bits beyond the stated width".into(),
        ));
        return AxiomReport { failures };
    }
    if pairs.is_empty() {
        failures.push(AxiomFailure::Malformed("the family is empty".into()));
        return AxiomReport { failures };
    }
    let mut sorted: Vec<(u32, u8)> = pairs.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            failures.push(AxiomFailure::Malformed(format!(
                "set {:b} listed twice",
                w[0].0
            )));
            return AxiomReport { failures };
        }
    }
    if let Some(&(x, _)) = sorted.iter().find(|&&(x, _)| x & !ground != 0) {
        failures.push(AxiomFailure::Malformed(format!(
            "central set {x:b} is not contained in the ground set"
        )));
        return AxiomReport { failures };
    }

    let masks: Vec<u32> = sorted.iter().map(|&(x, _)| x).collect();
    let rank = |x: u32| -> Option<u8> {
        masks.binary_search(&x).ok().map(|i| sorted[i].1)
    };

    // downward closure, including the empty set
    'down: for &(x, _) in &sorted {
        if x == 0 {
            continue;
        }
        for e in bits::elements(x) {
            let sub = x & !(1 << e);
            if rank(sub).is_none() {
                failures.push(AxiomFailure::NotDownwardClosed { set: x, subset: sub });
                break 'down;
            }
        }
    }
    if rank(0).is_none() {
        let x = masks[0];
        failures.push(AxiomFailure::NotDownwardClosed { set: x, subset: 0 });
    }

    if let Some(&(x, _)) = sorted
        .iter()
        .find(|&&(x, r)| r as usize > bits::count(x))
    {
        failures.push(AxiomFailure::RankTooLarge { set: x });
    }

    'mono: for &(x, rx) in &sorted {
        for &(y, ry) in &sorted {
            if x & !y == 0 && rx > ry {
                failures.push(AxiomFailure::NotMonotone { sub: x, sup: y });
                break 'mono;
            }
        }
    }

    'sub: for &(x, rx) in &sorted {
        for &(y, ry) in &sorted {
            let (Some(ri), Some(ru)) = (rank(x & y), rank(x | y)) else {
                continue;
            };
            if ri as u16 + ru as u16 > rx as u16 + ry as u16 {
                failures.push(AxiomFailure::NotSubmodular { x, y });
                break 'sub;
            }
        }
    }

    'uni: for &(x, rx) in &sorted {
        for &(y, _) in &sorted {
            if rank(x & y) == Some(rx) && rank(x | y).is_none() {
                failures.push(AxiomFailure::MissingUnion { x, y });
                break 'uni;
            }
        }
    }

    'ext: for &(x, rx) in &sorted {
        for &(y, ry) in &sorted {
            if rx < ry && bits::elements(y & !x).all(|e| rank(x | 1 << e).is_none()) {
                failures.push(AxiomFailure::MissingExtension { x, y });
                break 'ext;
            }
        }
    }

    AxiomReport { failures }
}

/// A semimatroid given by its central sets and their ranks.
///
/// The ground set is a bitmask over `0..width`, so minors keep the labels
/// of the original elements.  `central` is sorted ascending and `ranks`
/// runs parallel to it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Semimatroid {
    width: u32,
    ground: u32,
    central: Vec<u32>,
    ranks: Vec<u8>,
}

impl Semimatroid {
    /// Validating constructor.
    pub fn new(width: u32, ground: u32, pairs: Vec<(u32, u8)>) -> Result<Semimatroid> {
        let report = verify(width, ground, &pairs);
        if let Some(f) = report.failures.first() {
            return Err(Error::InvalidSemimatroid(format!("{f:?}")));
        }
        let mut sorted = pairs;
        sorted.sort_unstable();
        Ok(Semimatroid {
            width,
            ground,
            central: sorted.iter().map(|&(x, _)| x).collect(),
            ranks: sorted.iter().map(|&(_, r)| r).collect(),
        })
    }

    /// Constructor for internally derived families that are semimatroids
    /// by construction (minors of valid ones, full matroid complexes).
    pub(crate) fn new_unchecked(
        width: u32,
        ground: u32,
        central: Vec<u32>,
        ranks: Vec<u8>,
    ) -> Semimatroid {
        debug_assert!(central.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(central.len(), ranks.len());
        Semimatroid { width, ground, central, ranks }
    }

    /// Every subset of the ground set is central, with matroid ranks.
    pub fn from_matroid(m: &Matroid) -> Semimatroid {
        let central: Vec<u32> = bits::submasks(m.ground()).collect();
        let ranks = central.iter().map(|&x| m.rank_of(x)).collect();
        Semimatroid::new_unchecked(m.width(), m.ground(), central, ranks)
    }

    /// The semimatroid carved out of a matroid by a distinguished non-loop
    /// element `p`: central sets are those whose closure avoids `p`, with
    /// unchanged ranks.
    pub fn from_pointed_matroid(n: &Matroid, p: u32) -> Result<Semimatroid> {
        if n.ground() & (1 << p) == 0 {
            return Err(Error::BadElement(p as usize));
        }
        if n.is_loop(p) {
            return Err(Error::InvalidInput(
                "the distinguished element is a loop, so no set is central".into(),
            ));
        }
        let ground = n.ground() & !(1 << p);
        let mut central = Vec::new();
        let mut ranks = Vec::new();
        for x in bits::submasks(ground) {
            if n.rank_of(x | 1 << p) == n.rank_of(x) + 1 {
                central.push(x);
                ranks.push(n.rank_of(x));
            }
        }
        Ok(Semimatroid::new_unchecked(n.width(), ground, central, ranks))
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

    /// Central sets in ascending mask order.
    pub fn central(&self) -> &[u32] {
        &self.central
    }

    /// Central sets paired with their ranks.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u8)> + '_ {
        self.central.iter().copied().zip(self.ranks.iter().copied())
    }

    pub fn is_central(&self, x: u32) -> bool {
        self.central.binary_search(&x).is_ok()
    }

    pub fn rank_of(&self, x: u32) -> Result<u8> {
        self.central
            .binary_search(&x)
            .map(|i| self.ranks[i])
            .map_err(|_| Error::NotCentral(x))
    }

    fn r(&self, x: u32) -> u8 {
        self.rank_of(x).expect("central set")
    }

    /// Rank of the whole semimatroid (shared by all maximal central sets).
    pub fn rank(&self) -> u8 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn is_independent(&self, x: u32) -> bool {
        self.rank_of(x).map(|r| r as usize == bits::count(x)) == Ok(true)
    }

    /// Elements whose addition to the central set `x` keeps it central
    /// without raising rank.  Always contains `x` itself.
    pub fn closure(&self, x: u32) -> Result<u32> {
        let rx = self.rank_of(x)?;
        let mut cl = x;
        for e in bits::elements(self.ground & !x) {
            if self.rank_of(x | 1 << e) == Ok(rx) {
                cl |= 1 << e;
            }
        }
        Ok(cl)
    }

    pub fn is_flat(&self, x: u32) -> bool {
        self.closure(x) == Ok(x)
    }

    /// All flats in ascending mask order.
    pub fn flats(&self) -> Vec<u32> {
        self.central
            .iter()
            .copied()
            .filter(|&x| self.closure(x) == Ok(x))
            .collect()
    }

    /// The flats ordered by inclusion, with the masks indexing the poset.
    pub fn flat_poset(&self) -> Result<(FinitePoset, Vec<u32>)> {
        let flats = self.flats();
        let poset = FinitePoset::from_subset_family(&flats)?;
        Ok((poset, flats))
    }

    /// Mask of central singletons of rank zero.
    pub fn loops(&self) -> u32 {
        let mut l = 0;
        for e in bits::elements(self.ground) {
            if self.rank_of(1 << e) == Ok(0) {
                l |= 1 << e;
            }
        }
        l
    }

    /// Maximal independent central sets.
    pub fn bases(&self) -> Vec<u32> {
        self.central
            .iter()
            .copied()
            .filter(|&x| {
                self.is_independent(x)
                    && bits::elements(self.ground & !x)
                        .all(|e| !self.is_independent(x | 1 << e))
            })
            .collect()
    }

    /// Mask of elements contained in every basis.
    pub fn bridges(&self) -> u32 {
        self.bases().iter().fold(self.ground, |acc, &b| acc & b)
    }

    /// Minimal dependent central sets.
    pub fn circuits(&self) -> Vec<u32> {
        self.central
            .iter()
            .copied()
            .filter(|&x| {
                x != 0
                    && !self.is_independent(x)
                    && bits::elements(x).all(|e| self.is_independent(x & !(1 << e)))
            })
            .collect()
    }

    /// Remove the elements of `d` from the ground set; central sets
    /// meeting `d` are dropped, ranks are unchanged.
    pub fn delete(&self, d: u32) -> Semimatroid {
        let d = d & self.ground;
        let mut central = Vec::new();
        let mut ranks = Vec::new();
        for (x, r) in self.pairs() {
            if x & d == 0 {
                central.push(x);
                ranks.push(r);
            }
        }
        Semimatroid::new_unchecked(self.width, self.ground & !d, central, ranks)
    }

    /// Restrict to the elements of `x`.
    pub fn restriction(&self, x: u32) -> Semimatroid {
        self.delete(self.ground & !x)
    }

    /// Contract the central set `x`: the sets disjoint from `x` whose
    /// union with `x` is central, with ranks shifted down by `r(x)`.
    pub fn contraction(&self, x: u32) -> Result<Semimatroid> {
        let rx = self.rank_of(x)?;
        let mut central = Vec::new();
        let mut ranks = Vec::new();
        for (z, rz) in self.pairs() {
            if z & x == x {
                central.push(z & !x);
                ranks.push(rz - rx);
            }
        }
        Ok(Semimatroid::new_unchecked(
            self.width,
            self.ground & !x,
            central,
            ranks,
        ))
    }

    /// Signed sum `sum_X (-1)^|X| t^(r - r(X))` over central sets.
    pub fn characteristic(&self) -> UniPoly {
        let r = self.rank() as u32;
        let mut p = UniPoly::zero();
        for (x, rx) in self.pairs() {
            let sign = if bits::count(x) % 2 == 0 { 1 } else { -1 };
            p = &p + &UniPoly::monomial(r - rx as u32, BigInt::from(sign));
        }
        p
    }

    /// Corank-nullity sum `sum_X (t-1)^(r - r(X)) (s-1)^(|X| - r(X))` over
    /// central sets.
    pub fn tutte(&self) -> BiPoly {
        let r = self.rank() as u32;
        let tm1 = UniPoly::linear(-1, 1);
        let mut acc = BiPoly::zero();
        for (x, rx) in self.pairs() {
            let t_part = tm1.pow(r - rx as u32);
            let s_part = tm1.pow(bits::count(x) as u32 - rx as u32);
            acc = &acc + &BiPoly::product_uni(&t_part, &s_part);
        }
        acc
    }

    /// Deletion-contraction evaluation of the corank-nullity polynomial,
    /// always resolving the lowest-indexed remaining element.
    pub fn tutte_by_recursion(&self) -> BiPoly {
        let mut memo = HashMap::new();
        self.tutte_rec(&mut memo)
    }

    fn tutte_rec(&self, memo: &mut HashMap<Semimatroid, BiPoly>) -> BiPoly {
        if self.ground == 0 {
            return BiPoly::one();
        }
        if let Some(v) = memo.get(self) {
            return v.clone();
        }
        let e = bits::lowest(self.ground);
        let em = 1u32 << e;
        let res = if !self.is_central(em) {
            self.delete(em).tutte_rec(memo)
        } else if self.r(em) == 0 {
            let s = BiPoly::monomial(0, 1, BigInt::from(1));
            &s * &self.contraction(em).expect("loop is central").tutte_rec(memo)
        } else if self.bridges() & em != 0 {
            let t = BiPoly::monomial(1, 0, BigInt::from(1));
            &t * &self.delete(em).tutte_rec(memo)
        } else {
            let del = self.delete(em).tutte_rec(memo);
            let con = self.contraction(em).expect("checked central").tutte_rec(memo);
            &del + &con
        };
        memo.insert(self.clone(), res.clone());
        res
    }

    /// Deletion-contraction evaluation of the characteristic polynomial.
    pub fn characteristic_by_recursion(&self) -> UniPoly {
        let mut memo = HashMap::new();
        self.chi_rec(&mut memo)
    }

    fn chi_rec(&self, memo: &mut HashMap<Semimatroid, UniPoly>) -> UniPoly {
        if self.ground == 0 {
            return UniPoly::one();
        }
        if let Some(v) = memo.get(self) {
            return v.clone();
        }
        let e = bits::lowest(self.ground);
        let em = 1u32 << e;
        let res = if !self.is_central(em) {
            self.delete(em).chi_rec(memo)
        } else if self.r(em) == 0 {
            UniPoly::zero()
        } else if self.bridges() & em != 0 {
            &UniPoly::linear(-1, 1) * &self.delete(em).chi_rec(memo)
        } else {
            let del = self.delete(em).chi_rec(memo);
            let con = self.contraction(em).expect("checked central").chi_rec(memo);
            &del - &con
        };
        memo.insert(self.clone(), res.clone());
        res
    }

    /// Mobius value of the interval `[x, y]` in the poset of flats,
    /// computed by the signed count of central sets between `x` and `y`
    /// whose closure is `y`, and cross-checked against the recursive
    /// definition on the poset.
    pub fn mobius(&self, x: u32, y: u32) -> Result<BigInt> {
        if !self.is_flat(x) {
            return Err(Error::NotAFlat(x));
        }
        if !self.is_flat(y) {
            return Err(Error::NotAFlat(y));
        }
        if x & !y != 0 {
            return Err(Error::InvalidInput(
                "first flat is not contained in the second".into(),
            ));
        }
        let mut direct = BigInt::from(0);
        for z in self.central.iter().copied() {
            if z & x == x && z & !y == 0 && self.closure(z) == Ok(y) {
                let sign = if bits::count(z & !x) % 2 == 0 { 1 } else { -1 };
                direct += sign;
            }
        }
        let (poset, flats) = self.flat_poset()?;
        let xi = flats.binary_search(&x).expect("flat");
        let yi = flats.binary_search(&y).expect("flat");
        let table = mobius_table(&poset);
        let recursive = table.get(xi, yi);
        if direct != recursive {
            return Err(Error::CrossCheck(format!(
                "mobius({x:b},{y:b}): direct {direct} vs recursive {recursive}"
            )));
        }
        Ok(direct)
    }

    /// Characteristic polynomial as a Mobius-weighted sum over flats.
    /// Requires a loopless family.
    pub fn characteristic_by_mobius(&self) -> Result<UniPoly> {
        if self.loops() != 0 {
            return Err(Error::HasLoops);
        }
        let (poset, flats) = self.flat_poset()?;
        let table = mobius_table(&poset);
        let bottom = flats.binary_search(&0).expect("empty set is a flat");
        let r = self.rank() as u32;
        let mut p = UniPoly::zero();
        for (i, &f) in flats.iter().enumerate() {
            let mu = table.get(bottom, i);
            p = &p + &UniPoly::monomial(r - self.r(f) as u32, mu);
        }
        Ok(p)
    }

    /// Unsigned Whitney numbers read off the characteristic polynomial.
    pub fn whitney_numbers(&self) -> Result<WhitneySeq> {
        whitney_sequence(&self.characteristic(), self.rank() as usize)
    }

    /// Circuits with their smallest element removed, where "smallest"
    /// follows `order` (a permutation of the ground elements, most
    /// preferred first).  Deduplicated, ascending.
    pub fn broken_circuits(&self, order: &[usize]) -> Result<Vec<u32>> {
        self.check_order(order)?;
        let mut out: Vec<u32> = self
            .circuits()
            .into_iter()
            .map(|c| {
                let min = order
                    .iter()
                    .copied()
                    .find(|&e| c & (1 << e) != 0)
                    .expect("circuit is nonempty");
                c & !(1 << min)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Central sets containing no broken circuit, ascending.
    pub fn nbc_sets(&self, order: &[usize]) -> Result<Vec<u32>> {
        let broken = self.broken_circuits(order)?;
        Ok(self
            .central
            .iter()
            .copied()
            .filter(|&x| broken.iter().all(|&b| b & !x != 0))
            .collect())
    }

    /// How many broken-circuit-free central sets there are of each size,
    /// indexed `0 ..= rank`.
    pub fn nbc_counts(&self, order: &[usize]) -> Result<Vec<u64>> {
        let sets = self.nbc_sets(order)?;
        let mut counts = vec![0u64; self.rank() as usize + 1];
        for x in sets {
            let k = bits::count(x);
            if k >= counts.len() {
                return Err(Error::CrossCheck(format!(
                    "broken-circuit-free set {x:b} is larger than the rank"
                )));
            }
            counts[k] += 1;
        }
        Ok(counts)
    }

    fn check_order(&self, order: &[usize]) -> Result<()> {
        let mut seen = 0u32;
        for &e in order {
            if e >= 32 || self.ground & (1 << e) == 0 || seen & (1 << e) != 0 {
                return Err(Error::InvalidInput(
                    "ordering is not a permutation of the ground elements".into(),
                ));
            }
            seen |= 1 << e;
        }
        if seen != self.ground {
            return Err(Error::InvalidInput(
                "ordering does not cover the ground elements".into(),
            ));
        }
        Ok(())
    }

    /// Ascending element order, the default tie-break everywhere.
    pub fn default_order(&self) -> Vec<usize> {
        bits::elements(self.ground).collect()
    }

    /// The matroid on the same ground set whose rank of `X` is the largest
    /// rank of a central subset of `X`.
    pub fn rank_extension_matroid(&self) -> Result<Matroid> {
        let mut table: HashMap<u32, u8> = HashMap::new();
        for x in bits::submasks(self.ground) {
            let mut best = self.rank_of(x).unwrap_or(0);
            for e in bits::elements(x) {
                best = best.max(table[&(x & !(1 << e))]);
            }
            table.insert(x, best);
        }
        Matroid::from_rank_fn(self.width, self.ground, |x| table[&x])
    }
}
