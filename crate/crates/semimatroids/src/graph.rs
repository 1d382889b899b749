//! Multigraphs with loops and parallel edges: cycle structure, the cycle
//! matroid, gain labelings with their coloring counts, compatible chromatic
//! polynomials by several routes, and the translation to arrangements whose
//! hyperplanes compare coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::assigning::AssigningMatroid;
use crate::bits;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matroid::Matroid;
use crate::poly::UniPoly;
use crate::semimatroid::Semimatroid;
use crate::{MAX_ENUM, MAX_POINTS};

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// An undirected multigraph on vertices `0..n`; loops and parallel edges
/// are allowed, and edges are indexed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<MultiGraph> {
        if edges.len() > MAX_ENUM {
            return Err(Error::EnumTooLarge(edges.len(), MAX_ENUM));
        }
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) on {vertices} vertices"
                )));
            }
        }
        Ok(MultiGraph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn ground(&self) -> u32 {
        (1u32 << self.edges.len()) - 1
    }

    /// Connected components of the spanning subgraph on the edges in
    /// `mask`; isolated vertices count.
    pub fn components(&self, mask: u32) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        for e in bits::elements(mask) {
            let (u, v) = self.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        (0..self.vertices)
            .filter(|&v| find(&mut parent, v) == v)
            .count()
    }

    /// Rank of an edge subset: vertices minus components of its spanning
    /// subgraph.
    pub fn rank_of(&self, mask: u32) -> u8 {
        (self.vertices - self.components(mask)) as u8
    }

    // A cycle is a nonempty connected edge set in which every supporting
    // vertex has degree two; a loop is a one-edge cycle and a parallel pair
    // is a two-edge cycle.
    fn is_cycle(&self, mask: u32) -> bool {
        if mask == 0 {
            return false;
        }
        let mut deg = vec![0usize; self.vertices];
        for e in bits::elements(mask) {
            let (u, v) = self.edges[e];
            deg[u] += 1;
            deg[v] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            return false;
        }
        let support = deg.iter().filter(|&&d| d > 0).count();
        self.components(mask) == self.vertices - support + 1
    }

    /// All cycle edge sets, in ascending mask order.
    pub fn cycles(&self) -> Vec<u32> {
        bits::submasks(self.ground())
            .filter(|&mask| self.is_cycle(mask))
            .collect()
    }

    /// The matroid whose rank function counts vertices minus components;
    /// its circuits are exactly the cycles.
    pub fn cycle_matroid(&self) -> Result<Matroid> {
        Matroid::from_rank_fn(self.edges.len() as u32, self.ground(), |x| self.rank_of(x))
    }
}

/// Cycle labels over a multigraph: each cycle carries 0 or 1, and an edge
/// set is compatible when every cycle inside it carries 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssigningGraph {
    graph: MultiGraph,
    labels: BTreeMap<u32, u8>,
}

impl AssigningGraph {
    pub fn new(graph: MultiGraph, labels: BTreeMap<u32, u8>) -> Result<AssigningGraph> {
        let cycles = graph.cycles();
        if labels.len() != cycles.len() || cycles.iter().any(|c| !labels.contains_key(c)) {
            return Err(Error::InvalidInput(
                "labels must cover exactly the cycles".into(),
            ));
        }
        if labels.values().any(|&v| v > 1) {
            return Err(Error::InvalidInput("labels must be 0 or 1".into()));
        }
        Ok(AssigningGraph { graph, labels })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn labels(&self) -> &BTreeMap<u32, u8> {
        &self.labels
    }

    pub fn label(&self, cycle: u32) -> Result<u8> {
        self.labels
            .get(&cycle)
            .copied()
            .ok_or(Error::InvalidInput(format!("{cycle} is not a cycle")))
    }

    pub fn is_compatible(&self, mask: u32) -> bool {
        self.labels
            .iter()
            .all(|(&c, &v)| v == 0 || c & mask != c)
    }

    /// Signed sum `sum_X (-1)^|X| t^components(X)` over compatible edge
    /// sets.
    pub fn chromatic(&self) -> UniPoly {
        let mut p = UniPoly::zero();
        for x in bits::submasks(self.graph.ground()) {
            if self.is_compatible(x) {
                let sign = if bits::count(x) % 2 == 0 { 1 } else { -1 };
                p = &p + &UniPoly::monomial(self.graph.components(x) as u32, BigInt::from(sign));
            }
        }
        p
    }

    /// The same labels carried onto the cycle matroid.
    pub fn lift(&self) -> Result<AssigningMatroid> {
        AssigningMatroid::new(self.graph.cycle_matroid()?, self.labels.clone())
    }

    /// `t^components(G)` times the compatible sum of the lifted labels.
    pub fn chromatic_by_matroid(&self) -> Result<UniPoly> {
        let lifted = self.lift()?;
        let shift = UniPoly::monomial(
            self.graph.components(self.graph.ground()) as u32,
            BigInt::from(1),
        );
        Ok(&shift * &lifted.compatible_characteristic())
    }

    /// `t^components(G)` times the Mobius-weighted flat sum of the induced
    /// ground-set structure; requires the compatible family to satisfy the
    /// construction axioms and to have no zero-labeled loop.
    pub fn chromatic_by_mobius(&self) -> Result<UniPoly> {
        let lifted = self.lift()?;
        let c: Semimatroid = lifted.as_semimatroid().map_err(|r| {
            let names: Vec<&str> = r.failures.iter().map(|f| f.axiom()).collect();
            Error::InvalidSemimatroid(names.join(", "))
        })?;
        let shift = UniPoly::monomial(
            self.graph.components(self.graph.ground()) as u32,
            BigInt::from(1),
        );
        Ok(&shift * &c.characteristic_by_mobius()?)
    }
}

/// A multigraph with an orientation and a gain on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainGraph {
    graph: MultiGraph,
    orientation: Vec<(usize, usize)>,
    gains: Vec<BigRational>,
}

impl GainGraph {
    /// Each orientation entry must list the endpoints of the matching edge
    /// as `(tail, head)`.
    pub fn new(
        graph: MultiGraph,
        orientation: Vec<(usize, usize)>,
        gains: Vec<BigRational>,
    ) -> Result<GainGraph> {
        if orientation.len() != graph.size() || gains.len() != graph.size() {
            return Err(Error::InvalidInput(format!(
                "{} orientations and {} gains for {} edges",
                orientation.len(),
                gains.len(),
                graph.size()
            )));
        }
        for (e, (&(t, h), &(u, v))) in orientation.iter().zip(graph.edges()).enumerate() {
            if (t, h) != (u, v) && (t, h) != (v, u) {
                return Err(Error::InvalidInput(format!(
                    "orientation ({t}, {h}) does not match edge {e} = ({u}, {v})"
                )));
            }
        }
        Ok(GainGraph {
            graph,
            orientation,
            gains,
        })
    }

    pub fn from_ints(
        graph: MultiGraph,
        orientation: Vec<(usize, usize)>,
        gains: &[i64],
    ) -> Result<GainGraph> {
        let gains = gains
            .iter()
            .map(|&g| BigRational::from_integer(g.into()))
            .collect();
        GainGraph::new(graph, orientation, gains)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn orientation(&self) -> &[(usize, usize)] {
        &self.orientation
    }

    pub fn gains(&self) -> &[BigRational] {
        &self.gains
    }

    /// One hyperplane per edge: the coordinate of the head minus the
    /// coordinate of the tail equals the gain.  A loop gives a zero normal,
    /// so a zero-gain loop makes the whole ambient space an entry.
    pub fn arrangement(&self) -> Result<Arrangement> {
        let n = self.graph.vertices();
        let mut hps = Vec::new();
        for (&(t, h), g) in self.orientation.iter().zip(&self.gains) {
            let mut normal = vec![BigRational::zero(); n];
            if t != h {
                normal[h] += BigRational::from_integer(1.into());
                normal[t] -= BigRational::from_integer(1.into());
            }
            hps.push(Hyperplane::new(normal, g.clone()));
        }
        Arrangement::rational(n, hps)
    }

    /// Signed gain sum around a cycle, walking from its lowest supporting
    /// vertex along the lowest-indexed unused edge: forward traversal adds
    /// the gain, backward traversal subtracts it.  Reversing the walk flips
    /// the sign, so only vanishing of the sum is direction-free.
    pub fn cycle_gain(&self, cycle: u32) -> Result<BigRational> {
        if !self.graph.is_cycle(cycle) {
            return Err(Error::InvalidInput(format!("{cycle} is not a cycle")));
        }
        let start = bits::elements(cycle)
            .flat_map(|e| {
                let (u, v) = self.graph.edges()[e];
                [u, v]
            })
            .min()
            .expect("nonempty cycle");
        let mut current = start;
        let mut used = 0u32;
        let mut total = BigRational::zero();
        loop {
            let next = bits::elements(cycle & !used).find(|&e| {
                let (u, v) = self.graph.edges()[e];
                u == current || v == current
            });
            let Some(e) = next else { break };
            used |= 1 << e;
            let (t, h) = self.orientation[e];
            if t == h {
                total += &self.gains[e];
            } else if current == t {
                total += &self.gains[e];
                current = h;
            } else {
                total -= &self.gains[e];
                current = t;
            }
        }
        // a cycle is a closed walk through all of its edges
        debug_assert_eq!(used, cycle);
        debug_assert_eq!(current, start);
        Ok(total)
    }

    /// Label each cycle by whether its gain sum is nonzero, cross-checked
    /// against consistency of the corresponding hyperplane subsystem.
    pub fn admissible_assigning(&self) -> Result<AssigningGraph> {
        let arr = self.arrangement()?;
        let mut labels = BTreeMap::new();
        for cyc in self.graph.cycles() {
            let balanced = self.cycle_gain(cyc)?.is_zero();
            if balanced != arr.is_central(cyc)? {
                return Err(Error::CrossCheck(format!(
                    "cycle {cyc}: gain sum and intersection tests disagree"
                )));
            }
            labels.insert(cyc, u8::from(!balanced));
        }
        AssigningGraph::new(self.graph.clone(), labels)
    }

    /// Cycle labels after reducing the gains into a prime field.  The flag
    /// reports a cycle whose gain sum is nonzero over the rationals but
    /// vanishes after reduction.
    pub fn admissible_mod(&self, q: u64) -> Result<(AssigningGraph, bool)> {
        if !linalg::is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let mut labels = BTreeMap::new();
        let mut collapsed = false;
        for cyc in self.graph.cycles() {
            let g = self.cycle_gain(cyc)?;
            let gq = linalg::reduce_mod(&g, q)?;
            if gq == 0 && !g.is_zero() {
                collapsed = true;
            }
            labels.insert(cyc, u8::from(gq != 0));
        }
        Ok((AssigningGraph::new(self.graph.clone(), labels)?, collapsed))
    }

    /// Count maps from vertices to a prime field in which no edge sees the
    /// head-minus-tail difference land exactly on its reduced gain.
    pub fn count_colorings(&self, q: u64) -> Result<u64> {
        if !linalg::is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let n = self.graph.vertices();
        let mut total = 1u64;
        for _ in 0..n {
            total = total
                .checked_mul(q)
                .filter(|&t| t <= MAX_POINTS)
                .ok_or(Error::BudgetExceeded(u64::MAX, MAX_POINTS))?;
        }
        let gains = self
            .gains
            .iter()
            .map(|g| linalg::reduce_mod(g, q))
            .collect::<Result<Vec<u64>>>()?;
        let mut coloring = vec![0u64; n];
        let mut count = 0u64;
        loop {
            let proper = self
                .orientation
                .iter()
                .zip(&gains)
                .all(|(&(t, h), &g)| linalg::fp_sub(coloring[h], coloring[t], q) != g);
            if proper {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(count);
                }
                coloring[i] += 1;
                if coloring[i] == q {
                    coloring[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> MultiGraph {
        MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn triangle_gains(gains: &[i64]) -> GainGraph {
        GainGraph::from_ints(triangle(), vec![(0, 1), (1, 2), (0, 2)], gains).unwrap()
    }

    // two vertices joined by three parallel edges
    fn theta() -> MultiGraph {
        MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn cycles_and_cycle_matroid() {
        let g = triangle();
        assert_eq!(g.cycles(), vec![0b111]);
        assert_eq!(g.components(0), 3);
        assert_eq!(g.components(0b011), 1);
        let m = g.cycle_matroid().unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.circuits(), g.cycles());

        let t = theta();
        assert_eq!(t.cycles(), vec![0b011, 0b101, 0b110]);
        assert_eq!(t.cycle_matroid().unwrap().circuits(), t.cycles());

        let loops = MultiGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(loops.cycles(), vec![0b001, 0b100]);
        assert_eq!(loops.cycle_matroid().unwrap().loops(), 0b101);

        let forest = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(forest.cycles().is_empty());
        assert_eq!(forest.cycle_matroid().unwrap().rank(), 2);
    }

    #[test]
    fn theta_gain_labels() {
        let g = GainGraph::from_ints(theta(), vec![(0, 1), (0, 1), (0, 1)], &[1, 1, 0]).unwrap();
        let a = g.admissible_assigning().unwrap();
        assert_eq!(a.label(0b011).unwrap(), 0);
        assert_eq!(a.label(0b101).unwrap(), 1);
        assert_eq!(a.label(0b110).unwrap(), 1);
    }

    #[test]
    fn orientation_flip_preserves_balance() {
        let g = triangle_gains(&[1, 2, 3]);
        assert!(g.cycle_gain(0b111).unwrap().is_zero());
        let flipped = GainGraph::from_ints(triangle(), vec![(0, 1), (1, 2), (2, 0)], &[1, 2, -3])
            .unwrap();
        assert!(flipped.cycle_gain(0b111).unwrap().is_zero());
    }

    #[test]
    fn balanced_triangle_chromatic() {
        let g = triangle_gains(&[0, 0, 0]);
        let a = g.admissible_assigning().unwrap();
        let chi = a.chromatic();
        assert_eq!(chi, UniPoly::from_pairs(&[(3, 1), (2, -3), (1, 2)]));
        assert_eq!(a.chromatic_by_matroid().unwrap(), chi);
        assert_eq!(a.chromatic_by_mobius().unwrap(), chi);
        assert_eq!(g.count_colorings(3).unwrap(), 6);
        assert_eq!(g.arrangement().unwrap().characteristic().unwrap(), chi);
    }

    #[test]
    fn unbalanced_triangle_chromatic() {
        let g = triangle_gains(&[1, 0, 0]);
        let a = g.admissible_assigning().unwrap();
        assert_eq!(a.label(0b111).unwrap(), 1);
        let chi = a.chromatic();
        assert_eq!(chi, UniPoly::from_pairs(&[(3, 1), (2, -3), (1, 3)]));
        assert_eq!(a.chromatic_by_matroid().unwrap(), chi);
        assert_eq!(g.count_colorings(2).unwrap(), 2);
    }

    #[test]
    fn reduction_can_collapse_a_gain() {
        let g = triangle_gains(&[2, 0, 0]);
        let (a, collapsed) = g.admissible_mod(2).unwrap();
        assert!(collapsed);
        assert_eq!(a.label(0b111).unwrap(), 0);
        assert_eq!(g.count_colorings(2).unwrap(), 0);
        assert_eq!(
            BigInt::from(g.count_colorings(2).unwrap()),
            a.chromatic().eval_int(&BigInt::from(2))
        );
        let (b, plain) = g.admissible_mod(3).unwrap();
        assert!(!plain);
        assert_eq!(b.label(0b111).unwrap(), 1);
    }

    #[test]
    fn loops_constrain_everything_or_nothing() {
        let g = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        let zero = GainGraph::from_ints(g.clone(), vec![(0, 0)], &[0]).unwrap();
        let a = zero.admissible_assigning().unwrap();
        assert!(a.chromatic().is_zero());
        assert_eq!(zero.count_colorings(3).unwrap(), 0);
        assert!(zero
            .arrangement()
            .unwrap()
            .characteristic()
            .unwrap()
            .is_zero());

        let one = GainGraph::from_ints(g, vec![(0, 0)], &[1]).unwrap();
        let b = one.admissible_assigning().unwrap();
        assert_eq!(b.chromatic(), UniPoly::from_pairs(&[(1, 1)]));
        assert_eq!(one.count_colorings(3).unwrap(), 3);
    }

    #[test]
    fn forest_counts_are_products() {
        let path = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let g = GainGraph::from_ints(path, vec![(0, 1), (1, 2)], &[0, 0]).unwrap();
        let a = g.admissible_assigning().unwrap();
        assert_eq!(a.chromatic(), UniPoly::from_pairs(&[(3, 1), (2, -2), (1, 1)]));
        assert_eq!(g.count_colorings(3).unwrap(), 12);
    }

    #[test]
    fn every_cycle_labeling_obeys_the_component_shift() {
        // theta has three cycles, so eight labelings; only those labeling at
        // most one cycle 0, or all three, make valid ground-set structures,
        // but the component-shift identity holds for every labeling
        let t = theta();
        let cycles = t.cycles();
        for bits_choice in 0u32..8 {
            let labels: BTreeMap<u32, u8> = cycles
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, ((bits_choice >> i) & 1) as u8))
                .collect();
            let a = AssigningGraph::new(t.clone(), labels).unwrap();
            assert_eq!(a.chromatic(), a.chromatic_by_matroid().unwrap());
        }
    }

    fn arb_gain_graph() -> impl Strategy<Value = GainGraph> {
        (1usize..=4)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec((0..n, 0..n, proptest::bool::ANY, -2i64..=2), 0..=5),
                )
            })
            .prop_map(|(n, spec)| {
                let mut edges = Vec::new();
                let mut orientation = Vec::new();
                let mut gains = Vec::new();
                for (u, v, flip, g) in spec {
                    edges.push((u, v));
                    orientation.push(if flip { (v, u) } else { (u, v) });
                    gains.push(g);
                }
                let graph = MultiGraph::new(n, edges).unwrap();
                GainGraph::from_ints(graph, orientation, &gains).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn chromatic_routes_agree(g in arb_gain_graph()) {
            let a = g.admissible_assigning().unwrap();
            let chi = a.chromatic();
            prop_assert_eq!(a.chromatic_by_matroid().unwrap(), chi.clone());
            prop_assert_eq!(g.arrangement().unwrap().characteristic().unwrap(), chi.clone());
            if let Ok(mob) = a.chromatic_by_mobius() {
                prop_assert_eq!(mob, chi);
            }
        }

        #[test]
        fn counts_match_reduced_labels(g in arb_gain_graph()) {
            for q in [2u64, 3] {
                let count = g.count_colorings(q).unwrap();
                let (a, _) = g.admissible_mod(q).unwrap();
                prop_assert_eq!(BigInt::from(count), a.chromatic().eval_int(&BigInt::from(q)));
                let arr = g.arrangement().unwrap().reduce_mod(q).unwrap();
                prop_assert_eq!(count, arr.count_points().unwrap());
            }
        }
    }
}
