//! Affine hyperplane arrangements with exact arithmetic over the rationals
//! or a prime field: central subsets and their ranks, induced ground-set
//! structures, polynomial invariants by independent routes, chart-based
//! restrictions, circuit vectors, discriminantal arrangements with the
//! classification of parallel translations, and brute-force point counts.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::assigning::AssigningMatroid;
use crate::bits;
use crate::convolution::ConvolutionReport;
use crate::error::{Error, Result};
use crate::linalg::{self, AffineSpaceQ};
use crate::matroid::Matroid;
use crate::poly::{BiPoly, UniPoly};
use crate::poset::{mobius_table, FinitePoset};
use crate::semimatroid::Semimatroid;
use crate::{MAX_ENUM, MAX_POINTS};

/// Coefficient field of an arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

/// A single affine hyperplane `normal . x = offset`.  A zero normal is
/// allowed: with a zero offset the solution set is the whole space, with a
/// nonzero offset it is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<BigRational>,
    pub offset: BigRational,
}

impl Hyperplane {
    pub fn new(normal: Vec<BigRational>, offset: BigRational) -> Hyperplane {
        Hyperplane { normal, offset }
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane {
            normal: normal
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
            offset: BigRational::from_integer(offset.into()),
        }
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn next_prime(mut b: u64) -> u64 {
    loop {
        b += 1;
        if linalg::is_prime(b) {
            return b;
        }
    }
}

/// Index family for the corank-nullity convolution of an arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcfIndex {
    CentralSets,
    Flats,
}

/// A translation stratum of a linear arrangement: the flat of the
/// discriminantal arrangement, one representative offset vector, and the
/// structures that representative produces.
#[derive(Clone, Debug)]
pub struct TranslationClass {
    pub flat: u32,
    pub representative: Vec<BigRational>,
    pub semimatroid: Semimatroid,
    pub assigning: AssigningMatroid,
}

/// An indexed list of hyperplanes in a fixed ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: FieldSpec,
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(field: FieldSpec, dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        if hyperplanes.len() > MAX_ENUM {
            return Err(Error::EnumTooLarge(hyperplanes.len(), MAX_ENUM));
        }
        for h in &hyperplanes {
            if h.normal.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "normal of length {} in ambient dimension {}",
                    h.normal.len(),
                    dim
                )));
            }
        }
        if let FieldSpec::Prime(p) = field {
            if !linalg::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            for h in &hyperplanes {
                for v in h.normal.iter().chain(std::iter::once(&h.offset)) {
                    linalg::reduce_mod(v, p)?;
                }
            }
        }
        Ok(Arrangement {
            field,
            dim,
            hyperplanes,
        })
    }

    pub fn rational(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        Arrangement::new(FieldSpec::Rational, dim, hyperplanes)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn ground(&self) -> u32 {
        (1u32 << self.hyperplanes.len()) - 1
    }

    pub fn offsets(&self) -> Vec<BigRational> {
        self.hyperplanes.iter().map(|h| h.offset.clone()).collect()
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if mask & !self.ground() != 0 {
            return Err(Error::NotInGround(mask));
        }
        Ok(())
    }

    fn require_rational(&self) -> Result<()> {
        if self.field != FieldSpec::Rational {
            return Err(Error::WrongField("rational entries required"));
        }
        Ok(())
    }

    fn require_linear(&self) -> Result<()> {
        if self.hyperplanes.iter().any(|h| !h.offset.is_zero()) {
            return Err(Error::NotCentralArrangement);
        }
        Ok(())
    }

    fn system_q(&self, mask: u32) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for e in bits::elements(mask) {
            a.push(self.hyperplanes[e].normal.clone());
            b.push(self.hyperplanes[e].offset.clone());
        }
        (a, b)
    }

    fn system_fp(&self, mask: u32, p: u64) -> Result<(Vec<Vec<u64>>, Vec<u64>)> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for e in bits::elements(mask) {
            let h = &self.hyperplanes[e];
            a.push(
                h.normal
                    .iter()
                    .map(|v| linalg::reduce_mod(v, p))
                    .collect::<Result<Vec<u64>>>()?,
            );
            b.push(linalg::reduce_mod(&h.offset, p)?);
        }
        Ok((a, b))
    }

    fn normal_columns(&self) -> Vec<Vec<BigRational>> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    /// Rank of the full normal matrix; equals the top rank of the induced
    /// central-set family, because any independent set of normals is
    /// consistent whatever its offsets.
    pub fn rank(&self) -> Result<u8> {
        let normals = self.normal_columns();
        let r = match self.field {
            FieldSpec::Rational => linalg::rank_q(&normals),
            FieldSpec::Prime(p) => {
                let rows = normals
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| linalg::reduce_mod(v, p))
                            .collect::<Result<Vec<u64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                linalg::rank_fp(&rows, p)
            }
        };
        Ok(r as u8)
    }

    // Consistency and rank in one pass: `None` when the subsystem has no
    // solution, otherwise the rank of its coefficient rows.
    fn central_rank(&self, mask: u32) -> Result<Option<u8>> {
        if mask == 0 {
            return Ok(Some(0));
        }
        match self.field {
            FieldSpec::Rational => {
                let (a, b) = self.system_q(mask);
                Ok(linalg::solve_q(&a, &b).map(|s| (self.dim - s.dim()) as u8))
            }
            FieldSpec::Prime(p) => {
                let (a, b) = self.system_fp(mask, p)?;
                Ok(linalg::solve_fp(&a, &b, p).map(|s| (self.dim - s.basis.len()) as u8))
            }
        }
    }

    pub fn is_central(&self, mask: u32) -> Result<bool> {
        self.check_mask(mask)?;
        Ok(self.central_rank(mask)?.is_some())
    }

    /// Rank of a central subset: the codimension of its common intersection.
    pub fn rank_of(&self, mask: u32) -> Result<u8> {
        self.check_mask(mask)?;
        self.central_rank(mask)?.ok_or(Error::NotCentral(mask))
    }

    /// Every consistent subset with its rank, in ascending mask order.
    pub fn central_family(&self) -> Result<Vec<(u32, u8)>> {
        let mut out = Vec::new();
        for mask in 0..=self.ground() {
            if let Some(r) = self.central_rank(mask)? {
                out.push((mask, r));
            }
        }
        Ok(out)
    }

    /// The induced ground-set structure: central subsets with their ranks,
    /// validated against the construction axioms.
    pub fn semimatroid(&self) -> Result<Semimatroid> {
        let pairs = self.central_family()?;
        Semimatroid::new(self.hyperplanes.len() as u32, self.ground(), pairs)
    }

    /// Signed sum `sum_X (-1)^|X| t^dim(intersection of X)` over central
    /// subsets.
    pub fn characteristic(&self) -> Result<UniPoly> {
        let mut p = UniPoly::zero();
        for (x, rx) in self.central_family()? {
            let sign = if bits::count(x) % 2 == 0 { 1 } else { -1 };
            p = &p + &UniPoly::monomial(self.dim as u32 - rx as u32, BigInt::from(sign));
        }
        Ok(p)
    }

    /// Corank-nullity sum over central subsets.
    pub fn tutte(&self) -> Result<BiPoly> {
        let fam = self.central_family()?;
        let r = fam.iter().map(|&(_, rx)| rx).max().unwrap_or(0) as u32;
        let tm1 = UniPoly::linear(-1, 1);
        let mut acc = BiPoly::zero();
        for (x, rx) in fam {
            let t_part = tm1.pow(r - rx as u32);
            let s_part = tm1.pow(bits::count(x) as u32 - rx as u32);
            acc = &acc + &BiPoly::product_uni(&t_part, &s_part);
        }
        Ok(acc)
    }

    /// Indices whose hyperplanes contain the common intersection of a
    /// central subset.
    pub fn closure(&self, mask: u32) -> Result<u32> {
        let r = self.rank_of(mask)?;
        let mut cl = mask;
        for e in bits::elements(self.ground() & !mask) {
            if self.central_rank(mask | (1 << e))? == Some(r) {
                cl |= 1 << e;
            }
        }
        Ok(cl)
    }

    pub fn is_flat(&self, mask: u32) -> Result<bool> {
        self.check_mask(mask)?;
        match self.central_rank(mask)? {
            None => Ok(false),
            Some(_) => Ok(self.closure(mask)? == mask),
        }
    }

    /// All flats, grown breadth-first from the closure of the empty set by
    /// single-element extensions.  Avoids scanning the full power set, which
    /// matters for discriminantal arrangements with many hyperplanes.
    pub fn flats(&self) -> Result<Vec<u32>> {
        let bottom = self.closure(0)?;
        let mut seen = BTreeSet::new();
        seen.insert(bottom);
        let mut queue = vec![bottom];
        while let Some(f) = queue.pop() {
            for e in bits::elements(self.ground() & !f) {
                let x = f | (1 << e);
                if self.central_rank(x)?.is_some() {
                    let g = self.closure(x)?;
                    if seen.insert(g) {
                        queue.push(g);
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Flats ordered as intersections: reverse inclusion of subspaces is
    /// inclusion of index sets.
    pub fn intersection_poset(&self) -> Result<(Vec<u32>, FinitePoset)> {
        let flats = self.flats()?;
        let poset = FinitePoset::from_subset_family(&flats)?;
        Ok((flats, poset))
    }

    /// Mobius-weighted sum `sum_W mu(bottom, W) t^dim(W)` over the
    /// intersection poset.  Requires that no hyperplane be the whole space:
    /// such an entry makes the signed subset sum vanish while this sum does
    /// not.
    pub fn characteristic_by_mobius(&self) -> Result<UniPoly> {
        if self.closure(0)? != 0 {
            return Err(Error::HasLoops);
        }
        let (flats, poset) = self.intersection_poset()?;
        let mu = mobius_table(&poset);
        let bottom = flats.iter().position(|&f| f == 0).expect("bottom flat");
        let mut p = UniPoly::zero();
        for (i, &f) in flats.iter().enumerate() {
            let rf = self.rank_of(f)? as u32;
            p = &p + &UniPoly::monomial(self.dim as u32 - rf, mu.get(bottom, i));
        }
        Ok(p)
    }

    /// The sub-arrangement indexed by `mask`, in the same ambient space.
    pub fn subarrangement(&self, mask: u32) -> Result<Arrangement> {
        self.check_mask(mask)?;
        let hps = bits::elements(mask)
            .map(|e| self.hyperplanes[e].clone())
            .collect();
        Arrangement::new(self.field, self.dim, hps)
    }

    /// Hyperplanes containing the intersection named by a flat.
    pub fn localization(&self, flat: u32) -> Result<Arrangement> {
        if !self.is_flat(flat)? {
            return Err(Error::NotAFlat(flat));
        }
        self.subarrangement(flat)
    }

    /// An affine chart of the common intersection of a central subset: a
    /// base point plus a basis of the direction space.
    pub fn chart(&self, mask: u32) -> Result<AffineSpaceQ> {
        self.require_rational()?;
        self.check_mask(mask)?;
        if mask == 0 {
            // whole ambient space
            let point = vec![BigRational::zero(); self.dim];
            let basis = (0..self.dim)
                .map(|i| {
                    let mut v = vec![BigRational::zero(); self.dim];
                    v[i] = BigRational::one();
                    v
                })
                .collect();
            return Ok(AffineSpaceQ { point, basis });
        }
        let (a, b) = self.system_q(mask);
        linalg::solve_q(&a, &b).ok_or(Error::NotCentral(mask))
    }

    fn trace(h: &Hyperplane, chart: &AffineSpaceQ) -> Hyperplane {
        let normal = chart.basis.iter().map(|bv| dot(&h.normal, bv)).collect();
        let offset = &h.offset - dot(&h.normal, &chart.point);
        Hyperplane { normal, offset }
    }

    /// Traces of the hyperplanes outside `mask` on the common intersection
    /// of `mask`, written in an explicit chart.  Traces with no points are
    /// dropped; a trace equal to the whole intersection (the hyperplane
    /// contains it without being indexed by `mask`) is kept as a full-space
    /// entry, and coincident traces are kept as separate entries.
    pub fn restriction_at(&self, mask: u32) -> Result<Arrangement> {
        let chart = self.chart(mask)?;
        let mut hps = Vec::new();
        for e in bits::elements(self.ground() & !mask) {
            let t = Self::trace(&self.hyperplanes[e], &chart);
            let empty = t.normal.iter().all(|v| v.is_zero()) && !t.offset.is_zero();
            if !empty {
                hps.push(t);
            }
        }
        Arrangement::new(FieldSpec::Rational, chart.dim(), hps)
    }

    /// Traces of every hyperplane on the intersection named by a flat,
    /// including the full-space traces of the hyperplanes that contain it.
    /// The flag reports whether such a trace occurs; when it does, the
    /// signed subset sum of the result is the zero polynomial.
    pub fn restriction_inclusive(&self, flat: u32) -> Result<(Arrangement, bool)> {
        if !self.is_flat(flat)? {
            return Err(Error::NotAFlat(flat));
        }
        let chart = self.chart(flat)?;
        let mut hps = Vec::new();
        let mut degenerate = false;
        for h in &self.hyperplanes {
            let t = Self::trace(h, &chart);
            if t.normal.iter().all(|v| v.is_zero()) {
                if t.offset.is_zero() {
                    degenerate = true;
                    hps.push(t);
                }
            } else {
                hps.push(t);
            }
        }
        Ok((
            Arrangement::new(FieldSpec::Rational, chart.dim(), hps)?,
            degenerate,
        ))
    }

    /// `T(A;t,s)` against the sum of `T(A_X;0,s) T(A|cap A_X;t,0)` with `X`
    /// over central subsets or over flats; the two index families give the
    /// same value because the extra terms each contain a factor that
    /// vanishes at the pinned variable.
    pub fn tutte_convolution(&self, index: HcfIndex) -> Result<ConvolutionReport> {
        let lhs = self.tutte()?;
        let masks: Vec<u32> = match index {
            HcfIndex::CentralSets => self
                .central_family()?
                .into_iter()
                .map(|(x, _)| x)
                .collect(),
            HcfIndex::Flats => self.flats()?,
        };
        let zero = BigInt::from(0);
        let mut rhs = BiPoly::zero();
        for x in masks {
            let s_part = self.subarrangement(x)?.tutte()?.set_t(&zero);
            let t_part = self.restriction_at(x)?.tutte()?.set_s(&zero);
            rhs = &rhs + &BiPoly::product_uni(&t_part, &s_part);
        }
        Ok(ConvolutionReport { lhs, rhs })
    }

    /// `chi(A;ts)` against the sum over flats `X` of
    /// `chi(hyperplanes containing X; t) chi(traces on X; s)`.
    pub fn char_convolution(&self) -> Result<ConvolutionReport> {
        let lhs = BiPoly::diagonal(&self.characteristic()?);
        let mut rhs = BiPoly::zero();
        for x in self.flats()? {
            let t_part = self.subarrangement(x)?.characteristic()?;
            let s_part = self.restriction_at(x)?.characteristic()?;
            rhs = &rhs + &BiPoly::product_uni(&t_part, &s_part);
        }
        Ok(ConvolutionReport { lhs, rhs })
    }

    /// Minimal nonempty central subsets whose common intersection is
    /// unchanged by removing any single member.
    pub fn affine_circuits(&self) -> Result<Vec<u32>> {
        let rank: BTreeMap<u32, u8> = self.central_family()?.into_iter().collect();
        let mut out = Vec::new();
        for (&x, &rx) in &rank {
            if x == 0 || rx as usize == bits::count(x) {
                continue;
            }
            // minimal dependent: every one-element deletion is independent
            let minimal = bits::elements(x).all(|e| {
                let y = x & !(1 << e);
                rank.get(&y)
                    .map(|&ry| ry as usize == bits::count(y))
                    .unwrap_or(false)
            });
            if minimal {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Matroid of the normal vectors (the dependence structure of the
    /// centralization).
    pub fn normals_matroid(&self) -> Result<Matroid> {
        match self.field {
            FieldSpec::Rational => Matroid::from_columns_q(&self.normal_columns()),
            FieldSpec::Prime(p) => {
                let cols = self
                    .normal_columns()
                    .iter()
                    .map(|col| {
                        col.iter()
                            .map(|v| linalg::reduce_mod(v, p))
                            .collect::<Result<Vec<u64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matroid::from_columns_fp(&cols, p)
            }
        }
    }

    /// For each circuit of the normals matroid, the kernel vector supported
    /// exactly on the circuit, scaled so its first nonzero entry is one.
    pub fn circuit_vectors(&self) -> Result<Vec<(u32, Vec<BigRational>)>> {
        self.require_rational()?;
        self.require_linear()?;
        let m = self.normals_matroid()?;
        let cols = self.normal_columns();
        let mut out = Vec::new();
        for c in m.circuits() {
            let members: Vec<usize> = bits::elements(c).collect();
            let rows: Vec<Vec<BigRational>> = (0..self.dim)
                .map(|i| members.iter().map(|&e| cols[e][i].clone()).collect())
                .collect();
            let kernel = linalg::kernel_q(&rows);
            // the columns of a circuit have a one-dimensional kernel
            assert_eq!(kernel.len(), 1);
            let k = &kernel[0];
            let lead = k
                .iter()
                .find(|v| !v.is_zero())
                .expect("nonzero kernel vector")
                .clone();
            let mut vec = vec![BigRational::zero(); self.hyperplanes.len()];
            for (j, &e) in members.iter().enumerate() {
                let v = &k[j] / &lead;
                debug_assert!(!v.is_zero());
                vec[e] = v;
            }
            out.push((c, vec));
        }
        Ok(out)
    }

    /// One hyperplane per circuit vector, in the space of offset vectors;
    /// circuits with coincident normalized vectors collapse to a single
    /// hyperplane.
    pub fn discriminantal(&self) -> Result<Arrangement> {
        let mut normals: Vec<Vec<BigRational>> = Vec::new();
        for (_, v) in self.circuit_vectors()? {
            if !normals.contains(&v) {
                normals.push(v);
            }
        }
        let hps = normals
            .into_iter()
            .map(|n| Hyperplane::new(n, BigRational::zero()))
            .collect();
        Arrangement::new(FieldSpec::Rational, self.hyperplanes.len(), hps)
    }

    /// Keep the normals, replace every offset.
    pub fn translate(&self, a: &[BigRational]) -> Result<Arrangement> {
        if a.len() != self.hyperplanes.len() {
            return Err(Error::InvalidInput(format!(
                "offset vector of length {} for {} hyperplanes",
                a.len(),
                self.hyperplanes.len()
            )));
        }
        let hps = self
            .hyperplanes
            .iter()
            .zip(a)
            .map(|(h, v)| Hyperplane::new(h.normal.clone(), v.clone()))
            .collect();
        Arrangement::new(self.field, self.dim, hps)
    }

    /// All offsets set to zero.
    pub fn centralization(&self) -> Arrangement {
        Arrangement {
            field: self.field,
            dim: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| Hyperplane::new(h.normal.clone(), BigRational::zero()))
                .collect(),
        }
    }

    /// Label every circuit of the normals matroid by whether the translated
    /// hyperplanes it names still share a point, cross-checked against the
    /// vector test `c . a = 0`.
    pub fn translation_assigning(&self, a: &[BigRational]) -> Result<AssigningMatroid> {
        let translated = self.translate(a)?;
        let m = self.normals_matroid()?;
        let mut labels = BTreeMap::new();
        for (c, v) in self.circuit_vectors()? {
            let vector_zero = dot(&v, a).is_zero();
            let geometric = translated.is_central(c)?;
            if vector_zero != geometric {
                return Err(Error::CrossCheck(format!(
                    "label of subset {c} disagrees between the vector test and the intersection test"
                )));
            }
            labels.insert(c, u8::from(!vector_zero));
        }
        AssigningMatroid::new(m, labels)
    }

    /// Indices of the hyperplanes passing through a given point.
    pub fn point_flat(&self, x: &[BigRational]) -> Result<u32> {
        self.require_rational()?;
        if x.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "point of length {} in ambient dimension {}",
                x.len(),
                self.dim
            )));
        }
        let mut mask = 0u32;
        for (e, h) in self.hyperplanes.iter().enumerate() {
            if dot(&h.normal, x) == h.offset {
                mask |= 1 << e;
            }
        }
        Ok(mask)
    }

    /// A rational point whose set of containing hyperplanes is exactly the
    /// given flat: the chart point offset by `(1, B, B^2, ...)` in the chart
    /// basis, for the first prime `B` that avoids every excluded hyperplane.
    /// Each excluded hyperplane rules out finitely many `B`, so this
    /// terminates.
    pub fn representative_point(&self, flat: u32) -> Result<Vec<BigRational>> {
        if !self.is_flat(flat)? {
            return Err(Error::NotAFlat(flat));
        }
        let chart = self.chart(flat)?;
        if chart.dim() == 0 {
            // a point can only lie on the hyperplanes that contain it
            let x = chart.point.clone();
            return if self.point_flat(&x)? == flat {
                Ok(x)
            } else {
                Err(Error::CrossCheck(
                    "zero-dimensional flat with a stray incidence".into(),
                ))
            };
        }
        let mut b = 2u64;
        loop {
            let base = BigRational::from_integer(b.into());
            let mut scale = BigRational::one();
            let mut x = chart.point.clone();
            for bv in &chart.basis {
                for (xi, vi) in x.iter_mut().zip(bv) {
                    *xi += &scale * vi;
                }
                scale *= &base;
            }
            if self.point_flat(&x)? == flat {
                return Ok(x);
            }
            b = next_prime(b);
        }
    }

    /// One class per flat of the discriminantal arrangement, each carrying a
    /// representative offset vector and the structures it produces; distinct
    /// classes have distinct semimatroids.
    pub fn classify_translations(&self) -> Result<Vec<TranslationClass>> {
        self.require_rational()?;
        self.require_linear()?;
        let delta = self.discriminantal()?;
        let mut out = Vec::new();
        for flat in delta.flats()? {
            let representative = delta.representative_point(flat)?;
            let semimatroid = self.translate(&representative)?.semimatroid()?;
            let assigning = self.translation_assigning(&representative)?;
            out.push(TranslationClass {
                flat,
                representative,
                semimatroid,
                assigning,
            });
        }
        Ok(out)
    }

    /// Reduce a rational arrangement into a prime field.
    pub fn reduce_mod(&self, p: u64) -> Result<Arrangement> {
        self.require_rational()?;
        let mut hps = Vec::new();
        for h in &self.hyperplanes {
            let normal = h
                .normal
                .iter()
                .map(|v| Ok(BigRational::from_integer(linalg::reduce_mod(v, p)?.into())))
                .collect::<Result<Vec<_>>>()?;
            let offset = BigRational::from_integer(linalg::reduce_mod(&h.offset, p)?.into());
            hps.push(Hyperplane::new(normal, offset));
        }
        Arrangement::new(FieldSpec::Prime(p), self.dim, hps)
    }

    /// Count the points of the ambient prime-field space lying on no
    /// hyperplane.
    pub fn count_points(&self) -> Result<u64> {
        let p = match self.field {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rational => return Err(Error::WrongField("prime field entries required")),
        };
        let mut total = 1u64;
        for _ in 0..self.dim {
            total = total
                .checked_mul(p)
                .filter(|&t| t <= MAX_POINTS)
                .ok_or(Error::BudgetExceeded(u64::MAX, MAX_POINTS))?;
        }
        let (normals, offsets) = self.system_fp(self.ground(), p)?;
        let mut x = vec![0u64; self.dim];
        let mut count = 0u64;
        loop {
            let on_some = normals.iter().zip(&offsets).any(|(nr, &o)| {
                let mut acc = 0u64;
                for (a, b) in nr.iter().zip(&x) {
                    acc = linalg::fp_add(acc, linalg::fp_mul(*a, *b, p), p);
                }
                acc == o
            });
            if !on_some {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    return Ok(count);
                }
                x[i] += 1;
                if x[i] == p {
                    x[i] = 0;
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

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    // x = 0 and x = 1 on a line
    fn line_points() -> Arrangement {
        Arrangement::rational(
            1,
            vec![
                Hyperplane::from_ints(&[1], 0),
                Hyperplane::from_ints(&[1], 1),
            ],
        )
        .unwrap()
    }

    // x2 - x1, x3 - x2, x3 - x1 in three-space
    fn braid_triangle() -> Arrangement {
        Arrangement::rational(
            3,
            vec![
                Hyperplane::from_ints(&[-1, 1, 0], 0),
                Hyperplane::from_ints(&[0, -1, 1], 0),
                Hyperplane::from_ints(&[-1, 0, 1], 0),
            ],
        )
        .unwrap()
    }

    // two copies of x = 0 on a line
    fn parallel_pair() -> Arrangement {
        Arrangement::rational(
            1,
            vec![
                Hyperplane::from_ints(&[1], 0),
                Hyperplane::from_ints(&[1], 0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn central_family_and_polynomials_on_a_line() {
        let a = line_points();
        assert_eq!(a.central_family().unwrap(), vec![(0, 0), (1, 1), (2, 1)]);
        assert_eq!(a.characteristic().unwrap(), UniPoly::from_pairs(&[(1, 1), (0, -2)]));
        assert_eq!(
            a.tutte().unwrap(),
            BiPoly::from_pairs(&[((1, 0), 1), ((0, 0), 1)])
        );
        assert_eq!(a.rank().unwrap(), 1);
        let c = a.semimatroid().unwrap();
        assert_eq!(c.central(), &[0, 1, 2]);
        assert!(a.affine_circuits().unwrap().is_empty());
    }

    #[test]
    fn braid_polynomials_and_count() {
        let a = braid_triangle();
        assert_eq!(a.rank().unwrap(), 2);
        let chi = a.characteristic().unwrap();
        assert_eq!(chi, UniPoly::from_pairs(&[(3, 1), (2, -3), (1, 2)]));
        assert_eq!(a.characteristic_by_mobius().unwrap(), chi);
        assert_eq!(
            a.tutte().unwrap(),
            BiPoly::from_pairs(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)])
        );
        let f5 = a.reduce_mod(5).unwrap();
        assert_eq!(f5.count_points().unwrap(), 60);
        assert_eq!(f5.characteristic().unwrap(), chi);
        assert_eq!(a.affine_circuits().unwrap(), vec![0b111]);
    }

    #[test]
    fn degenerate_and_empty_hyperplanes() {
        let whole_space = Arrangement::rational(2, vec![Hyperplane::from_ints(&[0, 0], 0)]).unwrap();
        assert_eq!(whole_space.central_family().unwrap(), vec![(0, 0), (1, 0)]);
        assert!(whole_space.characteristic().unwrap().is_zero());
        assert!(matches!(
            whole_space.characteristic_by_mobius(),
            Err(Error::HasLoops)
        ));
        assert_eq!(whole_space.reduce_mod(3).unwrap().count_points().unwrap(), 0);

        let no_points = Arrangement::rational(2, vec![Hyperplane::from_ints(&[0, 0], 1)]).unwrap();
        assert_eq!(no_points.central_family().unwrap(), vec![(0, 0)]);
        assert_eq!(
            no_points.characteristic().unwrap(),
            UniPoly::monomial(2, BigInt::from(1))
        );
        assert_eq!(no_points.reduce_mod(3).unwrap().count_points().unwrap(), 9);
    }

    #[test]
    fn flats_closure_and_restrictions_on_the_braid() {
        let a = braid_triangle();
        assert_eq!(a.flats().unwrap(), vec![0b000, 0b001, 0b010, 0b100, 0b111]);
        assert_eq!(a.closure(0b011).unwrap(), 0b111);
        assert_eq!(a.localization(0b001).unwrap().size(), 1);
        assert!(matches!(a.localization(0b011), Err(Error::NotAFlat(0b011))));

        // traces on x1 = x2: the two remaining hyperplanes coincide
        let res = a.restriction_at(0b001).unwrap();
        assert_eq!(res.dim(), 2);
        assert_eq!(res.size(), 2);
        assert_eq!(res.hyperplanes()[0], res.hyperplanes()[1]);

        let (inc, degenerate) = a.restriction_inclusive(0b001).unwrap();
        assert!(degenerate);
        assert_eq!(inc.size(), 3);
        assert!(inc.characteristic().unwrap().is_zero());
    }

    #[test]
    fn empty_traces_are_dropped() {
        // restriction of {x=0, x=1} at {x=0}: the other hyperplane misses it
        let a = line_points();
        let res = a.restriction_at(0b01).unwrap();
        assert_eq!(res.dim(), 0);
        assert_eq!(res.size(), 0);
    }

    #[test]
    fn convolution_identities_on_examples() {
        for a in [line_points(), braid_triangle(), parallel_pair()] {
            assert!(a.tutte_convolution(HcfIndex::CentralSets).unwrap().holds());
            assert!(a.tutte_convolution(HcfIndex::Flats).unwrap().holds());
            assert!(a.char_convolution().unwrap().holds());
        }
    }

    #[test]
    fn circuit_vectors_and_discriminantal() {
        let pair = parallel_pair();
        assert_eq!(
            pair.circuit_vectors().unwrap(),
            vec![(0b11, vec![rat(1), rat(-1)])]
        );
        let delta = pair.discriminantal().unwrap();
        assert_eq!(delta.dim(), 2);
        assert_eq!(delta.size(), 1);

        let graphic = braid_triangle();
        assert_eq!(
            graphic.circuit_vectors().unwrap(),
            vec![(0b111, vec![rat(1), rat(1), rat(-1)])]
        );
        assert!(matches!(
            line_points().circuit_vectors(),
            Err(Error::NotCentralArrangement)
        ));
    }

    #[test]
    fn representative_points_and_strata() {
        let delta = parallel_pair().discriminantal().unwrap();
        assert_eq!(delta.flats().unwrap(), vec![0b0, 0b1]);
        assert_eq!(delta.representative_point(0b1).unwrap(), vec![rat(1), rat(1)]);
        assert_eq!(delta.representative_point(0b0).unwrap(), vec![rat(1), rat(2)]);
        assert_eq!(delta.point_flat(&[rat(3), rat(3)]).unwrap(), 0b1);
        assert_eq!(delta.point_flat(&[rat(0), rat(2)]).unwrap(), 0b0);
    }

    #[test]
    fn classification_of_the_parallel_pair() {
        let classes = parallel_pair().classify_translations().unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].flat, 0b0);
        assert_eq!(classes[0].semimatroid.central(), &[0b00, 0b01, 0b10]);
        assert_eq!(classes[1].flat, 0b1);
        assert_eq!(
            classes[1].semimatroid.central(),
            &[0b00, 0b01, 0b10, 0b11]
        );
        assert_ne!(classes[0].semimatroid, classes[1].semimatroid);
        assert_eq!(classes[0].assigning.label(0b11).unwrap(), 1);
        assert_eq!(classes[1].assigning.label(0b11).unwrap(), 0);
    }

    #[test]
    fn translation_assigning_matches_geometry() {
        let pair = parallel_pair();
        let shifted = pair.translation_assigning(&[rat(0), rat(1)]).unwrap();
        assert_eq!(shifted.label(0b11).unwrap(), 1);
        let same = pair.translation_assigning(&[rat(2), rat(2)]).unwrap();
        assert_eq!(same.label(0b11).unwrap(), 0);
    }

    fn arb_arrangement() -> impl Strategy<Value = Arrangement> {
        (1usize..=3).prop_flat_map(|dim| {
            proptest::collection::vec(
                (proptest::collection::vec(-2i64..=2, dim), -2i64..=2),
                1..=4,
            )
            .prop_map(move |hps| {
                let hyperplanes = hps
                    .into_iter()
                    .map(|(n, o)| Hyperplane::from_ints(&n, o))
                    .collect();
                Arrangement::rational(dim, hyperplanes).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn induced_family_is_a_semimatroid(a in arb_arrangement()) {
            let c = a.semimatroid().unwrap();
            prop_assert_eq!(c.rank(), a.rank().unwrap());
            let shift = UniPoly::monomial(a.dim() as u32 - a.rank().unwrap() as u32, BigInt::from(1));
            prop_assert_eq!(a.characteristic().unwrap(), &shift * &c.characteristic());
        }

        #[test]
        fn flats_agree_with_the_induced_family(a in arb_arrangement()) {
            let c = a.semimatroid().unwrap();
            prop_assert_eq!(a.flats().unwrap(), c.flats());
        }

        #[test]
        fn mobius_route_agrees(a in arb_arrangement()) {
            if a.closure(0).unwrap() == 0 {
                prop_assert_eq!(a.characteristic_by_mobius().unwrap(), a.characteristic().unwrap());
            }
        }

        #[test]
        fn corank_nullity_convolutions_hold(a in arb_arrangement()) {
            prop_assert!(a.tutte_convolution(HcfIndex::CentralSets).unwrap().holds());
            prop_assert!(a.tutte_convolution(HcfIndex::Flats).unwrap().holds());
            prop_assert!(a.char_convolution().unwrap().holds());
        }

        #[test]
        fn finite_field_counts_match(a in arb_arrangement()) {
            for q in [3u64, 5] {
                let reduced = a.reduce_mod(q).unwrap();
                let chi = reduced.characteristic().unwrap();
                let count = reduced.count_points().unwrap();
                prop_assert_eq!(BigInt::from(count), chi.eval_int(&BigInt::from(q)));
            }
        }

        #[test]
        fn translation_labels_reproduce_the_central_family(a in arb_arrangement()) {
            let assigning = a.centralization().translation_assigning(&a.offsets()).unwrap();
            let c = a.semimatroid().unwrap();
            let pairs: Vec<(u32, u8)> = c.pairs().collect();
            prop_assert_eq!(assigning.compatible_family(), pairs);
        }
    }
}
