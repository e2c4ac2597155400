//! Generic vectors, `d_v`, degree, completeness and projection.
//!
//! `d_v` is constant on the chambers of the arrangement cut out by the
//! linear spans of all faces, so the degree is decided by evaluating `d_v`
//! once per arrangement chamber:
//!
//! * dimension 1: the two half-lines;
//! * dimension 2: one direction per angular sector between consecutive lines;
//! * dimension 3: around every intersection line `±ℓ` of two planes, one
//!   point per sector of the planes through `ℓ`, pushed off `ℓ` far enough
//!   to stay on `ℓ`'s side of every other plane — every chamber of a
//!   central arrangement with two or more planes has such a corner;
//! * dimension ≥ 4: seeded random sampling, flagged as probabilistic.

use std::collections::BTreeSet;
use std::fmt;

use malachite::num::arithmetic::traits::Sign;
use malachite::num::basic::traits::{One, Zero};
use malachite::{Integer, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Edge, MultiFan, WeightedChamber};
use crate::error::{Error, Result};
use crate::lattice::{det, quotient_map, rank, sign, LatticeVector};

/// A point of `Qⁿ` avoiding every span of a lower-dimensional face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenericVector(pub Vec<Rational>);

impl fmt::Display for GenericVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMethod {
    /// Every arrangement chamber was visited.
    Exact,
    /// Random generic samples (dimension ≥ 4).
    Probabilistic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions { samples: 64, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    pub method: DegreeMethod,
    pub witnesses: usize,
}

impl MultiFan {
    pub fn degree(&self) -> Result<i64> {
        self.degree_with(&DegreeOptions::default()).map(|r| r.degree)
    }

    pub fn degree_with(&self, opts: &DegreeOptions) -> Result<DegreeReport> {
        if self.chambers.is_empty() {
            return Err(Error::EmptyTopDimension);
        }
        if self.dim == 2 {
            if let Some(small) = SmallFan2::new(self) {
                return small.degree();
            }
        }
        let (witnesses, method) = self.generic_witnesses(opts);
        let mut first: Option<(Vec<Integer>, i64)> = None;
        for w in &witnesses {
            let d = self.d_at(w);
            match &first {
                None => first = Some((w.clone(), d)),
                Some((w0, d0)) if *d0 != d => {
                    return Err(Error::NotPreComplete { v1: to_generic(w0), d1: *d0, v2: to_generic(w), d2: d });
                }
                _ => {}
            }
        }
        Ok(DegreeReport { degree: first.map_or(0, |f| f.1), method, witnesses: witnesses.len() })
    }

    pub fn is_pre_complete(&self) -> bool {
        self.degree().is_ok()
    }

    /// Pre-complete, and every projected multi-fan `Δ_K` is pre-complete.
    pub fn is_complete(&self) -> bool {
        self.is_complete_with(&DegreeOptions::default())
    }

    pub fn is_complete_with(&self, opts: &DegreeOptions) -> bool {
        if self.degree_with(opts).is_err() {
            return false;
        }
        self.faces.iter().filter(|f| !f.is_empty()).all(|f| {
            self.projected_indices(f).map_or(false, |p| p.degree_with(opts).is_ok())
        })
    }

    /// `d_v = Σ_{v ∈ C(I)} (w⁺(I) − w⁻(I))` at an integer point assumed generic.
    pub fn d_at(&self, v: &[Integer]) -> i64 {
        self.chambers
            .iter()
            .filter(|c| self.cone_contains(c, v))
            .map(WeightedChamber::net)
            .sum()
    }

    /// Strict interior membership: all simplicial coordinates positive.
    fn cone_contains(&self, c: &WeightedChamber, v: &[Integer]) -> bool {
        let cols: Vec<LatticeVector> = self.vectors_of(&c.edges);
        let d = match det(&cols) {
            Ok(d) if d != 0 => sign(&d),
            _ => return false,
        };
        let target = LatticeVector::new(v.to_vec());
        (0..cols.len()).all(|i| {
            let mut m = cols.clone();
            m[i] = target.clone();
            sign(&det(&m).unwrap()) == d
        })
    }

    /// Integer witnesses, one or more per arrangement chamber.
    pub fn generic_witnesses(&self, opts: &DegreeOptions) -> (Vec<Vec<Integer>>, DegreeMethod) {
        match self.dim {
            0 => (vec![Vec::new()], DegreeMethod::Exact),
            1 => (vec![vec![Integer::ONE], vec![Integer::from(-1)]], DegreeMethod::Exact),
            2 => (self.witnesses_2d(), DegreeMethod::Exact),
            3 => (self.witnesses_3d(), DegreeMethod::Exact),
            _ => (self.witnesses_sampled(opts), DegreeMethod::Probabilistic),
        }
    }

    fn witnesses_2d(&self) -> Vec<Vec<Integer>> {
        let rays: Vec<[Integer; 2]> = self
            .edges
            .iter()
            .map(|e| [e.vector.coords()[0].clone(), e.vector.coords()[1].clone()])
            .collect();
        sector_witnesses(&rays).into_iter().map(|w| w.to_vec()).collect()
    }

    fn witnesses_3d(&self) -> Vec<Vec<Integer>> {
        let lines: Vec<LatticeVector> = self.edges.iter().map(|e| e.vector.clone()).collect();
        let mut planes: BTreeSet<LatticeVector> = BTreeSet::new();
        for f in self.faces.iter().filter(|f| f.len() == 2) {
            let n = cross(&self.edges[f[0]].vector, &self.edges[f[1]].vector);
            if let Ok(p) = n.primitive() {
                planes.insert(normalize_sign(p));
            }
        }
        for c in &self.chambers {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let n = cross(&self.edges[c.edges[a]].vector, &self.edges[c.edges[b]].vector);
                if let Ok(p) = n.primitive() {
                    planes.insert(normalize_sign(p));
                }
            }
        }
        let planes: Vec<LatticeVector> = planes.into_iter().collect();
        let off_lines = |v: &LatticeVector| !lines.iter().any(|r| cross(r, v).is_zero());

        let mut raw: Vec<LatticeVector> = Vec::new();
        let mut corners: BTreeSet<LatticeVector> = BTreeSet::new();
        for i in 0..planes.len() {
            for j in i + 1..planes.len() {
                if let Ok(l) = cross(&planes[i], &planes[j]).primitive() {
                    corners.insert(-&l);
                    corners.insert(l);
                }
            }
        }
        if corners.is_empty() {
            // At most one plane: its two sides, nudged inside the plane.
            let (bases, shift) = match planes.first() {
                Some(n) => (vec![n.clone(), -n], in_plane_vector(n)),
                None => (vec![LatticeVector::from_i64s(&[1, 0, 0])], LatticeVector::from_i64s(&[0, 1, 3])),
            };
            for b in bases {
                let mut k = Integer::ONE;
                loop {
                    let v = &b.scaled(&k) + &shift;
                    if off_lines(&v) {
                        raw.push(v);
                        break;
                    }
                    k += Integer::ONE;
                }
            }
        }
        for l in &corners {
            let through: Vec<&LatticeVector> = planes.iter().filter(|n| n.dot(l) == 0).collect();
            let mut dirs: Vec<LatticeVector> = Vec::new();
            for n in &through {
                if let Ok(d) = cross(n, l).primitive() {
                    dirs.push(-&d);
                    dirs.push(d);
                }
            }
            for w in sectors_around(l, dirs) {
                // K·ℓ + w keeps ℓ's side of every plane not through ℓ.
                let mut k = Integer::ONE;
                for n in &planes {
                    let nl = n.dot(l);
                    if nl != 0 {
                        let nw = n.dot(&w);
                        let bound = Integer::from(nw.unsigned_abs_ref() / nl.unsigned_abs_ref()) + Integer::ONE;
                        if bound > k {
                            k = bound;
                        }
                    }
                }
                loop {
                    let v = &l.scaled(&k) + &w;
                    if off_lines(&v) {
                        raw.push(v);
                        break;
                    }
                    k += Integer::ONE;
                }
            }
        }
        // One witness per sign vector is enough.
        let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
        raw.into_iter()
            .filter(|v| seen.insert(planes.iter().map(|n| sign(&n.dot(v))).collect()))
            .map(LatticeVector::into_coords)
            .collect()
    }

    fn witnesses_sampled(&self, opts: &DegreeOptions) -> Vec<Vec<Integer>> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let spans: Vec<Vec<LatticeVector>> = self
            .faces
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| self.vectors_of(f))
            .chain(self.chambers.iter().flat_map(|c| {
                (0..c.edges.len()).map(move |i| {
                    let mut e = c.edges.clone();
                    e.remove(i);
                    self.vectors_of(&e)
                })
            }))
            .collect();
        let mut out = Vec::with_capacity(opts.samples);
        let mut attempts = 0;
        while out.len() < opts.samples.max(1) && attempts < 100 * opts.samples.max(1) {
            attempts += 1;
            let v = LatticeVector::new(
                (0..self.dim).map(|_| Integer::from(rng.gen_range(-1_000_000i64..=1_000_000))).collect(),
            );
            let generic = !v.is_zero()
                && spans.iter().all(|s| {
                    let mut t = s.clone();
                    t.push(v.clone());
                    rank(&t) == s.len() + 1
                });
            if generic {
                out.push(v.into_coords());
            }
        }
        out
    }

    /// The projected multi-fan `Δ_K` for a face given by labels.
    pub fn projected(&self, labels: &[&str]) -> Result<MultiFan> {
        let k = self.resolve(labels)?;
        self.projected_indices(&k)
    }

    pub fn projected_indices(&self, k: &[usize]) -> Result<MultiFan> {
        let mut k = k.to_vec();
        k.sort_unstable();
        let is_chamber_face = self.chambers.iter().any(|c| k.iter().all(|i| c.edges.contains(i)));
        if !self.faces.contains(&k) && !(k.len() < self.dim && is_chamber_face) {
            return Err(Error::FaceNotPresent(format!("{:?}", self.labels_of(&k))));
        }
        if k.is_empty() {
            return Ok(self.clone());
        }
        let q = quotient_map(&self.vectors_of(&k), self.dim)?;
        let contains_k = |s: &[usize]| k.iter().all(|i| s.contains(i));

        let mut keep: BTreeSet<usize> = BTreeSet::new();
        for f in self.faces.iter().filter(|f| contains_k(f)) {
            keep.extend(f.iter().filter(|i| !k.contains(i)));
        }
        for c in self.chambers.iter().filter(|c| contains_k(&c.edges)) {
            keep.extend(c.edges.iter().filter(|i| !k.contains(i)));
        }
        let old: Vec<usize> = keep.into_iter().collect();
        let new_of = |i: usize| old.binary_search(&i).ok();
        let edges = old
            .iter()
            .map(|&i| {
                let image = q.apply(&self.edges[i].vector)?.primitive()?;
                Ok(Edge { label: self.edges[i].label.clone(), vector: image })
            })
            .collect::<Result<Vec<_>>>()?;
        let strip = |s: &[usize]| -> Vec<usize> { s.iter().filter_map(|&i| new_of(i)).collect() };
        let faces: Vec<Vec<usize>> = self.faces.iter().filter(|f| contains_k(f)).map(|f| strip(f)).collect();
        let chambers = self
            .chambers
            .iter()
            .filter(|c| contains_k(&c.edges))
            .map(|c| WeightedChamber { id: c.id.clone(), edges: strip(&c.edges), w_plus: c.w_plus, w_minus: c.w_minus })
            .collect();
        MultiFan::from_indices(self.dim - k.len(), edges, faces, chambers)
    }
}

fn to_generic(v: &[Integer]) -> GenericVector {
    GenericVector(v.iter().map(Rational::from).collect())
}

pub(crate) fn cross(a: &LatticeVector, b: &LatticeVector) -> LatticeVector {
    let (a, b) = (a.coords(), b.coords());
    LatticeVector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

fn det3(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> Integer {
    cross(a, b).dot(c)
}

fn normalize_sign(v: LatticeVector) -> LatticeVector {
    match v.coords().iter().find(|c| **c != 0) {
        Some(c) if *c < 0 => -v,
        _ => v,
    }
}

fn in_plane_vector(n: &LatticeVector) -> LatticeVector {
    (0..3)
        .map(|i| cross(n, &LatticeVector::unit(3, i)))
        .find(|v| !v.is_zero())
        .expect("nonzero normal")
}

/// Sector witnesses in the plane `ℓ^⊥`, given directions closed under negation.
fn sectors_around(l: &LatticeVector, mut dirs: Vec<LatticeVector>) -> Vec<LatticeVector> {
    if dirs.is_empty() {
        return Vec::new();
    }
    let r0 = dirs[0].clone();
    let half = |d: &LatticeVector| {
        let s = det3(l, &r0, d).sign();
        if s == std::cmp::Ordering::Greater || (s == std::cmp::Ordering::Equal && r0.dot(d) > 0) {
            0
        } else {
            1
        }
    };
    dirs.sort_by(|a, b| half(a).cmp(&half(b)).then_with(|| Integer::ZERO.cmp(&det3(l, a, b))));
    dirs.dedup();
    let m = dirs.len();
    (0..m)
        .map(|i| {
            let (a, b) = (&dirs[i], &dirs[(i + 1) % m]);
            match sign(&det3(l, a, b)) {
                1 => a + b,
                0 => cross(l, a),
                _ => -(a + b),
            }
        })
        .collect()
}

/// Arithmetic needed by the planar sweep, for both exact big integers and
/// the `i128` fast path.
pub(crate) trait Coord: Clone + Ord {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coord for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn one() -> Self {
        Integer::ONE
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coord for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub(crate) fn det2g<T: Coord>(a: &[T; 2], b: &[T; 2]) -> T {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}

fn sgn<T: Coord>(x: &T) -> i32 {
    match x.cmp(&T::zero()) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// One interior direction per sector cut out by the lines through `rays`.
pub(crate) fn sector_witnesses<T: Coord>(rays: &[[T; 2]]) -> Vec<[T; 2]> {
    let mut dirs: Vec<[T; 2]> = Vec::with_capacity(2 * rays.len());
    for r in rays {
        if sgn(&r[0]) == 0 && sgn(&r[1]) == 0 {
            continue;
        }
        dirs.push([r[0].neg(), r[1].neg()]);
        dirs.push(r.clone());
    }
    if dirs.is_empty() {
        return vec![[T::one(), T::zero()]];
    }
    let half = |d: &[T; 2]| {
        let y = sgn(&d[1]);
        if y > 0 || (y == 0 && sgn(&d[0]) > 0) {
            0
        } else {
            1
        }
    };
    dirs.sort_by(|a, b| half(a).cmp(&half(b)).then_with(|| T::zero().cmp(&det2g(a, b))));
    // Non-primitive rays may repeat a direction.
    dirs.dedup_by(|b, a| half(a) == half(b) && sgn(&det2g(a, b)) == 0);
    let m = dirs.len();
    (0..m)
        .map(|i| {
            let (a, b) = (&dirs[i], &dirs[(i + 1) % m]);
            match sgn(&det2g(a, b)) {
                1 => [a[0].add(&b[0]), a[1].add(&b[1])],
                0 => [a[1].neg(), a[0].clone()],
                _ => [a[0].add(&b[0]).neg(), a[1].add(&b[1]).neg()],
            }
        })
        .collect()
}

/// Planar multi-fan with coordinates small enough for `i128` arithmetic:
/// witnesses are sums of two rays (< 2³³) and determinants of a witness
/// with a ray stay far below 2¹²⁷.
struct SmallFan2 {
    rays: Vec<[i128; 2]>,
    chambers: Vec<(usize, usize, i64)>,
}

impl SmallFan2 {
    const LIMIT: i64 = 1 << 31;

    fn new(mf: &MultiFan) -> Option<SmallFan2> {
        let rays = mf
            .edges
            .iter()
            .map(|e| {
                let c = e.vector.to_i64s()?;
                (c[0].abs() < Self::LIMIT && c[1].abs() < Self::LIMIT).then(|| [c[0] as i128, c[1] as i128])
            })
            .collect::<Option<Vec<_>>>()?;
        let chambers = mf.chambers.iter().map(|c| (c.edges[0], c.edges[1], c.net())).collect();
        Some(SmallFan2 { rays, chambers })
    }

    fn d_at(&self, v: &[i128; 2]) -> i64 {
        let mut d = 0;
        for &(a, b, net) in &self.chambers {
            let (ra, rb) = (&self.rays[a], &self.rays[b]);
            let s = sgn(&det2g(ra, rb));
            if s != 0 && sgn(&det2g(v, rb)) == s && sgn(&det2g(ra, v)) == s {
                d += net;
            }
        }
        d
    }

    fn degree(&self) -> Result<DegreeReport> {
        let witnesses = sector_witnesses(&self.rays);
        let d0 = self.d_at(&witnesses[0]);
        for w in &witnesses[1..] {
            let d = self.d_at(w);
            if d != d0 {
                let g = |v: &[i128; 2]| GenericVector(v.iter().map(|&x| Rational::from(x)).collect());
                return Err(Error::NotPreComplete { v1: g(&witnesses[0]), d1: d0, v2: g(w), d2: d });
            }
        }
        Ok(DegreeReport { degree: d0, method: DegreeMethod::Exact, witnesses: witnesses.len() })
    }
}
