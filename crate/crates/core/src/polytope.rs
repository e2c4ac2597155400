//! Delzant polytopes in H-representation.
//!
//! A polytope is `{x : ⟨uᵢ, x⟩ + hᵢ ≥ 0}` with primitive inward normals `uᵢ`
//! and rational offsets `hᵢ`. Vertices are derived once, exactly, at
//! construction; Delzant-ness is a separate check so that non-Delzant input
//! can be diagnosed rather than rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use malachite::num::basic::traits::{One, Zero};
use malachite::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{det, det2, rank, rational_rank, solve_rational, IntegerMatrix, LatticeVector};
use crate::multifan::{Edge, MultiFan, WeightedChamber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn from_sign(s: i64) -> Option<Orientation> {
        match s {
            1 => Some(Orientation::Positive),
            -1 => Some(Orientation::Negative),
            _ => None,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn opposite(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    /// `(w⁺, w⁻)` carried by the chambers of a normal fan.
    pub fn weights(self) -> (u64, u64) {
        match self {
            Orientation::Positive => (1, 0),
            Orientation::Negative => (0, 1),
        }
    }
}

/// The halfspace `⟨normal, x⟩ + offset ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: LatticeVector, offset: Rational) -> Facet {
        Facet { normal, offset }
    }

    pub fn from_i64s(normal: &[i64], offset: i64) -> Facet {
        Facet { normal: LatticeVector::from_i64s(normal), offset: Rational::from(offset) }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.normal.dot_rational(x) + &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rational>,
    /// Sorted indices of the facets through the vertex.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantPolytope {
    dim: usize,
    facets: Vec<Facet>,
    vertices: Vec<Vertex>,
}

/// A vertex failing simplicity or the basis condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffendingVertex {
    pub vertex: Vec<String>,
    pub incident_facets: usize,
    /// Determinant of the incident normals when there are exactly `n`.
    pub det: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelzantReport {
    pub simple: bool,
    pub delzant: bool,
    pub offending: Vec<OffendingVertex>,
}

impl DelzantPolytope {
    /// Build from halfspaces. Normals are made primitive (scaling the offset
    /// along); the polyhedron must be bounded, full-dimensional and every
    /// listed facet must support an actual facet.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<DelzantPolytope> {
        let mut normalized = Vec::with_capacity(facets.len());
        for f in facets {
            if f.normal.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.normal.dim() });
            }
            let g = Integer::from(f.normal.content());
            if g == 0 {
                return Err(Error::InvalidPolytope("zero normal".into()));
            }
            let normal = f.normal.primitive()?;
            let offset = f.offset / Rational::from(g);
            normalized.push(Facet { normal, offset });
        }
        if normalized.iter().duplicates().next().is_some() {
            return Err(Error::InvalidPolytope("repeated halfspace".into()));
        }
        if dim == 0 {
            if !normalized.is_empty() {
                return Err(Error::InvalidPolytope("a point has no facets".into()));
            }
            return Ok(DelzantPolytope { dim, facets: normalized, vertices: vec![Vertex { point: vec![], facets: vec![] }] });
        }
        if normalized.is_empty() {
            return Err(Error::Unbounded);
        }
        check_bounded(dim, &normalized)?;
        let vertices = enumerate_vertices(dim, &normalized);
        if vertices.is_empty() {
            return Err(Error::Empty);
        }
        let p = DelzantPolytope { dim, facets: normalized, vertices };
        if affine_rank(&p.vertices.iter().map(|v| &v.point).collect::<Vec<_>>()) < dim {
            return Err(Error::InvalidPolytope("not full-dimensional".into()));
        }
        for i in 0..p.facets.len() {
            let on: Vec<&Vec<Rational>> = p.facet_vertices(i).iter().map(|&v| &p.vertices[v].point).collect();
            // Distinct points: in the plane two of them span a line.
            if on.len() < dim || (dim > 2 && affine_rank(&on) < dim - 1) {
                return Err(Error::InvalidPolytope(format!("facet {i} is redundant")));
            }
        }
        Ok(p)
    }

    /// Shorthand for integer offsets: `&[(normal, offset)]`.
    pub fn from_i64s(dim: usize, halfspaces: &[(&[i64], i64)]) -> Result<DelzantPolytope> {
        Self::new(dim, halfspaces.iter().map(|(u, h)| Facet::from_i64s(u, *h)).collect())
    }

    /// The 0-dimensional polytope: a single point, no facets.
    pub fn point() -> DelzantPolytope {
        DelzantPolytope { dim: 0, facets: vec![], vertices: vec![Vertex { point: vec![], facets: vec![] }] }
    }

    /// `[a, b]` with facets `x − a ≥ 0`, `b − x ≥ 0`.
    pub fn interval(a: Rational, b: Rational) -> Result<DelzantPolytope> {
        Self::new(
            1,
            vec![Facet::new(LatticeVector::from_i64s(&[1]), -a), Facet::new(LatticeVector::from_i64s(&[-1]), b)],
        )
    }

    /// `{x ≥ 0, Σx ≤ size}`, facets `x₁ … xₙ` first, then the slanted one.
    pub fn simplex(dim: usize, size: Rational) -> Result<DelzantPolytope> {
        let mut facets: Vec<Facet> =
            (0..dim).map(|i| Facet::new(LatticeVector::unit(dim, i), Rational::ZERO)).collect();
        facets.push(Facet::new(LatticeVector::from_i64s(&vec![-1; dim]), size));
        Self::new(dim, facets)
    }

    /// `[0, 1]ⁿ`, facets `x₁ ≥ 0 … xₙ ≥ 0` then `1 − x₁ ≥ 0 …`.
    pub fn cube(dim: usize) -> Result<DelzantPolytope> {
        let mut facets: Vec<Facet> =
            (0..dim).map(|i| Facet::new(LatticeVector::unit(dim, i), Rational::ZERO)).collect();
        facets.extend((0..dim).map(|i| Facet::new(-LatticeVector::unit(dim, i), Rational::ONE)));
        Self::new(dim, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, point: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v.point == point)
    }

    /// Indices of the vertices lying on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].facets.contains(&f)).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| f.eval(x) >= 0)
    }

    /// Facets `G ≠ F` meeting `F` in a nonempty face.
    pub fn facet_neighbors(&self, f: usize) -> BTreeSet<usize> {
        self.vertices
            .iter()
            .filter(|v| v.facets.contains(&f))
            .flat_map(|v| v.facets.iter().copied())
            .filter(|&g| g != f)
            .collect()
    }

    pub fn is_delzant(&self) -> DelzantReport {
        let mut offending = Vec::new();
        let mut simple = true;
        for v in &self.vertices {
            let point = || v.point.iter().map(|x| x.to_string()).collect();
            if v.facets.len() != self.dim {
                simple = false;
                offending.push(OffendingVertex { vertex: point(), incident_facets: v.facets.len(), det: None });
                continue;
            }
            let d = if self.dim == 2 {
                det2(&self.facets[v.facets[0]].normal, &self.facets[v.facets[1]].normal)
            } else {
                det(&v.facets.iter().map(|&i| self.facets[i].normal.clone()).collect::<Vec<_>>())
                    .expect("normals have the polytope's dimension")
            };
            if d != 1 && d != -1 {
                offending.push(OffendingVertex { vertex: point(), incident_facets: self.dim, det: Some(d.to_string()) });
            }
        }
        DelzantReport { simple, delzant: offending.is_empty(), offending }
    }

    fn require_delzant(&self) -> Result<()> {
        let r = self.is_delzant();
        match r.offending.first() {
            None => Ok(()),
            Some(o) => Err(Error::NotDelzant(format!(
                "vertex ({}) has {} facets{}",
                o.vertex.join(","),
                o.incident_facets,
                o.det.as_ref().map(|d| format!(", det {d}")).unwrap_or_default()
            ))),
        }
    }

    /// The normal fan with edges `f0, f1, …` (one per facet) and chambers
    /// `v0, v1, …` (one per vertex), weighted by `orientation`.
    pub fn normal_fan(&self, orientation: Orientation) -> Result<MultiFan> {
        self.normal_fan_labeled(orientation, "f", "v")
    }

    pub fn normal_fan_labeled(&self, orientation: Orientation, edge_prefix: &str, chamber_prefix: &str) -> Result<MultiFan> {
        self.require_delzant()?;
        let (w_plus, w_minus) = orientation.weights();
        let edges = self
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| Edge { label: format!("{edge_prefix}{i}"), vector: f.normal.clone() })
            .collect();
        let chambers = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, v)| WeightedChamber { id: format!("{chamber_prefix}{k}"), edges: v.facets.clone(), w_plus, w_minus })
            .collect();
        MultiFan::from_indices(self.dim, edges, std::iter::empty(), chambers)
    }

    /// Largest admissible chop depth at a vertex is the minimum over the
    /// other vertices `q` of `⟨u, q − p⟩`, `u` the sum of the incident normals.
    fn chop_data(&self, vertex: usize) -> Result<(LatticeVector, Vec<LatticeVector>, Rational)> {
        let v = self.vertices.get(vertex).ok_or_else(|| Error::InvalidPolytope(format!("no vertex {vertex}")))?;
        let normals: Vec<LatticeVector> = v.facets.iter().map(|&i| self.facets[i].normal.clone()).collect();
        let d = det(&normals)?;
        if v.facets.len() != self.dim || (d != 1 && d != -1) {
            return Err(Error::NotDelzant(format!("vertex {vertex} is not a smooth corner")));
        }
        let u = normals.iter().fold(LatticeVector::zero(self.dim), |acc, n| &acc + n);
        // Edge directions: the dual basis, columns of the inverse of the
        // matrix with the normals as rows.
        let m = IntegerMatrix::from_rows(self.dim, &normals)?;
        let inv = m.inverse().expect("unimodular");
        let dirs = inv.columns();
        let reach = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != vertex)
            .map(|(_, q)| {
                let diff: Vec<Rational> = q.point.iter().zip(&v.point).map(|(a, b)| a - b).collect();
                u.dot_rational(&diff)
            })
            .min()
            .unwrap_or(Rational::ONE);
        Ok((u, dirs, reach))
    }

    /// Cut a smooth corner by the hyperplane `⟨u, x − p⟩ = depth`, `u` the sum
    /// of the incident normals. `None` picks half the largest admissible depth.
    pub fn corner_chop(&self, vertex: usize, depth: Option<Rational>) -> Result<DelzantPolytope> {
        let (u, dirs, reach) = self.chop_data(vertex)?;
        let depth = depth.unwrap_or_else(|| &reach / Rational::from(2));
        if depth <= 0 || depth >= reach {
            return Err(Error::DepthTooLarge { depth: depth.to_string() });
        }
        let p = &self.vertices[vertex];
        let offset = -u.dot_rational(&p.point) - &depth;
        let new_facet = self.facets.len();
        let mut facets = self.facets.clone();
        facets.push(Facet { normal: u, offset });

        let mut vertices: Vec<Vertex> = Vec::with_capacity(self.vertices.len() + self.dim - 1);
        vertices.extend(self.vertices[..vertex].iter().cloned());
        for (i, e) in dirs.iter().enumerate() {
            let point = p.point.iter().zip(e.coords()).map(|(x, c)| x + Rational::from(c) * &depth).collect();
            let mut fs: Vec<usize> = p.facets.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &f)| f).collect();
            fs.push(new_facet);
            vertices.push(Vertex { point, facets: fs });
        }
        vertices.extend(self.vertices[vertex + 1..].iter().cloned());
        // Same order as a fresh enumeration, so vertex indices survive a
        // round trip through the facet list.
        vertices.sort_by(|a, b| a.point.cmp(&b.point));
        Ok(DelzantPolytope { dim: self.dim, facets, vertices })
    }

    /// `P × Q`: facets of `P` first (padded), then those of `Q`.
    pub fn product(&self, other: &DelzantPolytope) -> DelzantPolytope {
        let (m, n) = (self.dim, other.dim);
        let pad = |u: &LatticeVector, before: usize, after: usize| {
            LatticeVector::zero(before).concat(u).concat(&LatticeVector::zero(after))
        };
        let mut facets: Vec<Facet> =
            self.facets.iter().map(|f| Facet { normal: pad(&f.normal, 0, n), offset: f.offset.clone() }).collect();
        facets.extend(other.facets.iter().map(|f| Facet { normal: pad(&f.normal, m, 0), offset: f.offset.clone() }));
        let k = self.facets.len();
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                let mut point = a.point.clone();
                point.extend(b.point.iter().cloned());
                let mut fs = a.facets.clone();
                fs.extend(b.facets.iter().map(|f| f + k));
                vertices.push(Vertex { point, facets: fs });
            }
        }
        DelzantPolytope { dim: m + n, facets, vertices }
    }

    /// Image under the lattice automorphism acting on normals by `b`
    /// (`u ↦ b·u`); points move by `b^{-T}` so that `⟨b·u, b^{-T}x⟩ = ⟨u, x⟩`.
    pub fn transformed(&self, b: &IntegerMatrix) -> Result<DelzantPolytope> {
        if b.rows() != self.dim || b.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: b.rows() });
        }
        let inv_t = b.inverse().ok_or_else(|| Error::InvalidPolytope("transform is not unimodular".into()))?.transpose();
        self.transformed_with(b, &inv_t)
    }

    /// As [`DelzantPolytope::transformed`] with `b^{-T}` supplied.
    pub(crate) fn transformed_with(&self, b: &IntegerMatrix, inv_t: &IntegerMatrix) -> Result<DelzantPolytope> {
        let facets = self
            .facets
            .iter()
            .map(|f| Ok(Facet { normal: b.apply(&f.normal)?, offset: f.offset.clone() }))
            .collect::<Result<Vec<_>>>()?;
        let mut vertices = self
            .vertices
            .iter()
            .map(|v| Ok(Vertex { point: inv_t.apply_rational(&v.point)?, facets: v.facets.clone() }))
            .collect::<Result<Vec<_>>>()?;
        vertices.sort_by(|a, b| a.point.cmp(&b.point));
        Ok(DelzantPolytope { dim: self.dim, facets, vertices })
    }

    pub fn translated(&self, t: &[Rational]) -> DelzantPolytope {
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: &f.offset - f.normal.dot_rational(t) })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { point: v.point.iter().zip(t).map(|(x, s)| x + s).collect(), facets: v.facets.clone() })
            .collect();
        DelzantPolytope { dim: self.dim, facets, vertices }
    }

    /// `λP` for `λ > 0`.
    pub fn scaled(&self, lambda: &Rational) -> Result<DelzantPolytope> {
        if *lambda <= 0 {
            return Err(Error::InvalidPolytope("scale factor must be positive".into()));
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: &f.offset * lambda })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { point: v.point.iter().map(|x| x * lambda).collect(), facets: v.facets.clone() })
            .collect();
        Ok(DelzantPolytope { dim: self.dim, facets, vertices })
    }

    /// Vertex points of a facet, sorted.
    pub fn facet_point_set(&self, f: usize) -> Vec<Vec<Rational>> {
        let mut pts: Vec<Vec<Rational>> = self.facet_vertices(f).into_iter().map(|v| self.vertices[v].point.clone()).collect();
        pts.sort();
        pts
    }
}

impl fmt::Display for DelzantPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, h) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "<{},x> + {} >= 0", h.normal, h.offset)?;
        }
        write!(f, "}}")
    }
}

/// Bounded iff `{d : ⟨uᵢ, d⟩ ≥ 0 ∀i} = {0}`. With rank-`n` normals that
/// cone is pointed, so it is nontrivial iff one of its candidate extreme
/// rays — kernels of rank-`(n−1)` subsets of normals — lies in it.
fn check_bounded(dim: usize, facets: &[Facet]) -> Result<()> {
    let normals: Vec<LatticeVector> = facets.iter().map(|f| f.normal.clone()).collect();
    if rank(&normals) < dim {
        return Err(Error::Unbounded);
    }
    for subset in (0..normals.len()).combinations(dim - 1) {
        let rows: Vec<&LatticeVector> = subset.iter().map(|&i| &normals[i]).collect();
        let d = kernel_vector(dim, &rows);
        if d.is_zero() {
            continue;
        }
        for cand in [d.clone(), -d] {
            if normals.iter().all(|u| u.dot(&cand) >= 0) {
                return Err(Error::Unbounded);
            }
        }
    }
    Ok(())
}

/// Signed maximal minors of `n − 1` rows in `Zⁿ`: spans the kernel when the
/// rows are independent.
fn kernel_vector(dim: usize, rows: &[&LatticeVector]) -> LatticeVector {
    if dim == 2 {
        let c = rows[0].coords();
        return LatticeVector::new(vec![c[1].clone(), -&c[0]]);
    }
    LatticeVector::new(
        (0..dim)
            .map(|j| {
                let minor: Vec<LatticeVector> = rows
                    .iter()
                    .map(|r| LatticeVector::new(r.coords().iter().enumerate().filter(|(k, _)| *k != j).map(|(_, c)| c.clone()).collect()))
                    .collect();
                let d = det(&minor).expect("square minor");
                if j % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect(),
    )
}

fn enumerate_vertices(dim: usize, facets: &[Facet]) -> Vec<Vertex> {
    let mut found: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
    for subset in (0..facets.len()).combinations(dim) {
        if dim == 2 {
            // Cramer's rule, no elimination needed.
            let (f, g) = (&facets[subset[0]], &facets[subset[1]]);
            let (u, w) = (f.normal.coords(), g.normal.coords());
            let d = &u[0] * &w[1] - &u[1] * &w[0];
            if d == 0 {
                continue;
            }
            let d = Rational::from(d);
            let x = vec![
                (&g.offset * Rational::from(&u[1]) - &f.offset * Rational::from(&w[1])) / &d,
                (&f.offset * Rational::from(&w[0]) - &g.offset * Rational::from(&u[0])) / &d,
            ];
            if facets.iter().all(|f| f.eval(&x) >= 0) {
                found.insert(x, ());
            }
            continue;
        }
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| facets[i].normal.to_rationals()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| -&facets[i].offset).collect();
        if let Some(x) = solve_rational(&a, &b) {
            if facets.iter().all(|f| f.eval(&x) >= 0) {
                found.insert(x, ());
            }
        }
    }
    found
        .into_keys()
        .map(|point| {
            let fs = (0..facets.len()).filter(|&i| facets[i].eval(&point) == 0).collect();
            Vertex { point, facets: fs }
        })
        .collect()
}

fn affine_rank(points: &[&Vec<Rational>]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let mut rows: Vec<Vec<Rational>> =
                rest.iter().map(|p| p.iter().zip(p0.iter()).map(|(a, b)| a - b).collect()).collect();
            rational_rank(&mut rows)
        }
    }
}
