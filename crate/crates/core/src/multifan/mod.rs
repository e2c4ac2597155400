//! Simplicial multi-fans `(Σ, C, w±)`.
//!
//! A multi-fan is stored as an edge table (label → primitive vector), a set of
//! faces below top dimension encoded as sorted edge-index sets, and a list of
//! top-dimensional chambers. Chambers carry multiplicity: two chambers may
//! sit on the same cone with different weights, which is exactly what the
//! multi-fan of a folded template produces.

mod degree;
mod ops;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{det, quotient_group, rank, LatticeVector};
use crate::report::ValidationReport;

pub use degree::{DegreeMethod, DegreeOptions, DegreeReport, GenericVector};

/// A one-dimensional cone: a label and its primitive generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub label: String,
    pub vector: LatticeVector,
}

/// A top-dimensional element of `Σ` with its weights `(w⁺, w⁻)`.
///
/// `edges` holds sorted indices into the owning multi-fan's edge table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedChamber {
    pub id: String,
    pub edges: Vec<usize>,
    pub w_plus: u64,
    pub w_minus: u64,
}

impl WeightedChamber {
    /// `w⁺ − w⁻`, the chamber's contribution to `d_v`.
    pub fn net(&self) -> i64 {
        self.w_plus as i64 - self.w_minus as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFan {
    dim: usize,
    edges: Vec<Edge>,
    faces: BTreeSet<Vec<usize>>,
    chambers: Vec<WeightedChamber>,
}

/// Label-based construction; faces are closed under subsets on `build`.
#[derive(Debug, Clone)]
pub struct MultiFanBuilder {
    dim: usize,
    edges: Vec<Edge>,
    faces: Vec<Vec<String>>,
    chambers: Vec<(String, Vec<String>, u64, u64)>,
}

impl MultiFanBuilder {
    pub fn edge(mut self, label: impl Into<String>, vector: LatticeVector) -> Self {
        self.edges.push(Edge { label: label.into(), vector });
        self
    }

    pub fn face<S: AsRef<str>>(mut self, labels: &[S]) -> Self {
        self.faces.push(labels.iter().map(|s| s.as_ref().to_string()).collect());
        self
    }

    pub fn chamber<S: AsRef<str>>(
        mut self,
        id: impl Into<String>,
        labels: &[S],
        w_plus: u64,
        w_minus: u64,
    ) -> Self {
        let labels = labels.iter().map(|s| s.as_ref().to_string()).collect();
        self.chambers.push((id.into(), labels, w_plus, w_minus));
        self
    }

    pub fn build(self) -> Result<MultiFan> {
        let lookup: BTreeMap<&str, usize> =
            self.edges.iter().enumerate().map(|(i, e)| (e.label.as_str(), i)).collect();
        if lookup.len() != self.edges.len() {
            return Err(Error::InvalidMultiFan("duplicate edge label".into()));
        }
        let resolve = |labels: &[String]| -> Result<Vec<usize>> {
            let mut idx = labels
                .iter()
                .map(|l| lookup.get(l.as_str()).copied().ok_or_else(|| Error::EdgeNotPresent(l.clone())))
                .collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            let before = idx.len();
            idx.dedup();
            if idx.len() != before {
                return Err(Error::InvalidMultiFan(format!("repeated label in {labels:?}")));
            }
            Ok(idx)
        };
        let faces = self.faces.iter().map(|f| resolve(f)).collect::<Result<Vec<_>>>()?;
        let chambers = self
            .chambers
            .iter()
            .map(|(id, labels, wp, wm)| {
                Ok(WeightedChamber { id: id.clone(), edges: resolve(labels)?, w_plus: *wp, w_minus: *wm })
            })
            .collect::<Result<Vec<_>>>()?;
        MultiFan::from_indices(self.dim, self.edges, faces, chambers)
    }
}

impl MultiFan {
    pub fn builder(dim: usize) -> MultiFanBuilder {
        MultiFanBuilder { dim, edges: Vec::new(), faces: Vec::new(), chambers: Vec::new() }
    }

    /// Assemble from index data, closing the face set under subsets (and
    /// adding every proper subset of every chamber, every singleton and ∅).
    pub fn from_indices(
        dim: usize,
        edges: Vec<Edge>,
        faces: impl IntoIterator<Item = Vec<usize>>,
        chambers: Vec<WeightedChamber>,
    ) -> Result<MultiFan> {
        let mut closed = BTreeSet::new();
        closed.insert(Vec::new());
        for i in 0..edges.len() {
            closed.insert(vec![i]);
        }
        for mut f in faces {
            f.sort_unstable();
            if f.len() >= dim.max(1) {
                return Err(Error::InvalidMultiFan(format!(
                    "face of size {} must be listed as a chamber in dimension {dim}",
                    f.len()
                )));
            }
            insert_with_subsets(&mut closed, &f, f.len());
        }
        for c in &chambers {
            if c.edges.len() == dim {
                insert_with_subsets(&mut closed, &c.edges, dim.saturating_sub(1));
            }
        }
        let mf = MultiFan { dim, edges, faces: closed, chambers };
        mf.check_structure()?;
        Ok(mf)
    }

    /// Assemble without closing the face set. Structural problems (bad
    /// indices, dimensions, duplicate labels) are errors; axiom violations
    /// are left for [`MultiFan::validate`].
    pub fn from_raw_parts(
        dim: usize,
        edges: Vec<Edge>,
        faces: BTreeSet<Vec<usize>>,
        chambers: Vec<WeightedChamber>,
    ) -> Result<MultiFan> {
        let mf = MultiFan { dim, edges, faces, chambers };
        mf.check_structure()?;
        Ok(mf)
    }

    fn check_structure(&self) -> Result<()> {
        let mut labels = BTreeSet::new();
        for e in &self.edges {
            if e.vector.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: e.vector.dim() });
            }
            if !labels.insert(e.label.as_str()) {
                return Err(Error::InvalidMultiFan(format!("duplicate edge label {:?}", e.label)));
            }
        }
        let in_range = |s: &[usize]| s.iter().all(|&i| i < self.edges.len()) && s.windows(2).all(|w| w[0] < w[1]);
        for f in &self.faces {
            if !in_range(f) {
                return Err(Error::InvalidMultiFan(format!("malformed face {f:?}")));
            }
        }
        let mut ids = BTreeSet::new();
        for c in &self.chambers {
            if !in_range(&c.edges) {
                return Err(Error::InvalidMultiFan(format!("malformed chamber {:?}", c.id)));
            }
            if c.edges.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: c.edges.len() });
            }
            if !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidMultiFan(format!("duplicate chamber id {:?}", c.id)));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// All faces below top dimension, including ∅.
    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    pub fn chambers(&self) -> &[WeightedChamber] {
        &self.chambers
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    pub fn edge_vector(&self, label: &str) -> Option<&LatticeVector> {
        self.edges.iter().find(|e| e.label == label).map(|e| &e.vector)
    }

    pub fn chamber(&self, id: &str) -> Option<&WeightedChamber> {
        self.chambers.iter().find(|c| c.id == id)
    }

    pub fn labels_of(&self, set: &[usize]) -> Vec<&str> {
        set.iter().map(|&i| self.edges[i].label.as_str()).collect()
    }

    pub fn vectors_of(&self, set: &[usize]) -> Vec<LatticeVector> {
        set.iter().map(|&i| self.edges[i].vector.clone()).collect()
    }

    /// Sorted generator vectors of a cone: its geometric identity.
    pub fn cone_key(&self, set: &[usize]) -> Vec<LatticeVector> {
        let mut k = self.vectors_of(set);
        k.sort();
        k
    }

    /// Resolve a label list to a sorted index set.
    pub fn resolve(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut idx = labels
            .iter()
            .map(|l| self.edge_index(l).ok_or_else(|| Error::EdgeNotPresent(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        Ok(idx)
    }

    /// Check the multi-fan axioms; violations are returned as data.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for e in &self.edges {
            if e.vector.is_zero() {
                report.push("zero-edge", format!("edge {} has the zero vector", e.label));
            } else if !e.vector.is_primitive() {
                report.push("non-primitive-edge", format!("edge {} = {} is not primitive", e.label, e.vector));
            }
        }
        if !self.faces.contains(&Vec::new()) {
            report.push("missing-empty-face", "the face set does not contain ∅");
        }
        for f in &self.faces {
            if f.len() >= self.dim.max(1) {
                report.push("face-size", format!("face {:?} is not below top dimension", self.labels_of(f)));
            }
            if rank(&self.vectors_of(f)) < f.len() {
                report.push("dependent-generators", format!("face {:?} has dependent generators", self.labels_of(f)));
            }
            for i in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(i);
                if !self.faces.contains(&sub) {
                    report.push(
                        "face-not-closed",
                        format!("subset {:?} of face {:?} is missing", self.labels_of(&sub), self.labels_of(f)),
                    );
                }
            }
        }
        for c in &self.chambers {
            if c.w_plus == 0 && c.w_minus == 0 {
                report.push("zero-weight", format!("chamber {} has weight (0,0)", c.id));
            }
            if rank(&self.vectors_of(&c.edges)) < self.dim {
                report.push("dependent-generators", format!("chamber {} has dependent generators", c.id));
            }
            for i in 0..c.edges.len() {
                let mut sub = c.edges.clone();
                sub.remove(i);
                if !self.faces.contains(&sub) {
                    report.push(
                        "face-not-closed",
                        format!("facet {:?} of chamber {} is missing", self.labels_of(&sub), c.id),
                    );
                }
            }
        }
        report
    }

    /// Every chamber is unimodular and every face extends to a `Z`-basis.
    pub fn is_nonsingular(&self) -> bool {
        let chambers_ok = self.chambers.iter().all(|c| {
            det(&self.vectors_of(&c.edges)).map(|d| d == 1 || d == -1).unwrap_or(false)
        });
        chambers_ok
            && self.faces.iter().all(|f| {
                if f.is_empty() {
                    return true;
                }
                // Part of a basis ⇔ Zⁿ / ⟨face⟩ is free of rank n − |face|.
                quotient_group(&self.vectors_of(f), self.dim)
                    .map(|g| g.torsion.is_empty() && g.free_rank + f.len() == self.dim)
                    .unwrap_or(false)
            })
    }

    /// Negate one edge and swap the weights of the chambers containing it.
    pub fn flip_edge(&self, label: &str) -> Result<MultiFan> {
        let i = self.edge_index(label).ok_or_else(|| Error::EdgeNotPresent(label.to_string()))?;
        let mut signs = vec![1i8; self.edges.len()];
        signs[i] = -1;
        Ok(self.flip_edges(&signs))
    }

    /// Apply a sign per edge (indexed like [`MultiFan::edges`]); a chamber's
    /// weights swap when it contains an odd number of negated edges.
    pub fn flip_edges(&self, signs: &[i8]) -> MultiFan {
        assert_eq!(signs.len(), self.edges.len(), "one sign per edge");
        let mut out = self.clone();
        for (e, &s) in out.edges.iter_mut().zip(signs) {
            if s < 0 {
                e.vector = -&e.vector;
            }
        }
        for c in &mut out.chambers {
            let odd = c.edges.iter().filter(|&&i| signs[i] < 0).count() % 2 == 1;
            if odd {
                std::mem::swap(&mut c.w_plus, &mut c.w_minus);
            }
        }
        out
    }

    /// Reverse the orientation: every vector negated, every weight swapped.
    pub fn flip_global(&self) -> MultiFan {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.vector = -&e.vector;
        }
        for c in &mut out.chambers {
            std::mem::swap(&mut c.w_plus, &mut c.w_minus);
        }
        out
    }

    /// Geometric canonical form: edges with equal vectors are unified,
    /// chambers on the same cone are merged with summed weights, and
    /// everything is relabelled `e0…`, `c0…` in sorted order.
    pub fn merge(&self) -> MultiFan {
        let mut by_vector: BTreeMap<&LatticeVector, usize> = BTreeMap::new();
        for e in &self.edges {
            by_vector.insert(&e.vector, 0);
        }
        for (k, slot) in by_vector.values_mut().enumerate() {
            *slot = k;
        }
        let new_index: Vec<usize> = self.edges.iter().map(|e| by_vector[&e.vector]).collect();
        let map_set = |s: &[usize]| {
            let mut t: Vec<usize> = s.iter().map(|&i| new_index[i]).collect();
            t.sort_unstable();
            t.dedup();
            t
        };
        let edges: Vec<Edge> = by_vector
            .keys()
            .enumerate()
            .map(|(k, v)| Edge { label: format!("e{k}"), vector: (*v).clone() })
            .collect();
        let faces: BTreeSet<Vec<usize>> = self.faces.iter().map(|f| map_set(f)).collect();
        let mut cones: BTreeMap<Vec<usize>, (u64, u64)> = BTreeMap::new();
        for c in &self.chambers {
            let w = cones.entry(map_set(&c.edges)).or_default();
            w.0 += c.w_plus;
            w.1 += c.w_minus;
        }
        let chambers = cones
            .into_iter()
            .enumerate()
            .map(|(k, (edges, (w_plus, w_minus)))| WeightedChamber { id: format!("c{k}"), edges, w_plus, w_minus })
            .collect();
        MultiFan { dim: self.dim, edges, faces, chambers }
    }

    /// Same data up to relabelling of edges and chambers: a bijection of
    /// edges preserving vectors that carries faces to faces and chambers
    /// (with weights, counted with multiplicity) to chambers.
    pub fn is_isomorphic(&self, other: &MultiFan) -> bool {
        if self.dim != other.dim
            || self.edges.len() != other.edges.len()
            || self.faces.len() != other.faces.len()
            || self.chambers.len() != other.chambers.len()
        {
            return false;
        }
        let group = |mf: &MultiFan| {
            let mut g: BTreeMap<LatticeVector, Vec<usize>> = BTreeMap::new();
            for (i, e) in mf.edges.iter().enumerate() {
                g.entry(e.vector.clone()).or_default().push(i);
            }
            g
        };
        let (ga, gb) = (group(self), group(other));
        if ga.len() != gb.len() || ga.iter().zip(&gb).any(|((va, a), (vb, b))| va != vb || a.len() != b.len()) {
            return false;
        }
        let target_chambers = {
            let mut t: Vec<(Vec<usize>, u64, u64)> =
                other.chambers.iter().map(|c| (c.edges.clone(), c.w_plus, c.w_minus)).collect();
            t.sort();
            t
        };
        let groups: Vec<(Vec<usize>, Vec<usize>)> =
            ga.into_values().zip(gb.into_values()).collect();
        let mut map = vec![usize::MAX; self.edges.len()];
        self.search_isomorphism(other, &groups, 0, &mut map, &target_chambers)
    }

    fn search_isomorphism(
        &self,
        other: &MultiFan,
        groups: &[(Vec<usize>, Vec<usize>)],
        g: usize,
        map: &mut Vec<usize>,
        target_chambers: &[(Vec<usize>, u64, u64)],
    ) -> bool {
        if g == groups.len() {
            let apply = |s: &[usize]| {
                let mut t: Vec<usize> = s.iter().map(|&i| map[i]).collect();
                t.sort_unstable();
                t
            };
            if !self.faces.iter().all(|f| other.faces.contains(&apply(f))) {
                return false;
            }
            let mut mapped: Vec<(Vec<usize>, u64, u64)> =
                self.chambers.iter().map(|c| (apply(&c.edges), c.w_plus, c.w_minus)).collect();
            mapped.sort();
            return mapped == target_chambers;
        }
        let (src, dst) = &groups[g];
        let mut perm: Vec<usize> = (0..dst.len()).collect();
        loop {
            for (k, &s) in src.iter().enumerate() {
                map[s] = dst[perm[k]];
            }
            if self.search_isomorphism(other, groups, g + 1, map, target_chambers) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    /// Look for per-edge signs making `merge(flip(self))` isomorphic to
    /// `merge(other)`. Exhaustive over `2^edges`; `bound` caps the edge count.
    pub fn equivalent_up_to_signs(&self, other: &MultiFan, bound: usize) -> Result<Option<Vec<i8>>> {
        let k = self.edges.len();
        if self.dim != other.dim || k != other.edges.len() {
            return Ok(None);
        }
        if k > bound || k >= 63 {
            return Err(Error::TooLarge { size: k, bound });
        }
        let target = other.merge();
        for mask in 0u64..(1u64 << k) {
            let signs: Vec<i8> = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let candidate = self.flip_edges(&signs).merge();
            if candidate == target {
                return Ok(Some(signs));
            }
        }
        Ok(None)
    }

    /// Relabel edges and chambers with fresh names while keeping order.
    pub fn relabeled(&self, edge_prefix: &str, chamber_prefix: &str) -> MultiFan {
        let mut out = self.clone();
        for (i, e) in out.edges.iter_mut().enumerate() {
            e.label = format!("{edge_prefix}{i}");
        }
        for (i, c) in out.chambers.iter_mut().enumerate() {
            c.id = format!("{chamber_prefix}{i}");
        }
        out
    }

    /// Rename a single edge label.
    pub fn rename_edge(&mut self, index: usize, label: String) -> Result<()> {
        if self.edges.iter().enumerate().any(|(i, e)| i != index && e.label == label) {
            return Err(Error::InvalidMultiFan(format!("duplicate edge label {label:?}")));
        }
        self.edges[index].label = label;
        Ok(())
    }

    /// Faces not implied by the chambers or by larger faces; together with
    /// the chamber list they regenerate the face set under subset closure.
    pub fn generating_faces(&self) -> Vec<Vec<usize>> {
        let mut implied = BTreeSet::new();
        for c in &self.chambers {
            insert_with_subsets(&mut implied, &c.edges, self.dim.saturating_sub(1));
        }
        let extra: Vec<&Vec<usize>> =
            self.faces.iter().filter(|f| f.len() > 1 && !implied.contains(*f)).collect();
        extra
            .iter()
            .filter(|f| !extra.iter().any(|g| g.len() > f.len() && f.iter().all(|x| g.contains(x))))
            .map(|f| (*f).clone())
            .collect()
    }
}

impl fmt::Display for MultiFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "multi-fan in dimension {}: edges", self.dim)?;
        for e in &self.edges {
            write!(f, " {}={}", e.label, e.vector)?;
        }
        write!(f, "; chambers")?;
        for c in &self.chambers {
            write!(f, " {}{:?}({},{})", c.id, self.labels_of(&c.edges), c.w_plus, c.w_minus)?;
        }
        Ok(())
    }
}

/// Summary used by reports and the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberSummary {
    pub cone: Vec<Vec<String>>,
    pub w: (u64, u64),
}

impl MultiFan {
    pub fn chamber_summaries(&self) -> Vec<ChamberSummary> {
        let mut out: Vec<ChamberSummary> = self
            .chambers
            .iter()
            .map(|c| ChamberSummary {
                cone: self
                    .cone_key(&c.edges)
                    .iter()
                    .map(|v| v.coords().iter().map(|x| x.to_string()).collect())
                    .collect(),
                w: (c.w_plus, c.w_minus),
            })
            .collect();
        out.sort_by(|a, b| (&a.cone, a.w).cmp(&(&b.cone, b.w)));
        out
    }
}

/// Insert every subset of `set` of size ≤ `max_len`.
pub(crate) fn insert_with_subsets(faces: &mut BTreeSet<Vec<usize>>, set: &[usize], max_len: usize) {
    let n = set.len();
    if n > 24 {
        // Never happens for simplicial data in sane dimensions.
        panic!("cone with {n} generators");
    }
    for mask in 0u32..(1u32 << n) {
        if (mask.count_ones() as usize) <= max_len {
            let sub: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            faces.insert(sub);
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests;
