//! Origami templates `(P, F)`.
//!
//! A template is a list of Delzant polytopes in a common `Rⁿ`, each with an
//! optional orientation, and a list of fold entries: pairs of facets glued
//! together, or single facets folded onto themselves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use malachite::num::arithmetic::traits::Sign;
use malachite::Rational;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::multifan::MultiFan;
use crate::polytope::{DelzantPolytope, Orientation};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FacetRef {
    pub polytope: usize,
    pub facet: usize,
}

impl FacetRef {
    pub fn new(polytope: usize, facet: usize) -> FacetRef {
        FacetRef { polytope, facet }
    }
}

impl fmt::Display for FacetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}.f{}", self.polytope, self.facet)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexRef {
    pub polytope: usize,
    pub vertex: usize,
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}.v{}", self.polytope, self.vertex)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FoldEntry {
    Pair(FacetRef, FacetRef),
    Single(FacetRef),
}

impl FoldEntry {
    pub fn facets(&self) -> Vec<FacetRef> {
        match *self {
            FoldEntry::Pair(a, b) => vec![a, b],
            FoldEntry::Single(a) => vec![a],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplatePiece {
    pub polytope: DelzantPolytope,
    pub orientation: Option<Orientation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrigamiTemplate {
    dim: usize,
    pieces: Vec<TemplatePiece>,
    folds: Vec<FoldEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub cooriented: bool,
    pub oriented: bool,
    pub acyclic: bool,
}

/// `Γ(P, F)`: a vertex per polytope and an edge per pair fold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
    pub b1: usize,
}

impl OrigamiTemplate {
    /// Structural checks only (dimensions, indices); the axioms are checked
    /// by [`OrigamiTemplate::validate`].
    pub fn new(pieces: Vec<TemplatePiece>, folds: Vec<FoldEntry>) -> Result<OrigamiTemplate> {
        let dim = pieces
            .first()
            .map(|p| p.polytope.dim())
            .ok_or_else(|| Error::InvalidTemplate("no polytopes".into()))?;
        for p in &pieces {
            if p.polytope.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.polytope.dim() });
            }
        }
        for entry in &folds {
            for r in entry.facets() {
                let ok = pieces.get(r.polytope).map_or(false, |p| r.facet < p.polytope.facets().len());
                if !ok {
                    return Err(Error::InvalidTemplate(format!("fold refers to missing facet {r}")));
                }
            }
            if let FoldEntry::Pair(a, b) = entry {
                if a == b {
                    return Err(Error::InvalidTemplate(format!("facet {a} paired with itself")));
                }
            }
        }
        Ok(OrigamiTemplate { dim, pieces, folds })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[TemplatePiece] {
        &self.pieces
    }

    pub fn folds(&self) -> &[FoldEntry] {
        &self.folds
    }

    pub fn polytope(&self, i: usize) -> &DelzantPolytope {
        &self.pieces[i].polytope
    }

    pub fn folded_facets(&self) -> BTreeSet<FacetRef> {
        self.folds.iter().flat_map(|e| e.facets()).collect()
    }

    /// Two copies of the standard simplex, oppositely oriented, glued along
    /// the facet `Σx = 1`.
    pub fn sphere(n: usize) -> Result<OrigamiTemplate> {
        if n == 0 {
            return Err(Error::InvalidTemplate("sphere templates need n ≥ 1".into()));
        }
        let s = DelzantPolytope::simplex(n, Rational::from(1))?;
        OrigamiTemplate::new(
            vec![
                TemplatePiece { polytope: s.clone(), orientation: Some(Orientation::Positive) },
                TemplatePiece { polytope: s, orientation: Some(Orientation::Negative) },
            ],
            vec![FoldEntry::Pair(FacetRef::new(0, n), FacetRef::new(1, n))],
        )
    }

    /// A template with one piece and no folds.
    pub fn single(polytope: DelzantPolytope, orientation: Option<Orientation>) -> OrigamiTemplate {
        OrigamiTemplate { dim: polytope.dim(), pieces: vec![TemplatePiece { polytope, orientation }], folds: vec![] }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (i, p) in self.pieces.iter().enumerate() {
            let d = p.polytope.is_delzant();
            if !d.delzant {
                report.push("not-delzant", format!("polytope {i} is not Delzant"));
            }
        }
        for entry in &self.folds {
            if let FoldEntry::Pair(a, b) = *entry {
                if let Err(reason) = self.local_agreement(a, self, b) {
                    report.push("O1", format!("fold {a} ~ {b}: {reason}"));
                }
            }
        }
        for (k, entry) in self.folds.iter().enumerate() {
            for f in entry.facets() {
                let mut zone = self.polytope(f.polytope).facet_neighbors(f.facet);
                zone.insert(f.facet);
                for (k2, other) in self.folds.iter().enumerate() {
                    if k2 == k {
                        continue;
                    }
                    for g in other.facets() {
                        if g.polytope == f.polytope && zone.contains(&g.facet) {
                            report.push("O2", format!("{g} (fold {k2}) touches folded facet {f} (fold {k})"));
                        }
                    }
                }
            }
        }
        let g = self.graph();
        if g.components != 1 {
            report.push("O3", format!("glued space has {} components", g.components));
        }
        report
    }

    /// O1 for facet `a` of `self` against facet `b` of `other`: the facets
    /// coincide with the same inward normal, and every facet meeting one of
    /// them has a twin meeting the other with the same supporting halfspace
    /// and the same trace on the fold.
    fn local_agreement(&self, a: FacetRef, other: &OrigamiTemplate, b: FacetRef) -> std::result::Result<(), String> {
        let (p, q) = (self.polytope(a.polytope), other.polytope(b.polytope));
        if p.facets()[a.facet] != q.facets()[b.facet] {
            return Err("supporting halfspaces differ".into());
        }
        let fp = p.facet_point_set(a.facet);
        if fp != q.facet_point_set(b.facet) {
            return Err("facets differ as vertex sets".into());
        }
        let trace = |poly: &DelzantPolytope, g: usize, f: usize| {
            let mut t: Vec<Vec<Rational>> = poly
                .vertices()
                .iter()
                .filter(|v| v.facets.contains(&g) && v.facets.contains(&f))
                .map(|v| v.point.clone())
                .collect();
            t.sort();
            t
        };
        let np = p.facet_neighbors(a.facet);
        let nq = q.facet_neighbors(b.facet);
        if np.len() != nq.len() {
            return Err("different numbers of adjacent facets".into());
        }
        for g in np {
            let twin = nq.iter().any(|&h| {
                p.facets()[g] == q.facets()[h] && trace(p, g, a.facet) == trace(q, h, b.facet)
            });
            if !twin {
                return Err(format!("adjacent facet {} has no twin", FacetRef::new(a.polytope, g)));
            }
        }
        Ok(())
    }

    /// For a fold pair, the twin in `b`'s polytope of each neighbour of `a`.
    fn neighbor_matching(&self, a: FacetRef, b: FacetRef) -> Vec<(usize, usize)> {
        let (p, q) = (self.polytope(a.polytope), self.polytope(b.polytope));
        let nq = q.facet_neighbors(b.facet);
        p.facet_neighbors(a.facet)
            .into_iter()
            .filter_map(|g| nq.iter().find(|&&h| p.facets()[g] == q.facets()[h]).map(|&h| (g, h)))
            .collect()
    }

    pub fn graph(&self) -> TemplateGraph {
        let n = self.pieces.len();
        let edges: Vec<(usize, usize)> = self
            .folds
            .iter()
            .filter_map(|e| match *e {
                FoldEntry::Pair(a, b) => Some((a.polytope, b.polytope)),
                FoldEntry::Single(_) => None,
            })
            .collect();
        let mut uf = UnionFind::<usize>::new(n);
        for &(a, b) in &edges {
            uf.union(a, b);
        }
        let components = (0..n).map(|i| uf.find_mut(i)).collect::<BTreeSet<_>>().len();
        let b1 = edges.len() + components - n;
        TemplateGraph { vertices: n, edges, components, b1 }
    }

    pub fn classify(&self) -> Classification {
        let cooriented = self.folds.iter().all(|e| matches!(e, FoldEntry::Pair(..)));
        let oriented = cooriented
            && self.pieces.iter().all(|p| p.orientation.is_some())
            && self.folds.iter().all(|e| match *e {
                FoldEntry::Pair(a, b) => {
                    self.pieces[a.polytope].orientation != self.pieces[b.polytope].orientation
                }
                FoldEntry::Single(_) => false,
            });
        let g = self.graph();
        Classification { cooriented, oriented, acyclic: g.b1 == 0 && g.components == 1 }
    }

    /// `Δ(P, F)`: the union of the pieces' normal fans with one diamond per
    /// fold pair. Edge labels are `p{i}.f{j}`, chamber ids `p{i}.v{k}`.
    pub fn multifan(&self) -> Result<MultiFan> {
        if !self.classify().oriented {
            return Err(Error::NotOriented);
        }
        let fans = self
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.polytope.normal_fan_labeled(p.orientation.expect("oriented"), &format!("p{i}.f"), &format!("p{i}.v"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut fan = MultiFan::union_all(self.dim, fans)?;
        for entry in &self.folds {
            if let FoldEntry::Pair(a, b) = *entry {
                let (la, lb) = (a.to_string(), b.to_string());
                let ia = fan.edge_index(&la).ok_or_else(|| Error::DiamondPreconditionFailed(format!("{la} was absorbed")))?;
                let ib = fan.edge_index(&lb).ok_or_else(|| Error::DiamondPreconditionFailed(format!("{lb} was absorbed")))?;
                fan = fan
                    .diamond_within(ia, ib)
                    .map_err(|e| Error::DiamondPreconditionFailed(format!("fold {la} ~ {lb}: {e}")))?;
            }
        }
        Ok(fan)
    }

    pub fn vertex_on_fold(&self, v: VertexRef) -> bool {
        let folded = self.folded_facets();
        self.polytope(v.polytope).vertices()[v.vertex]
            .facets
            .iter()
            .any(|&f| folded.contains(&FacetRef::new(v.polytope, f)))
    }

    /// Vertices of `|(P, F)|`: polytope vertices on no folded facet.
    pub fn count_fixed_points(&self) -> usize {
        let folded = self.folded_facets();
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.polytope
                    .vertices()
                    .iter()
                    .filter(|v| !v.facets.iter().any(|&f| folded.contains(&FacetRef::new(i, f))))
                    .count()
            })
            .sum()
    }

    fn facet_ids(&self) -> (Vec<usize>, Vec<FacetRef>) {
        let mut offsets = Vec::with_capacity(self.pieces.len());
        let mut refs = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            offsets.push(refs.len());
            refs.extend((0..p.polytope.facets().len()).map(|f| FacetRef::new(i, f)));
        }
        (offsets, refs)
    }

    /// Union-find class of every non-folded facet: facets glued across a
    /// fold along their common trace on it belong to one facet of `|(P, F)|`.
    fn facet_class_map(&self) -> BTreeMap<FacetRef, usize> {
        let (offsets, refs) = self.facet_ids();
        let id = |r: FacetRef| offsets[r.polytope] + r.facet;
        let mut uf = UnionFind::<usize>::new(refs.len());
        for entry in &self.folds {
            if let FoldEntry::Pair(a, b) = *entry {
                for (g, h) in self.neighbor_matching(a, b) {
                    uf.union(id(FacetRef::new(a.polytope, g)), id(FacetRef::new(b.polytope, h)));
                }
            }
        }
        let folded = self.folded_facets();
        let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for r in refs.into_iter().filter(|r| !folded.contains(r)) {
            let root = uf.find_mut(id(r));
            let next = class_of_root.len();
            let c = *class_of_root.entry(root).or_insert(next);
            out.insert(r, c);
        }
        out
    }

    /// Facets of `|(P, F)|` as classes of polytope facets.
    pub fn facet_classes(&self) -> Vec<Vec<FacetRef>> {
        let map = self.facet_class_map();
        let k = map.values().copied().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); k];
        for (r, c) in map {
            classes[c].push(r);
        }
        classes
    }

    /// Whether every nonempty intersection of facets of `|(P, F)|` is
    /// connected and contains a vertex of `|(P, F)|`.
    pub fn faces_connected(&self) -> bool {
        let class = self.facet_class_map();
        let folded = self.folded_facets();
        // Every nonempty intersection contains a polytope vertex, so the
        // class sets to test are the subsets of some vertex's classes.
        let mut candidates: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for (i, p) in self.pieces.iter().enumerate() {
            for v in p.polytope.vertices() {
                let cs: Vec<usize> =
                    v.facets.iter().filter_map(|&f| class.get(&FacetRef::new(i, f)).copied()).collect();
                for mask in 1u32..(1 << cs.len()) {
                    candidates.insert((0..cs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| cs[k]).collect());
                }
            }
        }
        candidates.iter().all(|s| self.intersection_ok(s, &class, &folded))
    }

    fn intersection_ok(
        &self,
        s: &BTreeSet<usize>,
        class: &BTreeMap<FacetRef, usize>,
        folded: &BTreeSet<FacetRef>,
    ) -> bool {
        // Nodes: polytope vertices lying in every class of `s`, together with
        // the facets that witness each class.
        let mut nodes: Vec<(usize, usize, Vec<Vec<usize>>)> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            for (k, v) in p.polytope.vertices().iter().enumerate() {
                let witnesses: Vec<Vec<usize>> = s
                    .iter()
                    .map(|c| {
                        v.facets.iter().copied().filter(|&f| class.get(&FacetRef::new(i, f)) == Some(c)).collect()
                    })
                    .collect();
                if witnesses.iter().all(|w: &Vec<usize>| !w.is_empty()) {
                    nodes.push((i, k, witnesses));
                }
            }
        }
        if nodes.is_empty() {
            return true;
        }
        let mut uf = UnionFind::<usize>::new(nodes.len());
        for x in 0..nodes.len() {
            for y in x + 1..nodes.len() {
                let (a, b) = (&nodes[x], &nodes[y]);
                let joined = if a.0 == b.0 {
                    // Same polytope: both on one face cut out by a common
                    // facet per class.
                    a.2.iter().zip(&b.2).all(|(wa, wb)| wa.iter().any(|f| wb.contains(f)))
                } else {
                    let pa = &self.polytope(a.0).vertices()[a.1];
                    let pb = &self.polytope(b.0).vertices()[b.1];
                    pa.point == pb.point
                        && self.folds.iter().any(|e| match *e {
                            FoldEntry::Pair(f, g) => {
                                (f.polytope == a.0 && g.polytope == b.0 && pa.facets.contains(&f.facet) && pb.facets.contains(&g.facet))
                                    || (g.polytope == a.0
                                        && f.polytope == b.0
                                        && pa.facets.contains(&g.facet)
                                        && pb.facets.contains(&f.facet))
                            }
                            FoldEntry::Single(_) => false,
                        })
                };
                if joined {
                    uf.union(x, y);
                }
            }
        }
        let roots: BTreeSet<usize> = (0..nodes.len()).map(|x| uf.find_mut(x)).collect();
        let has_vertex = nodes.iter().any(|(i, k, _)| {
            !self.polytope(*i).vertices()[*k].facets.iter().any(|&f| folded.contains(&FacetRef::new(*i, f)))
        });
        roots.len() == 1 && has_vertex
    }

    /// Whether `f` neither is folded nor meets a folded facet.
    pub fn is_non_folded(&self, f: FacetRef) -> bool {
        let folded = self.folded_facets();
        let p = self.polytope(f.polytope);
        !folded.contains(&f)
            && p.facet_neighbors(f.facet).into_iter().all(|g| !folded.contains(&FacetRef::new(f.polytope, g)))
    }

    /// `(P ⊔ P′, F ⊔ F′ ⊔ {F, F′})`. The facets must already coincide
    /// geometrically, with matching neighbourhoods.
    pub fn diamond(&self, other: &OrigamiTemplate, f: FacetRef, f2: FacetRef) -> Result<OrigamiTemplate> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        for (t, r) in [(self, f), (other, f2)] {
            if r.polytope >= t.pieces.len() || r.facet >= t.polytope(r.polytope).facets().len() {
                return Err(Error::InvalidTemplate(format!("no facet {r}")));
            }
            if !t.is_non_folded(r) {
                return Err(Error::NotNonFolded(r.to_string()));
            }
        }
        match (self.pieces[f.polytope].orientation, other.pieces[f2.polytope].orientation) {
            (Some(a), Some(b)) if a != b => {}
            (Some(_), Some(_)) => return Err(Error::SameOrientation),
            _ => return Err(Error::NotOriented),
        }
        self.local_agreement(f, other, f2).map_err(Error::NeighborhoodMismatch)?;
        let out = self.glue(other, f, f2)?;
        let report = out.validate();
        if !report.is_valid() {
            return Err(Error::InvalidTemplate(report.to_string()));
        }
        Ok(out)
    }

    /// Disjoint union plus the fold `f ~ f2`, without any checks beyond
    /// index validity. `other`'s polytopes come after `self`'s.
    pub(crate) fn glue(&self, other: &OrigamiTemplate, f: FacetRef, f2: FacetRef) -> Result<OrigamiTemplate> {
        self.clone().into_glued(other.clone(), f, f2)
    }

    pub(crate) fn into_glued(self, other: OrigamiTemplate, f: FacetRef, f2: FacetRef) -> Result<OrigamiTemplate> {
        let shift = self.pieces.len();
        let mut pieces = self.pieces;
        pieces.extend(other.pieces);
        let moved = |r: FacetRef| FacetRef::new(r.polytope + shift, r.facet);
        let mut folds = self.folds;
        folds.extend(other.folds.iter().map(|e| match *e {
            FoldEntry::Pair(a, b) => FoldEntry::Pair(moved(a), moved(b)),
            FoldEntry::Single(a) => FoldEntry::Single(moved(a)),
        }));
        folds.push(FoldEntry::Pair(f, moved(f2)));
        OrigamiTemplate::new(pieces, folds)
    }

    /// Cut both corners at equal depth and glue the created facets. The
    /// vertex cones must coincide; `other` is translated onto `v`.
    pub fn connected_sum(&self, other: &OrigamiTemplate, v: VertexRef, v2: VertexRef) -> Result<OrigamiTemplate> {
        for (t, r) in [(self, v), (other, v2)] {
            if r.polytope >= t.pieces.len() || r.vertex >= t.polytope(r.polytope).vertices().len() {
                return Err(Error::InvalidTemplate(format!("no vertex {r}")));
            }
            if t.vertex_on_fold(r) {
                return Err(Error::VertexOnFold(r.to_string()));
            }
        }
        let (p, q) = (self.polytope(v.polytope), other.polytope(v2.polytope));
        let (pv, qv) = (&p.vertices()[v.vertex], &q.vertices()[v2.vertex]);
        let cone = |poly: &DelzantPolytope, fs: &[usize]| {
            let mut ns: Vec<_> = fs.iter().map(|&f| poly.facets()[f].normal.clone()).collect();
            ns.sort();
            ns
        };
        if cone(p, &pv.facets) != cone(q, &qv.facets) {
            return Err(Error::ConeMismatch(format!("vertex cones at {v} and {v2} differ")));
        }
        match (self.pieces[v.polytope].orientation, other.pieces[v2.polytope].orientation) {
            (Some(a), Some(b)) if a != b => {}
            (Some(_), Some(_)) => return Err(Error::SameOrientation),
            _ => return Err(Error::NotOriented),
        }
        let shift: Vec<Rational> = pv.point.iter().zip(&qv.point).map(|(a, b)| a - b).collect();
        let other = other.translated(&shift);
        let q = other.polytope(v2.polytope);
        let reach = |poly: &DelzantPolytope, k: usize| {
            let u = poly.vertices()[k]
                .facets
                .iter()
                .fold(crate::lattice::LatticeVector::zero(self.dim), |acc, &f| &acc + &poly.facets()[f].normal);
            poly.vertices()
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, w)| {
                    let diff: Vec<Rational> = w.point.iter().zip(&poly.vertices()[k].point).map(|(a, b)| a - b).collect();
                    u.dot_rational(&diff)
                })
                .min()
                .unwrap_or(Rational::from(1))
        };
        let depth = reach(p, v.vertex).min(reach(q, v2.vertex)) / Rational::from(2);
        let chopped_p = p.corner_chop(v.vertex, Some(depth.clone()))?;
        let chopped_q = q.corner_chop(v2.vertex, Some(depth))?;
        let f = FacetRef::new(v.polytope, chopped_p.facets().len() - 1);
        let f2 = FacetRef::new(v2.polytope, chopped_q.facets().len() - 1);
        let a = self.with_polytope(v.polytope, chopped_p);
        let b = other.with_polytope(v2.polytope, chopped_q);
        a.diamond(&b, f, f2)
    }

    /// Replace one polytope, keeping facet indices (and so the folds) valid.
    pub fn with_polytope(&self, i: usize, polytope: DelzantPolytope) -> OrigamiTemplate {
        let mut out = self.clone();
        out.set_polytope(i, polytope);
        out
    }

    pub(crate) fn set_polytope(&mut self, i: usize, polytope: DelzantPolytope) {
        self.pieces[i].polytope = polytope;
    }

    /// Every polytope replaced by its product with `q`; folds keep their
    /// facet indices since the factor's facets come first.
    pub fn product(&self, q: &DelzantPolytope) -> OrigamiTemplate {
        let pieces = self
            .pieces
            .iter()
            .map(|p| TemplatePiece { polytope: p.polytope.product(q), orientation: p.orientation })
            .collect();
        OrigamiTemplate { dim: self.dim + q.dim(), pieces, folds: self.folds.clone() }
    }

    /// Apply `u ↦ b·u` to all normals. Orientations are multiplied by
    /// `sign det b`, which keeps the multi-fan equal to the image of the
    /// original multi-fan with weights swapped exactly when `det b = −1`.
    pub fn transformed(&self, b: &IntegerMatrix) -> Result<OrigamiTemplate> {
        if b.rows() != self.dim || b.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: b.rows() });
        }
        let d = b.det()?;
        let flip = d.sign() == std::cmp::Ordering::Less;
        let inv_t = b.inverse().ok_or_else(|| Error::InvalidTemplate("transform is not unimodular".into()))?.transpose();
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(TemplatePiece {
                    polytope: p.polytope.transformed_with(b, &inv_t)?,
                    orientation: p.orientation.map(|o| if flip { o.opposite() } else { o }),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrigamiTemplate { dim: self.dim, pieces, folds: self.folds.clone() })
    }

    pub fn translated(&self, t: &[Rational]) -> OrigamiTemplate {
        let pieces = self
            .pieces
            .iter()
            .map(|p| TemplatePiece { polytope: p.polytope.translated(t), orientation: p.orientation })
            .collect();
        OrigamiTemplate { dim: self.dim, pieces, folds: self.folds.clone() }
    }

    pub fn scaled(&self, lambda: &Rational) -> Result<OrigamiTemplate> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Ok(TemplatePiece { polytope: p.polytope.scaled(lambda)?, orientation: p.orientation }))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrigamiTemplate { dim: self.dim, pieces, folds: self.folds.clone() })
    }

    /// Flip every orientation.
    pub fn reversed(&self) -> OrigamiTemplate {
        let mut out = self.clone();
        for p in &mut out.pieces {
            p.orientation = p.orientation.map(Orientation::opposite);
        }
        out
    }
}

#[cfg(test)]
mod tests;
