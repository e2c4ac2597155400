//! Surgery on multi-fans: disjoint union, diamond, blow-up, connected sum.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;

use super::{insert_with_subsets, Edge, MultiFan, WeightedChamber};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

impl MultiFan {
    /// Side-by-side union. Labels of `other` that collide with labels of
    /// `self` get primes appended. Returns the union and the index offset of
    /// `other`'s edges.
    pub fn disjoint_union(&self, other: &MultiFan) -> Result<(MultiFan, usize)> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let offset = self.edges.len();
        let mut labels: BTreeSet<String> = self.edges.iter().map(|e| e.label.clone()).collect();
        let mut ids: BTreeSet<String> = self.chambers.iter().map(|c| c.id.clone()).collect();
        let fresh = |taken: &mut BTreeSet<String>, name: &str| {
            let mut n = name.to_string();
            while taken.contains(&n) {
                n.push('\'');
            }
            taken.insert(n.clone());
            n
        };
        let mut edges = self.edges.clone();
        for e in &other.edges {
            edges.push(Edge { label: fresh(&mut labels, &e.label), vector: e.vector.clone() });
        }
        let shift = |s: &[usize]| s.iter().map(|i| i + offset).collect::<Vec<_>>();
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().map(|f| shift(f)));
        let mut chambers = self.chambers.clone();
        for c in &other.chambers {
            chambers.push(WeightedChamber {
                id: fresh(&mut ids, &c.id),
                edges: shift(&c.edges),
                w_plus: c.w_plus,
                w_minus: c.w_minus,
            });
        }
        Ok((MultiFan { dim: self.dim, edges, faces, chambers }, offset))
    }

    /// Union of several fans whose labels are already distinct.
    pub(crate) fn union_all(dim: usize, fans: Vec<MultiFan>) -> Result<MultiFan> {
        let mut out = MultiFan { dim, edges: Vec::new(), faces: BTreeSet::new(), chambers: Vec::new() };
        for f in fans {
            if f.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.dim });
            }
            let offset = out.edges.len();
            out.edges.extend(f.edges);
            out.faces.extend(f.faces.into_iter().map(|s| s.into_iter().map(|i| i + offset).collect()));
            out.chambers.extend(f.chambers.into_iter().map(|c| WeightedChamber {
                edges: c.edges.into_iter().map(|i| i + offset).collect(),
                ..c
            }));
        }
        out.check_structure()?;
        Ok(out)
    }

    /// `self ⋄_{L,L₂} other`: delete the cones around `l` and `l2` and glue
    /// the exposed boundaries.
    pub fn diamond(&self, other: &MultiFan, l: &str, l2: &str) -> Result<MultiFan> {
        let a = self.edge_index(l).ok_or_else(|| Error::EdgeNotPresent(l.to_string()))?;
        let b = other.edge_index(l2).ok_or_else(|| Error::EdgeNotPresent(l2.to_string()))?;
        let (union, offset) = self.disjoint_union(other)?;
        union.diamond_within(a, b + offset)
    }

    /// Diamond between two edges of the same multi-fan; this is how folds
    /// are applied one after another when building the multi-fan of a
    /// template.
    pub fn diamond_within(&self, l: usize, l2: usize) -> Result<MultiFan> {
        if l == l2 || l >= self.edges.len() || l2 >= self.edges.len() {
            return Err(Error::NeighborhoodMismatch("diamond needs two distinct edges".into()));
        }
        let key = |set: &[usize]| {
            let mut k: Vec<&LatticeVector> = set.iter().map(|&i| &self.edges[i].vector).collect();
            k.sort();
            k
        };
        let star = |e: usize| {
            let mut faces: Vec<(Vec<&LatticeVector>, &Vec<usize>)> =
                self.faces.iter().filter(|f| f.contains(&e)).map(|f| (key(f), f)).collect();
            faces.sort();
            let mut chambers: Vec<(Vec<&LatticeVector>, &WeightedChamber)> =
                self.chambers.iter().filter(|c| c.edges.contains(&e)).map(|c| (key(&c.edges), c)).collect();
            chambers.sort_by(|x, y| (&x.0, x.1.w_plus, x.1.w_minus).cmp(&(&y.0, y.1.w_plus, y.1.w_minus)));
            (faces, chambers)
        };
        let (faces1, chambers1) = star(l);
        let (faces2, chambers2) = star(l2);
        if faces1.len() != faces2.len() || faces1.iter().zip(&faces2).any(|(x, y)| x.0 != y.0) {
            return Err(Error::NeighborhoodMismatch(format!(
                "faces around {} and {} differ",
                self.edges[l].label, self.edges[l2].label
            )));
        }
        // Chambers are sorted by cone first, so equal cone lists line up.
        if chambers1.len() != chambers2.len() || chambers1.iter().zip(&chambers2).any(|(x, y)| x.0 != y.0) {
            return Err(Error::NeighborhoodMismatch(format!(
                "chambers around {} and {} differ",
                self.edges[l].label, self.edges[l2].label
            )));
        }
        let mut w1: Vec<(&Vec<&LatticeVector>, u64, u64)> = chambers1.iter().map(|(k, c)| (k, c.w_plus, c.w_minus)).collect();
        let mut w2: Vec<(&Vec<&LatticeVector>, u64, u64)> = chambers2.iter().map(|(k, c)| (k, c.w_minus, c.w_plus)).collect();
        w1.sort();
        w2.sort();
        if w1 != w2 {
            return Err(Error::WeightMismatch(format!(
                "chambers around {} and {} do not carry opposite weights",
                self.edges[l].label, self.edges[l2].label
            )));
        }

        let mut uf = UnionFind::<usize>::new(self.edges.len());
        let mut glue = |s1: &[usize], s2: &[usize]| {
            for &x in s1.iter().filter(|&&x| x != l) {
                if let Some(&y) = s2.iter().find(|&&y| y != l2 && self.edges[y].vector == self.edges[x].vector) {
                    uf.union(x, y);
                }
            }
        };
        for ((_, f1), (_, f2)) in faces1.iter().zip(&faces2) {
            glue(f1, f2);
        }
        for ((_, x), (_, y)) in chambers1.iter().zip(&chambers2) {
            glue(&x.edges, &y.edges);
        }

        let removed = |s: &[usize]| s.contains(&l) || s.contains(&l2);
        let faces: Vec<Vec<usize>> = self.faces.iter().filter(|f| !removed(f)).cloned().collect();
        let chambers: Vec<WeightedChamber> =
            self.chambers.iter().filter(|c| !removed(&c.edges)).cloned().collect();
        Ok(self.quotient_edges(&mut uf, &[l, l2], faces, chambers))
    }

    /// Collapse each union-find class of edges to its smallest member and
    /// drop the `deleted` edges.
    fn quotient_edges(
        &self,
        uf: &mut UnionFind<usize>,
        deleted: &[usize],
        faces: Vec<Vec<usize>>,
        chambers: Vec<WeightedChamber>,
    ) -> MultiFan {
        let mut rep = vec![usize::MAX; self.edges.len()];
        let mut new_index = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for i in 0..self.edges.len() {
            let root = uf.find_mut(i);
            if rep[root] == usize::MAX {
                rep[root] = i;
            }
        }
        for i in 0..self.edges.len() {
            let r = rep[uf.find_mut(i)];
            if r == i && !deleted.contains(&i) {
                new_index[i] = edges.len();
                edges.push(self.edges[i].clone());
            }
        }
        let map: Vec<usize> = (0..self.edges.len()).map(|i| new_index[rep[uf.find_mut(i)]]).collect();
        let map_set = |s: &[usize]| {
            let mut t: Vec<usize> = s.iter().map(|&i| map[i]).collect();
            t.sort_unstable();
            t.dedup();
            t
        };
        let faces: BTreeSet<Vec<usize>> = faces.iter().map(|f| map_set(f)).collect();
        let chambers = chambers
            .into_iter()
            .map(|c| WeightedChamber { edges: map_set(&c.edges), ..c })
            .collect();
        MultiFan { dim: self.dim, edges, faces, chambers }
    }

    /// Stellar subdivision of a chamber; `sign` plays the role of `ε_p`.
    pub fn blow_up(&self, chamber_id: &str, sign: i8) -> Result<MultiFan> {
        let pos = self
            .chambers
            .iter()
            .position(|c| c.id == chamber_id)
            .ok_or_else(|| Error::ChamberNotPresent(chamber_id.to_string()))?;
        let c = &self.chambers[pos];
        let positive = sign > 0;
        if (positive && c.w_plus == 0) || (!positive && c.w_minus == 0) {
            return Err(Error::InsufficientWeight {
                chamber: chamber_id.to_string(),
                sign: if positive { '+' } else { '-' },
            });
        }
        let sum = c
            .edges
            .iter()
            .fold(LatticeVector::zero(self.dim), |acc, &i| &acc + &self.edges[i].vector);
        let vector = sum.primitive()?;

        let mut out = self.clone();
        let mut label = format!("{chamber_id}*");
        while out.edge_index(&label).is_some() {
            label.push('\'');
        }
        let new = out.edges.len();
        out.edges.push(Edge { label, vector });
        out.faces.insert(vec![new]);

        let (w_plus, w_minus) = if positive { (1, 0) } else { (0, 1) };
        let original = c.clone();
        let mut fresh = Vec::new();
        for (k, &replaced) in original.edges.iter().enumerate() {
            let mut edges: Vec<usize> = original.edges.iter().copied().filter(|&e| e != replaced).collect();
            edges.push(new);
            edges.sort_unstable();
            insert_with_subsets(&mut out.faces, &edges, self.dim.saturating_sub(1));
            let mut id = format!("{}.{k}", original.id);
            while out.chamber(&id).is_some() || fresh.iter().any(|c: &WeightedChamber| c.id == id) {
                id.push('\'');
            }
            fresh.push(WeightedChamber { id, edges, w_plus, w_minus });
        }
        let remaining = original.w_plus + original.w_minus;
        if remaining > 1 {
            let kept = &mut out.chambers[pos];
            if positive {
                kept.w_plus -= 1;
            } else {
                kept.w_minus -= 1;
            }
        } else {
            out.chambers.remove(pos);
        }
        out.chambers.extend(fresh);
        Ok(out)
    }

    /// Equivariant connected sum at two chambers on the same cone.
    ///
    /// With `reduce`, the identified chamber's summed weight `(a, b)` becomes
    /// `(a − m, b − m)` with `m = min(a, b)` and vanishes at `(0, 0)`; without
    /// it the literal componentwise sum is kept.
    pub fn connected_sum(&self, other: &MultiFan, c: &str, c2: &str, reduce: bool) -> Result<MultiFan> {
        let i = self
            .chambers
            .iter()
            .position(|x| x.id == c)
            .ok_or_else(|| Error::ChamberNotPresent(c.to_string()))?;
        let j = other
            .chambers
            .iter()
            .position(|x| x.id == c2)
            .ok_or_else(|| Error::ChamberNotPresent(c2.to_string()))?;
        let (ca, cb) = (&self.chambers[i], &other.chambers[j]);
        if self.dim != other.dim || self.cone_key(&ca.edges) != other.cone_key(&cb.edges) {
            return Err(Error::ConeMismatch(format!("chambers {c} and {c2} span different cones")));
        }
        let (union, offset) = self.disjoint_union(other)?;
        let mut uf = UnionFind::<usize>::new(union.edges.len());
        for &x in &ca.edges {
            let y = cb
                .edges
                .iter()
                .map(|&y| y + offset)
                .find(|&y| union.edges[y].vector == union.edges[x].vector)
                .expect("cones were matched by vectors");
            uf.union(x, y);
        }
        let mut w = (ca.w_plus + cb.w_plus, ca.w_minus + cb.w_minus);
        if reduce {
            let m = w.0.min(w.1);
            w = (w.0 - m, w.1 - m);
        }
        let second = self.chambers.len() + j;
        let mut chambers = Vec::with_capacity(union.chambers.len());
        for (k, ch) in union.chambers.iter().enumerate() {
            if k == second {
                continue;
            }
            if k == i {
                if w != (0, 0) {
                    chambers.push(WeightedChamber { w_plus: w.0, w_minus: w.1, ..ch.clone() });
                }
                continue;
            }
            chambers.push(ch.clone());
        }
        let faces: Vec<Vec<usize>> = union.faces.iter().cloned().collect();
        Ok(union.quotient_edges(&mut uf, &[], faces, chambers))
    }

    /// Apply a linear map to every edge vector (re-primitivized). Weights are
    /// untouched.
    pub fn map_vectors(&self, f: impl Fn(&LatticeVector) -> Result<LatticeVector>) -> Result<MultiFan> {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.vector = f(&e.vector)?.primitive()?;
        }
        Ok(out)
    }

}
