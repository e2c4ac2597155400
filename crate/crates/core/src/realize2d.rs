//! Unimodular sequences in `Z²` and their realization by origami templates.
//!
//! A unimodular sequence `v₁, …, v_d` has `det(vᵢ, vᵢ₊₁) = ±1` cyclically. Its
//! multi-fan has the cones `∠vᵢvᵢ₊₁` weighted by the sign of the
//! determinant. [`realize`] builds, after flipping some signs, an oriented
//! acyclic template with the same merged multi-fan by induction on `d`:
//! drop a vector of maximal norm, realize the shorter sequence, cut the
//! corner where it was removed, and glue a small piece into the cut.

use std::cell::RefCell;
use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IntegerMatrix, LatticeVector};
use crate::multifan::{Edge, MultiFan, WeightedChamber};
use crate::polytope::{DelzantPolytope, Orientation};
use crate::template::{FacetRef, FoldEntry, OrigamiTemplate, TemplatePiece};
use crate::Rational;

pub type V = [i64; 2];

fn det(a: V, b: V) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

fn add(a: V, b: V) -> V {
    [a[0] + b[0], a[1] + b[1]]
}

fn neg(a: V) -> V {
    [-a[0], -a[1]]
}

fn norm2(a: V) -> i128 {
    a[0] as i128 * a[0] as i128 + a[1] as i128 * a[1] as i128
}

fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `m·v` for a 2×2 matrix given by rows.
fn apply(m: [[i64; 2]; 2], v: V) -> V {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// The matrix with columns `a`, `b` and its inverse (which exists over `Z`
/// when `det(a, b) = ±1`).
fn frame(a: V, b: V) -> ([[i64; 2]; 2], [[i64; 2]; 2]) {
    let m = [[a[0], b[0]], [a[1], b[1]]];
    let d = det(a, b) as i64;
    let inv = [[d * b[1], -d * b[0]], [-d * a[1], d * a[0]]];
    (m, inv)
}

/// Whether every cyclically consecutive pair is a basis of `Z²`.
pub fn is_unimodular(vectors: &[V]) -> Result<bool> {
    for v in vectors {
        if gcd(v[0], v[1]) != 1 {
            return Err(Error::NonPrimitiveVector(format!("({},{})", v[0], v[1])));
        }
    }
    let d = vectors.len();
    Ok(d >= 2 && (0..d).all(|i| det(vectors[i], vectors[(i + 1) % d]).abs() == 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularSequence {
    vectors: Vec<V>,
}

/// A relation `ε₁v_{j−1} + ε₂v_{j+1} + a·v_j = 0` at a vector of maximal norm.
/// `j` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReduceStep {
    pub j: usize,
    pub a: i64,
    pub eps: (i8, i8),
}

impl UnimodularSequence {
    /// A non-primitive entry is reported as [`Error::NotUnimodular`] too: it
    /// cannot be part of a basis.
    pub fn new(vectors: Vec<V>) -> Result<UnimodularSequence> {
        if !is_unimodular(&vectors).map_err(|e| Error::NotUnimodular(e.to_string()))? {
            return Err(Error::NotUnimodular(
                vectors.iter().map(|v| format!("({},{})", v[0], v[1])).collect::<Vec<_>>().join(","),
            ));
        }
        Ok(UnimodularSequence { vectors })
    }

    pub fn vectors(&self) -> &[V] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn with_signs(&self, signs: &[i8]) -> UnimodularSequence {
        let vectors =
            self.vectors.iter().zip(signs).map(|(&v, &s)| if s < 0 { neg(v) } else { v }).collect();
        UnimodularSequence { vectors }
    }

    /// Edges `v1…vd`, chambers `c1…cd` on `∠vᵢvᵢ₊₁` with weight `(1,0)` when
    /// the determinant is `+1` and `(0,1)` otherwise.
    pub fn multifan(&self) -> MultiFan {
        let d = self.vectors.len();
        let edges = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| Edge { label: format!("v{}", i + 1), vector: LatticeVector::from_i64s(v) })
            .collect();
        let chambers = (0..d)
            .map(|i| {
                let k = (i + 1) % d;
                let plus = det(self.vectors[i], self.vectors[k]) > 0;
                WeightedChamber {
                    id: format!("c{}", i + 1),
                    edges: if i < k { vec![i, k] } else { vec![k, i] },
                    w_plus: plus as u64,
                    w_minus: !plus as u64,
                }
            })
            .collect();
        MultiFan::from_indices(2, edges, [], chambers).expect("sequence fans are well formed")
    }

    /// Signed number of turns of the closed ray path `v₁ → … → v_d → v₁`,
    /// by counting crossings of the half-open quadrants.
    pub fn winding_number(&self) -> i64 {
        fn quadrant(v: V) -> i64 {
            match (v[0], v[1]) {
                (x, y) if x > 0 && y >= 0 => 0,
                (x, y) if x <= 0 && y > 0 => 1,
                (x, y) if x < 0 && y <= 0 => 2,
                _ => 3,
            }
        }
        let d = self.vectors.len();
        let quarters: i64 = (0..d)
            .map(|i| {
                let (a, b) = (self.vectors[i], self.vectors[(i + 1) % d]);
                match (quadrant(b) - quadrant(a)).rem_euclid(4) {
                    0 => 0,
                    1 => 1,
                    3 => -1,
                    _ if det(a, b) > 0 => 2,
                    _ => -2,
                }
            })
            .sum();
        quarters / 4
    }

    /// Lexicographically least representative over rotations, reversal,
    /// sign flips and `GL(2, Z)`; it always starts `(1,0), (0,1)`.
    pub fn canonical_form(&self) -> UnimodularSequence {
        let d = self.vectors.len();
        let mut best: Option<Vec<V>> = None;
        for reversed in [false, true] {
            let mut base = self.vectors.clone();
            if reversed {
                base.reverse();
            }
            for r in 0..d {
                let mut u = base.clone();
                u.rotate_left(r);
                for (s0, s1) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let a = if s0 > 0 { u[0] } else { neg(u[0]) };
                    let b = if s1 > 0 { u[1] } else { neg(u[1]) };
                    let (_, inv) = frame(a, b);
                    // Later signs are free; each position independently
                    // takes the smaller of ±w.
                    let cand: Vec<V> = u
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| match i {
                            0 => [1, 0],
                            1 => [0, 1],
                            _ => {
                                let w = apply(inv, v);
                                w.min(neg(w))
                            }
                        })
                        .collect();
                    if best.as_ref().map_or(true, |b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        UnimodularSequence { vectors: best.expect("d ≥ 2") }
    }

    pub fn reduce_step(&self) -> Result<ReduceStep> {
        find_relation(&self.vectors)
            .map(|(j, a, e1, e2)| ReduceStep { j: j + 1, a, eps: (e1, e2) })
            .ok_or(Error::NoRelation)
    }
}

impl fmt::Display for UnimodularSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vectors.iter().map(|v| format!("({},{})", v[0], v[1])).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// 0-based index of a vector admitting a relation with its neighbours,
/// trying larger norms first and smaller indices among equal norms.
fn find_relation(vs: &[V]) -> Option<(usize, i64, i8, i8)> {
    let d = vs.len();
    if d < 3 {
        return None;
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| (Reverse(norm2(vs[i])), i));
    for j in order {
        let (prev, v, next) = (vs[(j + d - 1) % d], vs[j], vs[(j + 1) % d]);
        for e2 in [1i8, -1] {
            let s = [prev[0] + e2 as i64 * next[0], prev[1] + e2 as i64 * next[1]];
            for a in [0i64, 1, -1] {
                if s[0] + a * v[0] == 0 && s[1] + a * v[1] == 0 {
                    return Some((j, a, 1, e2));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TraceStep {
    /// A fixed small template; `case` names it.
    Base { case: String, vectors: Vec<V> },
    /// Removal of `v_j` (1-based, in the sequence being realized).
    Reduce { d: usize, j: usize, a: i64, eps: (i8, i8) },
    /// The auxiliary piece for an `a = 0` reduction.
    Claim { vectors: Vec<V> },
    BlowUp { vector: V },
    Diamond { vector: V },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationCertificate {
    pub sequence: UnimodularSequence,
    pub template: OrigamiTemplate,
    pub signs: Vec<i8>,
    pub trace: Vec<TraceStep>,
}

impl RealizationCertificate {
    /// The template is valid, oriented and acyclic, and its merged multi-fan
    /// equals the merged multi-fan of the sign-adjusted sequence.
    pub fn verify(&self) -> Result<()> {
        if self.signs.len() != self.sequence.len() {
            return Err(Error::VerificationFailed("one sign per vector expected".into()));
        }
        let report = self.template.validate();
        if !report.is_valid() {
            return Err(Error::VerificationFailed(format!("template invalid: {report}")));
        }
        let class = self.template.classify();
        if !class.oriented || !class.acyclic {
            return Err(Error::VerificationFailed(format!("template classification {class:?}")));
        }
        let lhs = self.template.multifan()?.merge();
        let rhs = self.sequence.with_signs(&self.signs).multifan().merge();
        if lhs != rhs && !lhs.is_isomorphic(&rhs) {
            return Err(Error::VerificationFailed(format!("multi-fans differ:\n{lhs}\nvs\n{rhs}")));
        }
        Ok(())
    }
}

pub fn realize(seq: &UnimodularSequence) -> Result<RealizationCertificate> {
    let piece = realize_piece(&seq.vectors)?;
    let signs = piece
        .seq
        .iter()
        .zip(&seq.vectors)
        .map(|(&s, &v)| {
            if s == v {
                Ok(1)
            } else if s == neg(v) {
                Ok(-1)
            } else {
                Err(Error::VerificationFailed(format!("position drifted: {s:?} for {v:?}")))
            }
        })
        .collect::<Result<Vec<i8>>>()?;
    let cert = RealizationCertificate { sequence: seq.clone(), template: piece.template, signs, trace: piece.trace };
    cert.verify()?;
    Ok(cert)
}

/// The polygon vertex realizing the chamber between positions `i` and
/// `i + 1`: facet `fa` has normal `seq[i]`, facet `fb` normal `seq[i + 1]`.
#[derive(Clone, Copy, Debug)]
struct Corner {
    poly: usize,
    fa: usize,
    fb: usize,
}

/// A template realizing a signed sequence, with the corner of every chamber.
#[derive(Clone, Debug)]
struct Piece {
    template: OrigamiTemplate,
    seq: Vec<V>,
    corners: Vec<Corner>,
    trace: Vec<TraceStep>,
}

impl Piece {
    fn rotate_left(&mut self, k: usize) {
        self.seq.rotate_left(k);
        self.corners.rotate_left(k);
    }

    fn rotate_right(&mut self, k: usize) {
        self.seq.rotate_right(k);
        self.corners.rotate_right(k);
    }

    fn transform(&mut self, m: [[i64; 2]; 2]) -> Result<()> {
        let b = IntegerMatrix::from_i64_rows(&[&m[0], &m[1]])?;
        self.template = self.template.transformed(&b)?;
        for v in &mut self.seq {
            *v = apply(m, *v);
        }
        for step in &mut self.trace {
            match step {
                TraceStep::Base { vectors, .. } | TraceStep::Claim { vectors } => {
                    vectors.iter_mut().for_each(|v| *v = apply(m, *v))
                }
                TraceStep::BlowUp { vector } | TraceStep::Diamond { vector } => *vector = apply(m, *vector),
                TraceStep::Reduce { .. } => {}
            }
        }
        Ok(())
    }

    fn corner_point(&self, c: Corner) -> Result<Vec<Rational>> {
        let p = self.template.polytope(c.poly);
        p.vertices()
            .iter()
            .find(|v| v.facets.contains(&c.fa) && v.facets.contains(&c.fb))
            .map(|v| v.point.clone())
            .ok_or_else(|| Error::VerificationFailed(format!("lost corner {c:?}")))
    }

    /// Blow up the chamber after position `i`: chop its corner and insert
    /// the sum of the two vectors after position `i`.
    fn chop(&mut self, i: usize) -> Result<()> {
        let n = self.seq.len();
        let c = self.corners[i];
        let p = self.template.polytope(c.poly);
        let vertex = p
            .vertices()
            .iter()
            .position(|v| v.facets.contains(&c.fa) && v.facets.contains(&c.fb))
            .ok_or_else(|| Error::VerificationFailed(format!("lost corner {c:?}")))?;
        let chopped = p.corner_chop(vertex, None)?;
        let nf = chopped.facets().len() - 1;
        self.template.set_polytope(c.poly, chopped);
        let w = add(self.seq[i], self.seq[(i + 1) % n]);
        self.seq.insert(i + 1, w);
        self.corners[i] = Corner { poly: c.poly, fa: c.fa, fb: nf };
        self.corners.insert(i + 1, Corner { poly: c.poly, fa: nf, fb: c.fb });
        self.trace.push(TraceStep::BlowUp { vector: w });
        Ok(())
    }

    /// Glue `other` into the cut at the last position. `self` ends with the
    /// cut vector `w` (between `a` and `b = seq[0]`); `other` reads
    /// `w, a, X…, b`. The result reads `seq[..last], X…`.
    fn glue_end(self, mut other: Piece) -> Result<Piece> {
        let (n, m) = (self.seq.len(), other.seq.len());
        if other.seq[0] != self.seq[n - 1] || other.seq[1] != self.seq[n - 2] || other.seq[m - 1] != self.seq[0] {
            return Err(Error::VerificationFailed("glued pieces do not line up".into()));
        }
        let (prev, last) = (self.corners[n - 2], self.corners[n - 1]);
        let (first2, last2) = (other.corners[0], other.corners[m - 1]);
        let x1 = self.corner_point(prev)?;
        let y1 = self.corner_point(last)?;
        let x2 = other.corner_point(first2)?;
        let y2 = other.corner_point(last2)?;
        // Scale and translate `other` so that its cut facet lands on ours.
        let k = if y2[0] != x2[0] { 0 } else { 1 };
        let lambda = (&y1[k] - &x1[k]) / (&y2[k] - &x2[k]);
        let t: Vec<Rational> = x1.iter().zip(&x2).map(|(a, b)| a - &lambda * b).collect();
        other.template = other.template.scaled(&lambda)?.translated(&t);

        let shift = self.template.pieces().len();
        let template =
            self.template.into_glued(other.template, FacetRef::new(last.poly, last.fa), FacetRef::new(first2.poly, first2.fa))?;
        let mut seq = self.seq[..n - 1].to_vec();
        seq.extend_from_slice(&other.seq[2..m - 1]);
        let mut corners = self.corners[..n - 2].to_vec();
        corners.extend(other.corners[1..m - 1].iter().map(|c| Corner { poly: c.poly + shift, ..*c }));
        let mut trace = self.trace;
        trace.extend(other.trace);
        trace.push(TraceStep::Diamond { vector: self.seq[n - 1] });
        Ok(Piece { template, seq, corners, trace })
    }
}

fn polygon(halfspaces: &[(V, i64)]) -> DelzantPolytope {
    let hs: Vec<(&[i64], i64)> = halfspaces.iter().map(|(n, h)| (&n[..], *h)).collect();
    DelzantPolytope::from_i64s(2, &hs).expect("fixed polygons are valid")
}

fn piece(
    polys: Vec<(DelzantPolytope, Orientation)>,
    folds: &[((usize, usize), (usize, usize))],
    seq: &[V],
    corners: &[(usize, usize, usize)],
    case: &str,
) -> Piece {
    let pieces = polys.into_iter().map(|(polytope, o)| TemplatePiece { polytope, orientation: Some(o) }).collect();
    let folds = folds.iter().map(|&((a, f), (b, g))| FoldEntry::Pair(FacetRef::new(a, f), FacetRef::new(b, g))).collect();
    Piece {
        template: OrigamiTemplate::new(pieces, folds).expect("fixed templates are well formed"),
        seq: seq.to_vec(),
        corners: corners.iter().map(|&(poly, fa, fb)| Corner { poly, fa, fb }).collect(),
        trace: vec![TraceStep::Base { case: case.to_string(), vectors: seq.to_vec() }],
    }
}

use Orientation::{Negative as Minus, Positive as Plus};

const E1: V = [1, 0];
const E2: V = [0, 1];

/// The realizations for `d ≤ 3` after normalizing to `v₁ = e₁, v₂ = e₂`.
fn base_pieces() -> &'static [Piece; 5] {
    static BASE: OnceLock<[Piece; 5]> = OnceLock::new();
    BASE.get_or_init(|| {
        let tri = |s: i64| polygon(&[(E1, 0), (E2, 0), ([-1, -1], s)]);
        [
            // Two copies of the unit triangle folded along the hypotenuse.
            piece(vec![(tri(1), Plus), (tri(1), Minus)], &[((0, 2), (1, 2))], &[E1, E2], &[(0, 0, 1), (1, 1, 0)], "sphere"),
            piece(vec![(tri(1), Plus)], &[], &[E1, E2, [-1, -1]], &[(0, 0, 1), (0, 1, 2), (0, 2, 0)], "triangle"),
            // Trapezoid and triangle folded along x = 2.
            piece(
                vec![
                    (polygon(&[(E1, -1), (E2, 0), ([-1, 0], 2), ([1, -1], 0)]), Plus),
                    (polygon(&[(E2, 0), ([-1, 0], 2), ([1, -1], 0)]), Minus),
                ],
                &[((0, 2), (1, 1))],
                &[E1, E2, [1, -1]],
                &[(0, 0, 1), (1, 0, 2), (0, 3, 0)],
                "trapezoid-triangle",
            ),
            // Triangle and its truncation folded along x + y = 2.
            piece(
                vec![(tri(2), Plus), (polygon(&[(E1, 0), (E2, 0), ([-1, -1], 2), ([1, 1], -1)]), Minus)],
                &[((0, 2), (1, 2))],
                &[E1, E2, [1, 1]],
                &[(0, 0, 1), (1, 1, 3), (1, 3, 0)],
                "triangle-strip",
            ),
            // Trapezoid and triangle folded along y = 1.
            piece(
                vec![
                    (polygon(&[(E1, 0), (E2, 0), ([-1, 1], 1), ([0, -1], 1)]), Plus),
                    (polygon(&[(E1, 0), ([-1, 1], 1), ([0, -1], 1)]), Minus),
                ],
                &[((0, 3), (1, 2))],
                &[E1, E2, [-1, 1]],
                &[(0, 0, 1), (0, 1, 2), (1, 1, 0)],
                "trapezoid-triangle",
            ),
        ]
    })
}

fn base_piece(nv: &[V]) -> Result<Piece> {
    let base = base_pieces();
    let p = match nv {
        [E1, E2] => &base[0],
        [E1, E2, [-1, -1]] => &base[1],
        [E1, E2, [1, -1]] => &base[2],
        [E1, E2, [1, 1]] => &base[3],
        [E1, E2, [-1, 1]] => &base[4],
        _ => return Err(Error::NotUnimodular(format!("{nv:?}"))),
    };
    Ok(p.clone())
}

/// The piece for `e₁, e₂, v, (0,−1)` with `v = (±1, b)`. Only `b` varies,
/// so the pieces are built once per thread.
fn claim_piece(v: V) -> Result<Piece> {
    thread_local! {
        static CLAIMS: RefCell<HashMap<V, Piece>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = CLAIMS.with(|c| c.borrow().get(&v).cloned()) {
        return Ok(p);
    }
    let p = build_claim_piece(v)?;
    CLAIMS.with(|c| c.borrow_mut().insert(v, p.clone()));
    Ok(p)
}

fn build_claim_piece(v: V) -> Result<Piece> {
    let seq = [E1, E2, v, [0, -1]];
    let b = v[1];
    match v[0] {
        -1 => {
            let h = 1.max(1 - b);
            let z = polygon(&[(E1, 0), (E2, 0), ([-1, b], h), ([0, -1], 1)]);
            Ok(piece(vec![(z, Plus)], &[], &seq, &[(0, 0, 1), (0, 1, 2), (0, 2, 3), (0, 3, 0)], "claim-trapezoid"))
        }
        1 => {
            let k = 0.max(-b);
            let square = polygon(&[(E1, 0), (E2, 0), ([-1, 0], 1), ([0, -1], 1)]);
            let w = polygon(&[(E2, 0), ([0, -1], 1), ([-1, 0], 1), ([1, b], k)]);
            Ok(piece(
                vec![(square, Plus), (w, Minus)],
                &[((0, 2), (1, 2))],
                &seq,
                &[(0, 0, 1), (1, 0, 3), (1, 3, 1), (0, 3, 0)],
                "claim-square",
            ))
        }
        _ => Err(Error::NotUnimodular(format!("{seq:?}"))),
    }
}

/// Normalized pieces of length up to this are kept per thread; the
/// acceptance corpus revisits the same shapes through its recursion.
const MEMO_MAX_LEN: usize = 5;

/// A piece whose signed sequence is `±vs[i]` position by position. Every
/// level first moves `v₁, v₂` to `e₁, e₂` and maps the result back.
fn realize_piece(vs: &[V]) -> Result<Piece> {
    thread_local! {
        static MEMO: RefCell<HashMap<Vec<V>, Piece>> = RefCell::new(HashMap::new());
    }
    let (m, inv) = frame(vs[0], vs[1]);
    let nv: Vec<V> = vs.iter().map(|&v| apply(inv, v)).collect();
    let memo = nv.len() <= MEMO_MAX_LEN;
    let mut p = match memo.then(|| MEMO.with(|c| c.borrow().get(&nv).cloned())).flatten() {
        Some(p) => p,
        None => {
            let p = realize_normalized(&nv)?;
            if memo {
                MEMO.with(|c| c.borrow_mut().insert(nv, p.clone()));
            }
            p
        }
    };
    if m != [[1, 0], [0, 1]] {
        p.transform(m)?;
    }
    Ok(p)
}

/// `realize_piece` for a sequence starting `e₁, e₂`.
fn realize_normalized(vs: &[V]) -> Result<Piece> {
    let d = vs.len();
    if d <= 3 {
        return base_piece(vs);
    }
    let (j, a, e1, e2) = find_relation(vs).ok_or(Error::NoRelation)?;
    // Rotate so that v_{j+1} comes first and v_j last.
    let t = (j + 1) % d;
    let mut u = vs.to_vec();
    u.rotate_left(t);
    let reduce = TraceStep::Reduce { d, j: j + 1, a, eps: (e1, e2) };
    let mut out = if a != 0 {
        let mut p = realize_piece(&u[..d - 1])?;
        p.trace.insert(0, reduce);
        p.chop(d - 2)?;
        let (w, vj) = (p.seq[d - 1], u[d - 1]);
        if w == vj || w == neg(vj) {
            p
        } else {
            let (prev, next) = (p.seq[d - 2], p.seq[0]);
            let mut small = realize_piece(&[prev, vj, next])?;
            if small.seq != [prev, vj, next] {
                return Err(Error::VerificationFailed("three-term piece changed signs".into()));
            }
            small.chop(2)?;
            small.rotate_left(3);
            p.glue_end(small)?
        }
    } else {
        let mut p = realize_piece(&u[..d - 2])?;
        p.trace.insert(0, reduce);
        p.chop(d - 3)?;
        let (prev, next) = (p.seq[d - 3], p.seq[0]);
        // v_{j−1} = ±v_{j+1}: take it as −next so the cut reads prev, −next.
        let q = neg(next);
        let (m, inv) = frame(prev, q);
        let mut claim = claim_piece(apply(inv, u[d - 1]))?;
        claim.trace.push(TraceStep::Claim { vectors: claim.seq.clone() });
        claim.chop(3)?;
        claim.transform(m)?;
        claim.rotate_left(4);
        p.glue_end(claim)?
    };
    out.rotate_right(t);
    Ok(out)
}

#[cfg(test)]
mod tests;
