//! Exact integer linear algebra on `N ≅ Zⁿ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use malachite::num::arithmetic::traits::{Gcd, Sign};
use malachite::num::basic::traits::{One, Zero};
use malachite::{Integer, Natural, Rational};
use serde::Serialize;

use crate::error::{Error, Result};

/// An element of the lattice `Zⁿ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<Integer>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Integer>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector { coords: coords.iter().map(|&c| Integer::from(c)).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector { coords: vec![Integer::ZERO; dim] }
    }

    /// The `i`-th standard basis vector of `Zⁿ`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = Integer::ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Integer] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Integer> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0)
    }

    /// gcd of the coordinates; zero for the zero vector.
    pub fn content(&self) -> Natural {
        self.coords
            .iter()
            .fold(Natural::ZERO, |g, c| (&g).gcd(c.unsigned_abs_ref()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// The vector divided by the gcd of its coordinates.
    pub fn primitive(&self) -> Result<LatticeVector> {
        let g = Integer::from(self.content());
        if g == 0 {
            return Err(Error::ZeroVector);
        }
        if g == 1 {
            return Ok(self.clone());
        }
        Ok(LatticeVector { coords: self.coords.iter().map(|c| c / &g).collect() })
    }

    pub fn dot(&self, other: &LatticeVector) -> Integer {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(self.dim(), point.len());
        self.coords
            .iter()
            .zip(point)
            .map(|(a, x)| Rational::from(a) * x)
            .sum()
    }

    pub fn scaled(&self, k: &Integer) -> LatticeVector {
        LatticeVector { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn squared_norm(&self) -> Integer {
        self.dot(self)
    }

    /// Append `other`'s coordinates (direct sum `Zᵐ ⊕ Zⁿ`).
    pub fn concat(&self, other: &LatticeVector) -> LatticeVector {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        LatticeVector { coords }
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coords.iter().map(Rational::from).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { coords: self.coords.into_iter().map(|c| -c).collect() }
    }
}

/// `det(a, b)` for two vectors of `Z²`.
pub fn det2(a: &LatticeVector, b: &LatticeVector) -> Integer {
    let (a, b) = (a.coords(), b.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Determinant of the matrix whose columns are `vs`.
pub fn det(vs: &[LatticeVector]) -> Result<Integer> {
    let n = vs.len();
    for v in vs {
        if v.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
    }
    Ok(match n {
        0 => Integer::ONE,
        1 => vs[0].coords[0].clone(),
        2 => det2(&vs[0], &vs[1]),
        // Transposing does not change the determinant, so columns may be
        // handed to Bareiss as rows.
        _ => bareiss(vs.iter().map(|v| v.coords.clone()).collect()),
    })
}

/// Fraction-free Gaussian elimination; consumes a square matrix.
fn bareiss(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    let mut sign = 1;
    let mut prev = Integer::ONE;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Integer::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Rank over `Q` of a family of vectors of common dimension.
pub fn rank(vs: &[LatticeVector]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.to_rationals()).collect();
    rational_rank(&mut rows)
}

pub(crate) fn rational_rank(rows: &mut [Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c] != 0 {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..cols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Solve the square system `a·x = b` over `Q`; `None` when singular.
pub(crate) fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| m[i][c] != 0)?;
        m.swap(c, p);
        let inv = Rational::ONE / &m[c][c];
        for j in c..=n {
            m[c][j] *= &inv;
        }
        for i in 0..n {
            if i != c && m[i][c] != 0 {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// A dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Integer>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Integer>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![Integer::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Integer::ONE;
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r.iter().map(|&x| Integer::from(x)));
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, entries })
    }

    /// The `dim × k` matrix with the given vectors as columns.
    pub fn from_columns(dim: usize, columns: &[LatticeVector]) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
            for i in 0..dim {
                m.entries[i * m.cols + j] = c.coords[i].clone();
            }
        }
        Ok(m)
    }

    pub fn from_rows(cols: usize, rows: &[LatticeVector]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.dim() });
            }
            entries.extend(r.coords.iter().cloned());
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Integer] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Integer) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<LatticeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.dim() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.dim() });
        }
        Ok(LatticeVector::new(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v.coords[j]).sum())
                .collect(),
        ))
    }

    pub fn apply_rational(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        // Entries are mostly 0 and ±1; skip the multiplications for those.
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::ZERO;
                for (j, xj) in x.iter().enumerate() {
                    let c = self.get(i, j);
                    if *c == 0 {
                        continue;
                    } else if *c == 1 {
                        acc += xj;
                    } else if *c == -1 {
                        acc -= xj;
                    } else {
                        acc += Rational::from(c) * xj;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn det(&self) -> Result<Integer> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        det(&self.columns())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d == 1 || d == -1).unwrap_or(false)
    }

    /// Integral inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<IntegerMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let n = self.rows;
        if n == 2 {
            // Adjugate divided by det = ±1.
            let d = self.det().ok()?;
            let e = &self.entries;
            let adj = [e[3].clone(), -&e[1], -&e[2], e[0].clone()];
            return Some(IntegerMatrix { rows: 2, cols: 2, entries: adj.into_iter().map(|x| x * &d).collect() });
        }
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from(self.get(i, j))).collect())
            .collect();
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            let e: Vec<Rational> =
                (0..n).map(|i| if i == j { Rational::ONE } else { Rational::ZERO }).collect();
            let col = solve_rational(&a, &e)?;
            for (i, x) in col.into_iter().enumerate() {
                inv.entries[i * n + j] = Integer::try_from(&x).ok()?;
            }
        }
        Some(inv)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || *self.get(i, j) == 0))
    }

    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn to_nested(&self) -> Vec<Vec<Integer>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    fn from_nested(rows: usize, cols: usize, m: Vec<Vec<Integer>>) -> Self {
        IntegerMatrix { rows, cols, entries: m.into_iter().flatten().collect() }
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = IntegerMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                out.entries[i * rhs.cols + j] =
                    (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum();
            }
        }
        out
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<Integer> {
        self.d.diagonal().into_iter().filter(|x| *x != 0).collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.to_nested();
    let mut u = IntegerMatrix::identity(r).to_nested();
    let mut v = IntegerMatrix::identity(c).to_nested();

    for t in 0..r.min(c) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if d[i][j] != 0
                        && pivot.map_or(true, |(pi, pj)| {
                            d[i][j].unsigned_abs_ref() < d[pi][pj].unsigned_abs_ref()
                        })
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(r, c, d, u, v);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d[i][t] != 0 {
                    let q = &d[i][t] / &d[t][t];
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= d[i][t] == 0;
                }
            }
            for j in t + 1..c {
                if d[t][j] != 0 {
                    let q = &d[t][j] / &d[t][t];
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= d[t][j] == 0;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| (&d[i][j] % &d[t][t]) != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, &Integer::from(-1));
                    row_axpy(&mut u, t, i, &Integer::from(-1));
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -&*x;
            }
        }
    }
    finish(r, c, d, u, v)
}

fn finish(
    r: usize,
    c: usize,
    d: Vec<Vec<Integer>>,
    u: Vec<Vec<Integer>>,
    v: Vec<Vec<Integer>>,
) -> SmithForm {
    SmithForm {
        u: IntegerMatrix::from_nested(r, r, u),
        d: IntegerMatrix::from_nested(r, c, d),
        v: IntegerMatrix::from_nested(c, c, v),
    }
}

/// `row[dst] -= q · row[src]`
fn row_axpy(m: &mut [Vec<Integer>], dst: usize, src: usize, q: &Integer) {
    for j in 0..m[dst].len() {
        let t = q * &m[src][j];
        m[dst][j] -= t;
    }
}

/// `col[dst] -= q · col[src]`
fn col_axpy(m: &mut [Vec<Integer>], dst: usize, src: usize, q: &Integer) {
    for row in m.iter_mut() {
        let t = q * &row[src];
        row[dst] -= t;
    }
}

fn swap_cols(m: &mut [Vec<Integer>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroupSNF {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_integers")]
    pub torsion: Vec<Integer>,
}

fn serialize_integers<S: serde::Serializer>(xs: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

impl AbelianGroupSNF {
    pub fn trivial() -> Self {
        AbelianGroupSNF { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.torsion.len() <= 1
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Integer> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(Integer::ONE, |a, t| a * t))
    }
}

impl fmt::Display for AbelianGroupSNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Structure of `Z^ambient_rank / ⟨generators⟩`.
pub fn quotient_group(generators: &[LatticeVector], ambient_rank: usize) -> Result<AbelianGroupSNF> {
    if generators.is_empty() {
        return Ok(AbelianGroupSNF { free_rank: ambient_rank, torsion: Vec::new() });
    }
    let m = IntegerMatrix::from_columns(ambient_rank, generators)?;
    let factors = smith_normal_form(&m).invariant_factors();
    Ok(AbelianGroupSNF {
        free_rank: ambient_rank - factors.len(),
        torsion: factors.into_iter().filter(|d| *d != 1).collect(),
    })
}

/// For linearly independent `generators` spanning `V`, a matrix whose rows
/// realize the projection `N → N / (V ∩ N) ≅ Z^{n-k}`.
pub fn quotient_map(generators: &[LatticeVector], ambient_rank: usize) -> Result<IntegerMatrix> {
    let k = generators.len();
    if k == 0 {
        return Ok(IntegerMatrix::identity(ambient_rank));
    }
    let m = IntegerMatrix::from_columns(ambient_rank, generators)?;
    let snf = smith_normal_form(&m);
    if snf.invariant_factors().len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: snf.invariant_factors().len() });
    }
    let rows: Vec<LatticeVector> = (k..ambient_rank).map(|i| snf.u.row(i)).collect();
    IntegerMatrix::from_rows(ambient_rank, &rows)
}

/// Row-style Hermite normal form: a canonical basis of the lattice spanned by
/// `generators`, echelon with positive pivots and reduced entries above them.
pub fn hermite_normal_form(generators: &[LatticeVector], ambient_rank: usize) -> Result<Vec<LatticeVector>> {
    for g in generators {
        if g.dim() != ambient_rank {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.dim() });
        }
    }
    let mut rows: Vec<Vec<Integer>> = generators.iter().map(|g| g.coords.clone()).collect();
    let mut basis: Vec<Vec<Integer>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..ambient_rank {
        // Euclid down the column until a single row keeps a nonzero entry.
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&a, &&b| rows[a][c].unsigned_abs_ref().cmp(rows[b][c].unsigned_abs_ref()))
                .unwrap();
            for &i in &nonzero {
                if i != p {
                    let q = &rows[i][c] / &rows[p][c];
                    row_axpy(&mut rows, i, p, &q);
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| rows[i][c] != 0) {
            let mut row = rows.swap_remove(p);
            if row[c] < 0 {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            basis.push(row);
            pivots.push(c);
        }
        rows.retain(|r| r.iter().any(|x| *x != 0));
    }
    for k in 0..basis.len() {
        let c = pivots[k];
        for i in 0..k {
            let q = floor_div(&basis[i][c], &basis[k][c]);
            if q != 0 {
                row_axpy(&mut basis, i, k, &q);
            }
        }
    }
    Ok(basis.into_iter().map(LatticeVector::new).collect())
}

pub(crate) fn floor_div(a: &Integer, b: &Integer) -> Integer {
    let q = a / b;
    if (a % b) != 0 && ((*a < 0) != (*b < 0)) {
        q - Integer::ONE
    } else {
        q
    }
}

pub(crate) fn sign(x: &Integer) -> i32 {
    match x.sign() {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn check_snf(m: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert_eq!(&w[1] % &w[0], 0);
        }
        assert!(f.iter().all(|x| *x > 0));
        s
    }

    #[test]
    fn primitive_divides_by_content() {
        assert_eq!(v(&[2, 4]).primitive().unwrap(), v(&[1, 2]));
        assert_eq!(v(&[-3, 0]).primitive().unwrap(), v(&[-1, 0]));
        assert_eq!(v(&[0, 0]).primitive(), Err(Error::ZeroVector));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&[v(&[1, 0]), v(&[0, 1])]).unwrap(), 1);
        assert_eq!(det(&[v(&[0, 1]), v(&[-1, 1])]).unwrap(), 1);
        assert_eq!(det(&[v(&[1, 0]), v(&[2, 0])]).unwrap(), 0);
        assert_eq!(det(&[v(&[2, 1, 0]), v(&[1, 1, 0]), v(&[3, 5, 1])]).unwrap(), 1);
        assert_eq!(
            det(&[v(&[0, 0, 1, 0]), v(&[1, 0, 0, 0]), v(&[0, 0, 0, 1]), v(&[0, 1, 0, 0])]).unwrap(),
            -1
        );
        assert!(matches!(det(&[v(&[1, 0]), v(&[1])]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn snf_examples() {
        let s = check_snf(&IntegerMatrix::identity(2));
        assert_eq!(s.d, IntegerMatrix::identity(2));

        let col = IntegerMatrix::from_columns(2, &[v(&[2, 0])]).unwrap();
        let s = check_snf(&col);
        assert_eq!(s.d.rows(), 2);
        assert_eq!(s.invariant_factors(), vec![Integer::from(2)]);

        let m = IntegerMatrix::from_columns(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap();
        assert_eq!(check_snf(&m).d.diagonal(), vec![Integer::from(1), Integer::from(2)]);

        let m = IntegerMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).unwrap();
        let f = check_snf(&m).invariant_factors();
        assert_eq!(f, vec![Integer::from(2), Integer::from(6), Integer::from(12)]);
    }

    #[test]
    fn quotient_groups() {
        assert!(quotient_group(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap().is_trivial());
        let g = quotient_group(&[v(&[1, 0])], 2).unwrap();
        assert_eq!((g.free_rank, g.torsion.len()), (1, 0));
        assert_eq!(g.to_string(), "Z");
        let g = quotient_group(&[v(&[1, 0]), v(&[1, 2])], 2).unwrap();
        assert_eq!(g.torsion, vec![Integer::from(2)]);
        assert_eq!(g.to_string(), "Z/2");
        assert_eq!(quotient_group(&[], 3).unwrap().to_string(), "Z^3");
    }

    // Oracle: count cosets of ⟨gens⟩ + (kZ)² inside (Z/k)² by brute force.
    fn coset_count(gens: &[(i64, i64)], k: i64) -> usize {
        let mut reached = std::collections::BTreeSet::new();
        let mut frontier = vec![(0i64, 0i64)];
        reached.insert((0, 0));
        while let Some((x, y)) = frontier.pop() {
            for &(a, b) in gens {
                for s in [1, -1] {
                    let p = ((x + s * a).rem_euclid(k), (y + s * b).rem_euclid(k));
                    if reached.insert(p) {
                        frontier.push(p);
                    }
                }
            }
        }
        (k * k) as usize / reached.len()
    }

    #[test]
    fn quotient_matches_coset_enumeration() {
        let cases: &[&[(i64, i64)]] =
            &[&[(1, 0), (1, 2)], &[(2, 0), (0, 2)], &[(3, 1), (1, 3)], &[(1, 1), (1, -1)]];
        for gens in cases {
            let vs: Vec<_> = gens.iter().map(|&(a, b)| v(&[a, b])).collect();
            let g = quotient_group(&vs, 2).unwrap();
            let order = i64::try_from(&g.order().unwrap()).unwrap();
            assert_eq!(coset_count(gens, 4 * order) as i64, order, "{gens:?}");
        }
    }

    #[test]
    fn quotient_map_kills_span() {
        let q = quotient_map(&[v(&[0, 1])], 2).unwrap();
        assert_eq!((q.rows(), q.cols()), (1, 2));
        assert_eq!(q.apply(&v(&[0, 1])).unwrap(), v(&[0]));
        assert_eq!(q.apply(&v(&[1, 0])).unwrap().coords()[0].unsigned_abs_ref(), &Natural::ONE);

        let q = quotient_map(&[v(&[1, 1, 0])], 3).unwrap();
        assert_eq!(q.apply(&v(&[1, 1, 0])).unwrap(), v(&[0, 0]));
        assert!(q.apply(&v(&[1, 0, 0])).unwrap().is_primitive());
    }

    #[test]
    fn hermite_basis() {
        let b = hermite_normal_form(&[v(&[2, 0]), v(&[0, 2]), v(&[1, 1])], 2).unwrap();
        assert_eq!(b, vec![v(&[1, 1]), v(&[0, 2])]);
        let b = hermite_normal_form(&[v(&[1, 0]), v(&[-1, 0])], 2).unwrap();
        assert_eq!(b, vec![v(&[1, 0])]);
        assert!(hermite_normal_form(&[], 2).unwrap().is_empty());
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IntegerMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, IntegerMatrix::identity(2));
        assert!(IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]).unwrap().inverse().is_none());
    }

    #[test]
    fn floor_division() {
        assert_eq!(floor_div(&Integer::from(-3), &Integer::from(2)), -2);
        assert_eq!(floor_div(&Integer::from(3), &Integer::from(2)), 1);
        assert_eq!(floor_div(&Integer::from(-4), &Integer::from(2)), -2);
    }
}
