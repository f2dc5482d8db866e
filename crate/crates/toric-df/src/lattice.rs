//! Exact integer linear algebra over the ambient lattice: normal forms,
//! determinants, cones and unimodular classification of vertex sets.
//!
//! Everything here is total over big integers; no machine-word overflow is
//! possible. Conventions are fixed once so golden tests stay stable:
//! Hermite normal form is row-style with positive pivots and entries above
//! each pivot reduced into `[0, pivot)`.

use crate::error::{Error, Result};
use crate::num::{int, Int};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A point of the ambient lattice `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector(pub Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![Int::zero(); dim])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &LatticeVector) -> Int {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Int::zero(), |acc, t| acc + t)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * s).collect())
    }

    /// Content of the vector: the gcd of its coordinates (0 for the zero vector).
    pub fn content(&self) -> Int {
        self.0
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(&c.abs()))
    }

    /// Divide out the gcd of the coordinates. The zero vector stays zero;
    /// a nonzero primitive vector has coordinate gcd 1.
    pub fn primitive(&self) -> LatticeVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|c| c / &g).collect())
    }
}

impl std::fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Int>,
}

impl LatticeMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        LatticeMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LatticeMatrix::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LatticeMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[LatticeVector]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].dim() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.dim(), c, "ragged rows");
            entries.extend(row.0.iter().cloned());
        }
        LatticeMatrix::new(r, c, entries)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&v| int(v)));
        }
        LatticeMatrix::new(r, c, entries)
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn mul(&self, other: &LatticeMatrix) -> LatticeMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = LatticeMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim());
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Int::zero();
            for j in 0..self.cols {
                acc += &self[(i, j)] * &v.0[j];
            }
            out.push(acc);
        }
        LatticeVector(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Int::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
            }
            for row in m.iter_mut().take(n).skip(k + 1) {
                row[k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row(a) += q * row(b)
    fn add_multiple_of_row(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn add_multiple_of_col(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

}

impl std::ops::Index<(usize, usize)> for LatticeMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LatticeMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.entries[i * self.cols + j]
    }
}

/// Row-style Hermite normal form. Returns `(H, U)` with `U` unimodular,
/// `U * M = H`, pivots positive and entries above each pivot reduced into
/// `[0, pivot)`. Total on every integer matrix (zero matrix included).
pub fn hermite_normal_form(m: &LatticeMatrix) -> (LatticeMatrix, LatticeMatrix) {
    let mut h = m.clone();
    let mut u = LatticeMatrix::identity(m.rows);
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        // Euclidean reduction of the column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h[(i, col)].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h[(i, col)].abs() < h[(b, col)].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else {
                break;
            };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, col)] / &h[(pivot_row, col)]);
                h.add_multiple_of_row(i, pivot_row, &q);
                u.add_multiple_of_row(i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..pivot_row {
            let q = -h[(i, col)].div_floor(&h[(pivot_row, col)]);
            h.add_multiple_of_row(i, pivot_row, &q);
            u.add_multiple_of_row(i, pivot_row, &q);
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form. Returns `(S, U, V)` with `U * M * V = S`, `S` diagonal
/// with each diagonal entry dividing the next, `U` and `V` unimodular.
pub fn smith_normal_form(m: &LatticeMatrix) -> (LatticeMatrix, LatticeMatrix, LatticeMatrix) {
    let mut s = m.clone();
    let mut u = LatticeMatrix::identity(m.rows);
    let mut v = LatticeMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut t = 0usize;
    while t < n {
        // Find a nonzero entry in the remaining block, smallest in magnitude.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if !s[(i, j)].is_zero() {
                    pivot = match pivot {
                        None => Some((i, j)),
                        Some((pi, pj)) => {
                            if s[(i, j)].abs() < s[(pi, pj)].abs() {
                                Some((i, j))
                            } else {
                                Some((pi, pj))
                            }
                        }
                    };
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        // Clear row and column t.
        let mut clean = true;
        for i in t + 1..m.rows {
            if s[(i, t)].is_zero() {
                continue;
            }
            let q = -(&s[(i, t)] / &s[(t, t)]);
            s.add_multiple_of_row(i, t, &q);
            u.add_multiple_of_row(i, t, &q);
            if !s[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..m.cols {
            if s[(t, j)].is_zero() {
                continue;
            }
            let q = -(&s[(t, j)] / &s[(t, t)]);
            s.add_multiple_of_col(j, t, &q);
            v.add_multiple_of_col(j, t, &q);
            if !s[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility d_t | entries of the remaining block.
        let mut fixed = true;
        'outer: for i in t + 1..m.rows {
            for j in t + 1..m.cols {
                if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                    // Add row i to row t and restart this step.
                    s.add_multiple_of_row(t, i, &Int::one());
                    u.add_multiple_of_row(t, i, &Int::one());
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

/// A rational polyhedral cone given by primitive generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub generators: Vec<LatticeVector>,
    pub ambient_dim: usize,
}

impl Cone {
    pub fn new(generators: Vec<LatticeVector>, ambient_dim: usize) -> Self {
        let generators = generators.iter().map(|g| g.primitive()).collect();
        Cone {
            generators,
            ambient_dim,
        }
    }

    pub fn from_i64(gens: &[&[i64]]) -> Self {
        let dim = gens.first().map(|g| g.len()).unwrap_or(0);
        Cone::new(gens.iter().map(|g| LatticeVector::from_i64(g)).collect(), dim)
    }

    /// Dimension of the linear span of the generators.
    pub fn dim(&self) -> usize {
        rank(&LatticeMatrix::from_rows(&self.generators))
    }
}

/// Rank of an integer matrix (over the rationals).
pub fn rank(m: &LatticeMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    let mut r = 0;
    for i in 0..h.rows {
        if (0..h.cols).any(|j| !h[(i, j)].is_zero()) {
            r += 1;
        }
    }
    r
}

/// A simplicial cone is smooth when its generators extend to a basis of the
/// ambient lattice; for a full-dimensional cone this is `|det| = 1`, in
/// general all elementary divisors of the generator matrix must be 1.
///
/// Errors with [`Error::NonSimplicial`] when the generator count differs
/// from the dimension of the cone.
pub fn is_smooth_cone(cone: &Cone) -> Result<bool> {
    let d = cone.dim();
    if cone.generators.len() != d {
        return Err(Error::NonSimplicial(cone.generators.len(), d));
    }
    let m = LatticeMatrix::from_rows(&cone.generators);
    if d == cone.ambient_dim {
        return Ok(m.det().abs().is_one());
    }
    let (s, _, _) = smith_normal_form(&m);
    Ok((0..d).all(|i| s[(i, i)].abs().is_one()))
}

/// Canonical form of a finite vertex set under `GL(n, Z)` and lattice
/// translations: the lexicographically smallest sorted image over all
/// unimodular frames adapted to ordered affine bases of vertices. Two sets
/// are equivalent iff their canonical forms coincide.
///
/// The frame for a tuple `(v_0, ..., v_n)` with difference matrix `M`
/// (rows `v_k - v_0`) is the unimodular `U` with `U * M^T` in Hermite
/// normal form. Row HNF is canonical under left multiplication, so the
/// image `U * (q - v_0)` of the translated set depends only on the
/// `GL(n, Z)`-orbit of the tuple; minimising over tuples kills the
/// remaining choice.
fn canonical_vertex_form(points: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let n = points
        .first()
        .map(|p| p.dim())
        .ok_or_else(|| Error::InvalidInput("empty vertex set".into()))?;
    let mut best: Option<Vec<LatticeVector>> = None;
    let k = points.len();
    let mut tuple: Vec<usize> = Vec::with_capacity(n + 1);
    fn rec(
        tuple: &mut Vec<usize>,
        k: usize,
        n: usize,
        points: &[LatticeVector],
        best: &mut Option<Vec<LatticeVector>>,
    ) {
        if tuple.len() == n + 1 {
            let origin = &points[tuple[0]];
            let diff = |q: &LatticeVector| {
                LatticeVector(q.0.iter().zip(&origin.0).map(|(a, b)| a - b).collect())
            };
            let rows: Vec<LatticeVector> = (1..=n).map(|j| diff(&points[tuple[j]])).collect();
            let m = LatticeMatrix::from_rows(&rows);
            if m.det().is_zero() {
                return;
            }
            // Column vectors: transpose so the basis vectors are columns.
            let mut mt = LatticeMatrix::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    mt[(i, j)] = m[(j, i)].clone();
                }
            }
            let (_, u) = hermite_normal_form(&mt);
            let mut imgs: Vec<LatticeVector> =
                points.iter().map(|q| u.apply(&diff(q))).collect();
            imgs.sort();
            match best {
                None => *best = Some(imgs),
                Some(b) => {
                    if &imgs < b {
                        *best = Some(imgs);
                    }
                }
            }
            return;
        }
        for i in 0..k {
            if tuple.contains(&i) {
                continue;
            }
            tuple.push(i);
            rec(tuple, k, n, points, best);
            tuple.pop();
        }
    }
    rec(&mut tuple, k, n, points, &mut best);
    best.ok_or_else(|| Error::InvalidInput("vertex set is not full-dimensional".into()))
}

/// Decide whether two full-dimensional vertex sets are equivalent under a
/// unimodular transformation plus lattice translation.
pub fn unimodular_equivalent(p: &[LatticeVector], q: &[LatticeVector]) -> Result<bool> {
    let np = p.first().map(|v| v.dim()).unwrap_or(0);
    let nq = q.first().map(|v| v.dim()).unwrap_or(0);
    if np != nq {
        return Err(Error::DimensionMismatch { expected: np, got: nq });
    }
    if p.len() != q.len() {
        return Ok(false);
    }
    Ok(canonical_vertex_form(p)? == canonical_vertex_form(q)?)
}
