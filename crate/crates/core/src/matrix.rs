//! Dense exact matrices, row reduction and subspaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    kind: FieldKind,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn new(kind: FieldKind, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|s| s.kind() != kind) {
            return Err(Error::ShapeMismatch(format!("entries outside {kind}")));
        }
        Ok(Matrix { kind, rows, cols, data })
    }

    pub fn zeros(kind: FieldKind, rows: usize, cols: usize) -> Self {
        Matrix {
            kind,
            rows,
            cols,
            data: vec![kind.zero(); rows * cols],
        }
    }

    pub fn identity(kind: FieldKind, n: usize) -> Self {
        let mut m = Matrix::zeros(kind, n, n);
        for i in 0..n {
            m.data[i * n + i] = kind.one();
        }
        m
    }

    pub fn from_fn(
        kind: FieldKind,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { kind, rows, cols, data }
    }

    /// Builds a matrix from small integer entries.
    pub fn from_ints(kind: FieldKind, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(kind, rows.len(), cols, |i, j| kind.from_i64(rows[i][j]))
    }

    /// A single column.
    pub fn column_vector(kind: FieldKind, v: &[Scalar]) -> Self {
        Matrix::from_fn(kind, v.len(), 1, |i, _| v[i].clone())
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(kind: FieldKind, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(kind, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Matrix whose rows are the given vectors of length `cols`.
    pub fn from_rows(kind: FieldKind, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(kind, rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        debug_assert_eq!(value.kind(), self.kind);
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.kind, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    /// `self · v` for a vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.kind.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.kind, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.kind, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Rectangular block `rows r0..r0+nr`, `cols c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        Matrix::from_fn(self.kind, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn hstack(kind: FieldKind, rows: usize, parts: &[&Matrix]) -> Matrix {
        assert!(parts.iter().all(|p| p.rows == rows), "hstack row mismatch");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(kind, rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out.data[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack(kind: FieldKind, cols: usize, parts: &[&Matrix]) -> Matrix {
        assert!(parts.iter().all(|p| p.cols == cols), "vstack column mismatch");
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            data.extend(p.data.iter().cloned());
        }
        Matrix { kind, rows, cols, data }
    }

    pub fn block_diag(kind: FieldKind, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(kind, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.data[(r0 + i) * cols + c0 + j] = p.get(i, j).clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Reduced row-echelon form; pivots on the first non-zero entry of each column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { reduced: m, pivots }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inv().expect("pivot is non-zero");
            for j in c..cols {
                let v = &self.data[r * cols + j];
                if !v.is_zero() {
                    self.data[r * cols + j] = v * &inv;
                }
            }
            let support: Vec<usize> = (c..cols)
                .filter(|&j| !self.data[r * cols + j].is_zero())
                .collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for &j in &support {
                    let t = &factor * &self.data[r * cols + j];
                    self.data[i * cols + j] = &self.data[i * cols + j] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Columns form a basis of the right null space, one per free column,
    /// ordered by free column index.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.kind, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.kind.one());
            for (row, &p) in pivots.iter().enumerate() {
                let v = reduced.get(row, f);
                if !v.is_zero() {
                    out.set(p, k, -v);
                }
            }
        }
        out
    }

    /// Some `X` with `self · X = rhs`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows || rhs.kind != self.kind {
            return Err(Error::ShapeMismatch(format!(
                "cannot solve {}x{} system against {}x{} right-hand side",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let n = self.cols;
        let aug = Matrix::hstack(self.kind, self.rows, &[self, rhs]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.kind, n, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, reduced.get(row, n + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = self.kind.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i * n + c].is_zero()) else {
                return self.kind.zero();
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[c * n + c].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is non-zero");
            for i in c + 1..n {
                let factor = &m[i * n + c] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &factor * &m[c * n + j];
                    m[i * n + j] = &m[i * n + j] - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.kind, self.rows)).ok()??;
        (self.rank() == self.rows).then_some(x)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let kind = self.kind;
        let mut out = Matrix::zeros(kind, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum shape mismatch");
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape mismatch");
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// A linear subspace of `kind^ambient`, stored as the non-zero rows of an RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    kind: FieldKind,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(kind: FieldKind, ambient: usize) -> Self {
        Subspace { kind, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(kind: FieldKind, ambient: usize) -> Self {
        Subspace::from_matrix_rows(&Matrix::identity(kind, ambient))
    }

    /// Span of the given vectors (each of length `ambient`).
    pub fn span(kind: FieldKind, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Subspace::from_matrix_rows(&Matrix::from_rows(kind, ambient, vectors))
    }

    /// Row space of a matrix.
    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let Rref { reduced, pivots } = m.rref();
        let basis = (0..pivots.len()).map(|i| reduced.row(i).to_vec()).collect();
        Subspace { kind: m.kind(), ambient: m.cols(), basis, pivots }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Subspace::from_matrix_rows(&m.transpose())
    }

    /// Null space of a matrix.
    pub fn kernel(m: &Matrix) -> Self {
        Subspace::column_space(&m.kernel_basis())
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduced echelon basis vectors.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.kind, self.ambient, &self.basis)
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (ri, bi) in r.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *ri = &*ri - &(&f * bi);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.kind, self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve Σ αᵢ uᵢ = Σ βⱼ wⱼ.
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.kind, self.ambient);
        }
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let k = Matrix::hstack(self.kind, self.ambient, &[&a, &(-&b)]).kernel_basis();
        let alphas = k.block(0, 0, self.dim(), k.cols());
        Subspace::column_space(&(&a * &alphas))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldKind = FieldKind::Rationals;
    const F5: FieldKind = FieldKind::Prime(5);

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let z = Matrix::zeros(Q, 2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank(), 0);

        let m = Matrix::from_ints(Q, &[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_ints(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 2).kernel_basis().cols(), 0);
        let k = Matrix::zeros(Q, 2, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);

        let m = Matrix::from_ints(F5, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        // every vector of F5^2 with zero coordinate sum is a multiple of the basis column
        let col = k.column(0);
        for a in 0..5 {
            for b in 0..5 {
                let v = [F5.from_i64(a), F5.from_i64(b)];
                let in_kernel = (&v[0] + &v[1]).is_zero();
                let multiple = (0..5).any(|s| {
                    let s = F5.from_i64(s);
                    &col[0] * &s == v[0] && &col[1] * &s == v[1]
                });
                assert_eq!(in_kernel, multiple);
            }
        }
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_ints(Q, &[&[3], &[-1]]);
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(Q, 2, 2).solve(&b).unwrap(), None);
        let a = Matrix::from_ints(Q, &[&[1, 1], &[2, 2]]);
        let rhs = Matrix::from_ints(Q, &[&[1], &[3]]);
        assert_eq!(a.solve(&rhs).unwrap(), None);
        let bad = Matrix::zeros(Q, 3, 1);
        assert!(matches!(a.solve(&bad), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn determinants_and_inverses() {
        let m = Matrix::from_ints(Q, &[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        assert_eq!(m.det(), Q.from_i64(-1));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Matrix::from_ints(F5, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn subspace_operations() {
        let v = |xs: &[i64]| xs.iter().map(|&x| Q.from_i64(x)).collect::<Vec<_>>();
        let a = Subspace::span(Q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(Q, 3, &[v(&[0, 1, 1]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(Q, 3, &[v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.coordinates(&v(&[2, 3, 0])), Some(v(&[2, 3])));
        assert_eq!(a.coordinates(&v(&[2, 3, 1])), None);
        assert_eq!(a.complement_indices(), vec![2]);
    }

    fn matrix(kind: FieldKind) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                Matrix::from_fn(kind, r, c, |i, j| kind.from_i64(xs[i * c + j]))
            })
        })
    }

    fn check_rank_nullity(m: &Matrix) {
        let k = m.kernel_basis();
        assert_eq!(m.rank() + k.cols(), m.cols());
        assert!((m * &k).is_zero());
        assert_eq!(k.rank(), k.cols());
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in matrix(Q)) {
            let r = m.rref();
            prop_assert_eq!(r.reduced.rref(), r.clone());
        }

        #[test]
        fn rank_nullity_rationals(m in matrix(Q)) {
            check_rank_nullity(&m);
        }

        #[test]
        fn rank_nullity_f3(m in matrix(FieldKind::Prime(3))) {
            check_rank_nullity(&m);
        }

        #[test]
        fn solve_consistent_systems(m in matrix(Q), xs in prop::collection::vec(-3i64..4, 6)) {
            let x0 = Matrix::from_fn(Q, m.cols(), 1, |i, _| Q.from_i64(xs[i]));
            let b = &m * &x0;
            let x = m.solve(&b).unwrap().expect("consistent system");
            prop_assert_eq!(&m * &x, b);
        }

        #[test]
        fn det_matches_rank(m in matrix(FieldKind::Prime(5))) {
            if m.is_square() {
                prop_assert_eq!(m.det().is_zero(), m.rank() < m.rows());
            }
        }
    }
}
