//! Finite-dimensional local algebras given by structure constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, Scalar};
use crate::matrix::{Matrix, Subspace};

/// Which side a module or annihilator lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// Basis indices of Λ(q) in the fixed order `1, x, y, z, yx, zx`.
pub mod basis {
    pub const ONE: usize = 0;
    pub const X: usize = 1;
    pub const Y: usize = 2;
    pub const Z: usize = 3;
    pub const YX: usize = 4;
    pub const ZX: usize = 5;
}

/// A finite-dimensional local algebra whose radical is spanned by the
/// non-unit basis vectors.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    unit: usize,
    /// `table[i][j]` holds the coordinates of `bᵢ · bⱼ`.
    table: Vec<Vec<Vec<Scalar>>>,
    opposite: bool,
    generators: Vec<usize>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.unit == other.unit
            && self.labels == other.labels
            && self.table == other.table
    }
}

impl Eq for Algebra {}

/// Radical filtration of an algebra or module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    /// Strictly descending, ending with the zero subspace.
    pub chain: Vec<Subspace>,
    pub length: usize,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }
}

impl Algebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        unit: usize,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        Algebra::build(field, labels, unit, table, false)
    }

    fn build(
        field: Field,
        labels: Vec<String>,
        unit: usize,
        table: Vec<Vec<Vec<Scalar>>>,
        opposite: bool,
    ) -> Result<Self> {
        let n = labels.len();
        let kind = field.kind();
        let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
        if unit >= n {
            return bad(format!("unit index {unit} out of range"));
        }
        if table.len() != n
            || table.iter().any(|row| {
                row.len() != n
                    || row.iter().any(|v| v.len() != n || v.iter().any(|s| s.kind() != kind))
            })
        {
            return bad(format!("structure constants are not a {n}x{n}x{n} table over {kind}"));
        }
        let e = |j: usize| -> Vec<Scalar> {
            (0..n).map(|k| if k == j { kind.one() } else { kind.zero() }).collect()
        };
        for j in 0..n {
            if table[unit][j] != e(j) || table[j][unit] != e(j) {
                return bad(format!("`{}` is not a two-sided unit", labels[unit]));
            }
        }
        let left: Vec<Matrix> = (0..n)
            .map(|i| Matrix::from_fn(kind, n, n, |k, j| table[i][j][k].clone()))
            .collect();
        let right: Vec<Matrix> = (0..n)
            .map(|i| Matrix::from_fn(kind, n, n, |k, j| table[j][i][k].clone()))
            .collect();
        let mut alg = Algebra {
            field,
            labels,
            unit,
            table,
            opposite,
            generators: Vec::new(),
            left,
            right,
        };
        // Associativity: L(bᵢbⱼ) = Lᵢ Lⱼ for all i, j.
        for i in 0..n {
            for j in 0..n {
                if alg.left_action_of(&alg.table[i][j]) != &alg.left[i] * &alg.left[j] {
                    return bad(format!(
                        "multiplication is not associative on ({}, {}, -)",
                        alg.labels[i], alg.labels[j]
                    ));
                }
            }
        }
        let radical = alg.radical();
        for i in alg.radical_indices() {
            for j in 0..n {
                if !radical.contains(&alg.table[i][j]) || !radical.contains(&alg.table[j][i]) {
                    return bad("non-unit basis vectors do not span an ideal".to_string());
                }
            }
        }
        let series = alg.radical_series();
        if !series.chain.last().is_some_and(Subspace::is_zero) {
            return bad("radical is not nilpotent".to_string());
        }
        let rad2 = series.chain.get(2).cloned().unwrap_or_else(|| Subspace::zero(kind, n));
        let mut span = rad2;
        for i in alg.radical_indices() {
            let v = e(i);
            if !span.contains(&v) {
                span = span.sum(&Subspace::span(kind, n, &[v]));
                alg.generators.push(i);
            }
        }
        Ok(alg)
    }

    /// The six-dimensional local algebra Λ(q) on the basis `1, x, y, z, yx, zx`.
    pub fn lambda(field: &Field) -> Algebra {
        use basis::*;
        let kind = field.kind();
        let n = 6;
        let unit_vec = |k: usize, s: Scalar| -> Vec<Scalar> {
            (0..n).map(|j| if j == k { s.clone() } else { kind.zero() }).collect()
        };
        let mut table = vec![vec![vec![kind.zero(); n]; n]; n];
        for j in 0..n {
            table[ONE][j] = unit_vec(j, kind.one());
            table[j][ONE] = unit_vec(j, kind.one());
        }
        table[X][Y] = unit_vec(YX, -field.q());
        table[X][Z] = unit_vec(ZX, kind.one());
        table[Y][X] = unit_vec(YX, kind.one());
        table[Z][X] = unit_vec(ZX, kind.one());
        table[Z][Y] = unit_vec(ZX, kind.one());
        let labels = ["1", "x", "y", "z", "yx", "zx"].map(String::from).to_vec();
        Algebra::new(field.clone(), labels, ONE, table)
            .expect("the defining relations of Λ(q) are consistent")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> FieldKind {
        self.field.kind()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    /// Coordinates of `bᵢ · bⱼ`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// Non-unit basis indices spanning the radical modulo its square.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| i != self.unit).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let kind = self.kind();
        (0..self.dim()).map(|k| if k == i { kind.one() } else { kind.zero() }).collect()
    }

    /// Builds an element from `(label, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, Scalar)]) -> Vec<Scalar> {
        let mut v = vec![self.kind().zero(); self.dim()];
        for (label, c) in terms {
            let i = self.index_of(label).unwrap_or_else(|| panic!("unknown basis label `{label}`"));
            v[i] = &v[i] + c;
        }
        v
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.kind().zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let s = ui * vj;
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    if !c.is_zero() {
                        *o = &*o + &(&s * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ bᵢ v` on the regular representation.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of `v ↦ v bᵢ` on the regular representation.
    pub fn right_mult(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_action_of(&self, a: &[Scalar]) -> Matrix {
        self.combine(&self.left, a)
    }

    /// Matrix of right multiplication by an arbitrary element.
    pub fn right_action_of(&self, a: &[Scalar]) -> Matrix {
        self.combine(&self.right, a)
    }

    fn combine(&self, mats: &[Matrix], a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.kind(), n, n);
        for (m, c) in mats.iter().zip(a) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// The algebra with reversed multiplication on the same basis.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let table = (0..n)
            .map(|i| (0..n).map(|j| self.table[j][i].clone()).collect())
            .collect();
        Algebra::build(self.field.clone(), self.labels.clone(), self.unit, table, !self.opposite)
            .expect("the opposite of a valid algebra is valid")
    }

    pub fn radical(&self) -> Subspace {
        let vs: Vec<_> = self.radical_indices().into_iter().map(|i| self.basis_vector(i)).collect();
        Subspace::span(self.kind(), self.dim(), &vs)
    }

    /// `A ⊇ J ⊇ J² ⊇ … ⊇ 0`.
    pub fn radical_series(&self) -> SeriesReport {
        let n = self.dim();
        let mut chain = vec![Subspace::full(self.kind(), n)];
        let mut current = self.radical();
        let rad = self.radical_indices();
        while chain.last().map(Subspace::dim) != Some(current.dim()) {
            chain.push(current.clone());
            if current.is_zero() {
                break;
            }
            let mut next = Vec::new();
            for v in current.basis() {
                for &i in &rad {
                    next.push(self.left[i].mul_vec(v));
                }
            }
            current = Subspace::span(self.kind(), n, &next);
        }
        let length = chain.len() - 1;
        SeriesReport { chain, length }
    }

    /// Annihilator of the radical acting from `side`.
    pub fn socle(&self, side: Side) -> Subspace {
        let n = self.dim();
        let mats: Vec<&Matrix> = self
            .radical_indices()
            .into_iter()
            .map(|i| match side {
                Side::Left => &self.left[i],
                Side::Right => &self.right[i],
            })
            .collect();
        Subspace::kernel(&Matrix::vstack(self.kind(), n, &mats))
    }

    /// Checks that `ideal` is closed under multiplication on both sides.
    pub fn is_two_sided_ideal(&self, ideal: &Subspace) -> bool {
        ideal.basis().iter().all(|v| {
            (0..self.dim()).all(|i| {
                ideal.contains(&self.left[i].mul_vec(v)) && ideal.contains(&self.right[i].mul_vec(v))
            })
        })
    }

    /// Quotient by a two-sided ideal, on the basis vectors complementary to its pivots.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Algebra> {
        if !self.is_two_sided_ideal(ideal) {
            return Err(Error::InvalidAlgebra("not a two-sided ideal".to_string()));
        }
        let keep = ideal.complement_indices();
        let unit = keep
            .iter()
            .position(|&k| k == self.unit)
            .ok_or_else(|| Error::InvalidAlgebra("ideal contains the unit".to_string()))?;
        let table = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        let r = ideal.reduce(&self.table[i][j]);
                        keep.iter().map(|&k| r[k].clone()).collect()
                    })
                    .collect()
            })
            .collect();
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        Algebra::build(self.field.clone(), labels, unit, table, self.opposite)
    }

    /// Λ̄(q) = Λ(q) / soc Λ(q).
    pub fn quotient_rad2(&self) -> Result<Algebra> {
        let series = self.radical_series();
        let socle = self.socle(Side::Left);
        if self.dim() != 6 || socle.dim() != 2 || series.dims() != [6, 5, 2, 0] {
            return Err(Error::InvalidAlgebra(
                "expected the six-dimensional algebra with two-dimensional socle".to_string(),
            ));
        }
        self.quotient(&series.chain[2])
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.opposite { "^op" } else { "" };
        write!(f, "algebra{op} of dimension {} over {}", self.dim(), self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::basis::*;
    use super::*;

    fn lam(q: &str) -> Algebra {
        Algebra::lambda(&Field::parse("Q", q).unwrap())
    }

    fn e(a: &Algebra, i: usize) -> Vec<Scalar> {
        a.basis_vector(i)
    }

    #[test]
    fn products_follow_relations() {
        let a = lam("2");
        let f = a.field().clone();
        assert_eq!(a.multiply(&e(&a, X), &e(&a, Y)), a.element(&[("yx", f.int(-2))]));
        assert_eq!(a.multiply(&e(&a, Z), &e(&a, Y)), e(&a, ZX));
        assert!(a.multiply(&e(&a, Y), &e(&a, Z)).iter().all(Scalar::is_zero));
        assert_eq!(a.multiply(&e(&a, Y), &e(&a, X)), e(&a, YX));
        assert!(a.multiply(&e(&a, X), &e(&a, YX)).iter().all(Scalar::is_zero));
    }

    #[test]
    fn words_of_length_three_vanish_both_ways() {
        let a = lam("3");
        let gens = [X, Y, Z];
        for &i in &gens {
            for &j in &gens {
                for &k in &gens {
                    let l = a.multiply(&a.multiply(&e(&a, i), &e(&a, j)), &e(&a, k));
                    let r = a.multiply(&e(&a, i), &a.multiply(&e(&a, j), &e(&a, k)));
                    assert!(l.iter().all(Scalar::is_zero));
                    assert!(r.iter().all(Scalar::is_zero));
                }
            }
        }
    }

    #[test]
    fn opposite_is_involution() {
        let a = lam("2");
        let op = a.opposite();
        assert_eq!(op.multiply(&e(&op, X), &e(&op, Y)), e(&a, YX));
        let f = a.field();
        assert_eq!(op.multiply(&e(&op, Y), &e(&op, X)), op.element(&[("yx", -f.q())]));
        assert_eq!(op.opposite(), a);
        assert_ne!(op, a);
        assert!(op.is_opposite());
    }

    #[test]
    fn series_and_socle() {
        let a = lam("2");
        let s = a.radical_series();
        assert_eq!(s.dims(), vec![6, 5, 2, 0]);
        assert_eq!(s.length, 3);
        for side in [Side::Left, Side::Right] {
            let soc = a.socle(side);
            assert_eq!(soc, Subspace::span(a.kind(), 6, &[e(&a, YX), e(&a, ZX)]));
        }
        assert_eq!(a.generators(), &[X, Y, Z]);
    }

    #[test]
    fn radical_square_quotient() {
        let a = lam("2");
        let bar = a.quotient_rad2().unwrap();
        assert_eq!(bar.dim(), 4);
        assert_eq!(bar.labels(), &["1", "x", "y", "z"]);
        assert!(bar.multiply(&e(&bar, X), &e(&bar, Y)).iter().all(Scalar::is_zero));
        assert_eq!(bar.multiply(&e(&bar, ONE), &e(&bar, X)), e(&bar, X));
        assert_eq!(bar.radical_series().dims(), vec![4, 3, 0]);
        assert!(matches!(bar.quotient_rad2(), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn rejects_non_associative_tables() {
        let f = Field::parse("Q", "1").unwrap();
        let k = f.kind();
        let z = || vec![k.zero(); 3];
        let unit = |j: usize| (0..3).map(|i| if i == j { k.one() } else { k.zero() }).collect::<Vec<_>>();
        // basis 1, a, b with a·a = b, a·b = b (breaks (aa)a = a(aa) since b·a = 0)
        let mut t = vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), z()]];
        for j in 0..3 {
            t[0][j] = unit(j);
            t[j][0] = unit(j);
        }
        t[1][1] = unit(2);
        t[1][2] = unit(2);
        let labels = ["1", "a", "b"].map(String::from).to_vec();
        assert!(matches!(Algebra::new(f, labels, 0, t), Err(Error::InvalidAlgebra(_))));
    }
}
