//! Finite-dimensional left modules given by action matrices, and maps between them.

mod duality;
mod enumerate;
mod hom;
mod homological;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, SeriesReport, Side};
use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::matrix::{Matrix, Subspace};

pub use enumerate::{grassmannian_size, DEFAULT_SCAN_BUDGET};
pub use hom::{HomSpace, IsoWitness, ISO_SCAN_BUDGET};
pub use homological::{
    Approximation, DepthWitness, ReflexiveWitness, SyzygySequence, TorsionlessWitness,
};

/// Outcome of a decision procedure, with an optional certificate.
#[derive(Clone, Debug)]
pub struct Verdict<W> {
    pub value: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn yes(witness: W) -> Self {
        Verdict { value: true, witness: Some(witness) }
    }

    pub fn no(witness: W) -> Self {
        Verdict { value: false, witness: Some(witness) }
    }
}

struct ModuleData {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

/// A left module over `algebra`; one `dim × dim` matrix per basis element.
/// Cloning is cheap.
#[derive(Clone)]
pub struct Module {
    inner: Arc<ModuleData>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module")
            .field("dim", &self.dim())
            .field("algebra_dim", &self.algebra().dim())
            .field("opposite", &self.algebra().is_opposite())
            .finish()
    }
}

impl Module {
    /// Validating constructor.
    pub fn new(algebra: Arc<Algebra>, action: Vec<Matrix>) -> Result<Module> {
        let dim = action.first().map_or(0, Matrix::rows);
        let m = Module::from_parts(algebra, dim, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Module {
        Module { inner: Arc::new(ModuleData { algebra, dim, action }) }
    }

    /// Checks shapes, the unit and every structure constant.
    pub fn validate(&self) -> Result<()> {
        let alg = self.algebra();
        let n = alg.dim();
        let d = self.dim();
        let bad = |msg: String| Err(Error::InvalidModule(msg));
        if self.inner.action.len() != n {
            return bad(format!("{} action matrices for {n} basis elements", self.inner.action.len()));
        }
        if self
            .inner
            .action
            .iter()
            .any(|a| a.rows() != d || a.cols() != d || a.kind() != alg.kind())
        {
            return bad(format!("action matrices must be {d}x{d} over {}", alg.kind()));
        }
        if !self.action(alg.unit_index()).is_identity() {
            return bad("unit does not act as the identity".to_string());
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action(i) * self.action(j);
                if lhs != self.action_of(alg.product(i, j)) {
                    return bad(format!(
                        "action violates the product {} * {}",
                        alg.label(i),
                        alg.label(j)
                    ));
                }
            }
        }
        Ok(())
    }

    /// Left regular module.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let n = algebra.dim();
        let action = (0..n).map(|i| algebra.left_mult(i).clone()).collect();
        Module::from_parts(algebra.clone(), n, action)
    }

    /// Regular module on the given side; right modules become left modules
    /// over the opposite algebra.
    pub fn regular_module(algebra: &Arc<Algebra>, side: Side) -> Module {
        match side {
            Side::Left => Module::regular(algebra),
            Side::Right => Module::regular(&Arc::new(algebra.opposite())),
        }
    }

    /// `Λ^t` as a direct sum of regular modules.
    pub fn free(algebra: &Arc<Algebra>, t: usize) -> Module {
        let reg = Module::regular(algebra);
        Module::direct_sum(algebra, &vec![reg; t])
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let action = vec![Matrix::zeros(algebra.kind(), 0, 0); algebra.dim()];
        Module::from_parts(algebra.clone(), 0, action)
    }

    /// The simple module: one-dimensional, radical acting by zero.
    pub fn simple(algebra: &Arc<Algebra>) -> Module {
        let kind = algebra.kind();
        let action = (0..algebra.dim())
            .map(|i| {
                let s = if i == algebra.unit_index() { kind.one() } else { kind.zero() };
                Matrix::from_fn(kind, 1, 1, |_, _| s.clone())
            })
            .collect();
        Module::from_parts(algebra.clone(), 1, action)
    }

    pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> Module {
        let kind = algebra.kind();
        let action = (0..algebra.dim())
            .map(|i| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| p.action(i)).collect();
                Matrix::block_diag(kind, &blocks)
            })
            .collect();
        let dim = parts.iter().map(Module::dim).sum();
        Module::from_parts(algebra.clone(), dim, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.algebra
    }

    pub fn kind(&self) -> FieldKind {
        self.inner.algebra.kind()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Action matrix of basis element `i`.
    pub fn action(&self, i: usize) -> &Matrix {
        &self.inner.action[i]
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut out = Matrix::zeros(self.kind(), d, d);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.action(i).scale(c);
            }
        }
        out
    }

    pub fn act(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.action(i).mul_vec(v)
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(self.algebra(), other.algebra()) || self.algebra() == other.algebra()
    }

    pub(crate) fn require_same_algebra(&self, other: &Module) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let kind = self.kind();
        (0..self.dim()).map(|k| if k == i { kind.one() } else { kind.zero() }).collect()
    }

    /// Whether a subspace is closed under the action.
    pub fn is_submodule(&self, s: &Subspace) -> bool {
        let gens = self.algebra().generators().to_vec();
        s.basis()
            .iter()
            .all(|v| gens.iter().all(|&g| s.contains(&self.act(g, v))))
    }

    /// Smallest submodule containing the given vectors.
    pub fn closure(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let d = self.dim();
        let gens = self.algebra().generators().to_vec();
        let mut span = Subspace::span(self.kind(), d, vectors);
        loop {
            let mut more: Vec<Vec<Scalar>> = span.basis().to_vec();
            for v in span.basis() {
                for &g in &gens {
                    more.push(self.act(g, v));
                }
            }
            let next = Subspace::span(self.kind(), d, &more);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// The submodule generated by the given vectors, with its inclusion.
    pub fn submodule(&self, generators: &[Vec<Scalar>]) -> Submodule {
        let s = self.closure(generators);
        self.restrict_unchecked(&s)
    }

    /// Restriction to a subspace that must already be action-closed.
    pub fn restrict(&self, s: &Subspace) -> Result<Submodule> {
        if s.ambient() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "subspace of dimension {} in a module of dimension {}",
                s.ambient(),
                self.dim()
            )));
        }
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule("subspace is not closed under the action".into()));
        }
        Ok(self.restrict_unchecked(s))
    }

    pub(crate) fn restrict_unchecked(&self, s: &Subspace) -> Submodule {
        let kind = self.kind();
        let k = s.dim();
        let pivots = s.pivots().to_vec();
        let action = (0..self.algebra().dim())
            .map(|i| {
                let images: Vec<Vec<Scalar>> = s
                    .basis()
                    .iter()
                    .map(|v| {
                        let w = self.act(i, v);
                        pivots.iter().map(|&p| w[p].clone()).collect()
                    })
                    .collect();
                Matrix::from_columns(kind, k, &images)
            })
            .collect();
        let module = Module::from_parts(self.algebra().clone(), k, action);
        let inclusion = ModuleMap::from_parts(module.clone(), self.clone(), s.basis_matrix());
        Submodule { module, inclusion, subspace: s.clone() }
    }

    /// Quotient by an action-closed subspace, with its projection.
    pub fn quotient(&self, s: &Subspace) -> Result<Quotient> {
        if s.ambient() != self.dim() || !self.is_submodule(s) {
            return Err(Error::InvalidModule("quotient by a non-submodule".into()));
        }
        Ok(self.quotient_unchecked(s))
    }

    pub(crate) fn quotient_unchecked(&self, s: &Subspace) -> Quotient {
        let kind = self.kind();
        let keep = s.complement_indices();
        let k = keep.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = s.reduce(v);
            keep.iter().map(|&j| r[j].clone()).collect()
        };
        let action = (0..self.algebra().dim())
            .map(|i| {
                let cols: Vec<Vec<Scalar>> = keep
                    .iter()
                    .map(|&j| project(&self.action(i).column(j)))
                    .collect();
                Matrix::from_columns(kind, k, &cols)
            })
            .collect();
        let module = Module::from_parts(self.algebra().clone(), k, action);
        let proj_cols: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|j| project(&self.basis_vector(j))).collect();
        let projection =
            ModuleMap::from_parts(self.clone(), module.clone(), Matrix::from_columns(kind, k, &proj_cols));
        Quotient { module, projection, kernel: s.clone() }
    }

    /// `(rad A) · M`.
    pub fn radical(&self) -> Subspace {
        let mut vs = Vec::new();
        for i in self.algebra().radical_indices() {
            vs.extend(self.action(i).columns());
        }
        Subspace::span(self.kind(), self.dim(), &vs)
    }

    /// Annihilator of the radical.
    pub fn socle(&self) -> Subspace {
        let mats: Vec<&Matrix> = self
            .algebra()
            .radical_indices()
            .into_iter()
            .map(|i| self.action(i))
            .collect();
        if self.dim() == 0 {
            return Subspace::zero(self.kind(), 0);
        }
        Subspace::kernel(&Matrix::vstack(self.kind(), self.dim(), &mats))
    }

    /// `M / rad M`.
    pub fn top(&self) -> Quotient {
        self.quotient_unchecked(&self.radical())
    }

    pub fn top_dim(&self) -> usize {
        self.dim() - self.radical().dim()
    }

    /// `M ⊇ JM ⊇ J²M ⊇ … ⊇ 0`.
    pub fn radical_series(&self) -> SeriesReport {
        let d = self.dim();
        let rad = self.algebra().radical_indices();
        let mut chain = vec![Subspace::full(self.kind(), d)];
        while let Some(last) = chain.last() {
            if last.is_zero() {
                break;
            }
            let mut vs = Vec::new();
            for v in last.basis() {
                for &i in &rad {
                    vs.push(self.act(i, v));
                }
            }
            let next = Subspace::span(self.kind(), d, &vs);
            assert!(next.dim() < last.dim(), "radical acts nilpotently");
            chain.push(next);
        }
        let length = chain.len() - 1;
        SeriesReport { chain, length }
    }

    pub fn loewy_length(&self) -> usize {
        self.radical_series().length
    }
}

/// A submodule realized as a module, with the inclusion map.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub subspace: Subspace,
}

/// A quotient realized as a module, with the projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Module,
    pub projection: ModuleMap,
    pub kernel: Subspace,
}

/// A module homomorphism; `matrix` is `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleMap {
    /// Validating constructor: same algebra, matching shape, intertwining.
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleMap> {
        source.require_same_algebra(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a map from dimension {} to {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let f = ModuleMap { source, target, matrix };
        if !f.intertwines() {
            return Err(Error::InvalidModule("matrix does not intertwine the actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: Module, target: Module, matrix: Matrix) -> ModuleMap {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim(), source.dim()));
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap::from_parts(m.clone(), m.clone(), Matrix::identity(m.kind(), m.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let z = Matrix::zeros(source.kind(), target.dim(), source.dim());
        ModuleMap::from_parts(source.clone(), target.clone(), z)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `matrix · A_source(b) = A_target(b) · matrix` for every basis element `b`.
    pub fn intertwines(&self) -> bool {
        (0..self.source.algebra().dim()).all(|i| {
            &self.matrix * self.source.action(i) == self.target.action(i) * &self.matrix
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target.dim() != self.source.dim() || !first.target.same_algebra(&self.source) {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        Ok(ModuleMap::from_parts(
            first.source.clone(),
            self.target.clone(),
            &self.matrix * &first.matrix,
        ))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn kernel(&self) -> Submodule {
        let k = if self.source.dim() == 0 {
            Subspace::zero(self.source.kind(), 0)
        } else {
            Subspace::kernel(&self.matrix)
        };
        self.source.restrict_unchecked(&k)
    }

    pub fn image(&self) -> Submodule {
        let s = Subspace::column_space(&self.matrix);
        self.target.restrict_unchecked(&s)
    }

    pub fn cokernel(&self) -> Quotient {
        let s = Subspace::column_space(&self.matrix);
        self.target.quotient_unchecked(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis::*;
    use crate::field::Field;

    fn lam(q: &str) -> Arc<Algebra> {
        Arc::new(Algebra::lambda(&Field::parse("Q", q).unwrap()))
    }

    #[test]
    fn regular_module_basics() {
        let a = lam("2");
        let reg = Module::regular(&a);
        reg.validate().unwrap();
        assert_eq!(reg.dim(), 6);
        assert!(reg.action(ONE).is_identity());
        assert_eq!(reg.action(YX).rank(), 1);
        assert_eq!(reg.loewy_length(), 3);
        let right = Module::regular_module(&a, Side::Right);
        right.validate().unwrap();
        assert!(right.algebra().is_opposite());
    }

    #[test]
    fn generated_submodules() {
        let a = lam("2");
        let reg = Module::regular(&a);
        let z = reg.submodule(&[a.basis_vector(Z)]);
        assert_eq!(z.module.dim(), 2);
        z.module.validate().unwrap();
        assert!(z.inclusion.intertwines());
        let k = a.kind();
        let x_minus_y = a.element(&[("x", k.one()), ("y", -k.one())]);
        assert_eq!(reg.submodule(&[x_minus_y]).module.dim(), 2);
    }

    #[test]
    fn quotient_carries_induced_action() {
        let a = lam("3");
        let reg = Module::regular(&a);
        let soc = a.socle(Side::Left);
        let q = reg.quotient(&soc).unwrap();
        q.module.validate().unwrap();
        assert_eq!(q.module.dim(), 4);
        assert!(q.projection.intertwines());
        assert!(q.projection.is_surjective());
        assert_eq!(q.module.loewy_length(), 2);
        assert_eq!(q.module.top_dim(), 1);
        assert!(reg.quotient(&Subspace::span(a.kind(), 6, &[a.basis_vector(X)])).is_err());
    }

    #[test]
    fn rejects_bad_actions() {
        let a = lam("2");
        let k = a.kind();
        let mut action: Vec<Matrix> = (0..6).map(|_| Matrix::zeros(k, 1, 1)).collect();
        assert!(Module::new(a.clone(), action.clone()).is_err());
        action[ONE] = Matrix::identity(k, 1);
        assert!(Module::new(a.clone(), action.clone()).is_ok());
        action[X] = Matrix::identity(k, 1);
        assert!(Module::new(a, action).is_err());
    }

    #[test]
    fn maps_check_intertwining() {
        let a = lam("2");
        let reg = Module::regular(&a);
        let s = Module::simple(&a);
        let bad = Matrix::from_fn(a.kind(), 6, 1, |i, _| {
            if i == X { a.kind().one() } else { a.kind().zero() }
        });
        assert!(ModuleMap::new(s.clone(), reg.clone(), bad).is_err());
        let good = Matrix::from_fn(a.kind(), 6, 1, |i, _| {
            if i == YX { a.kind().one() } else { a.kind().zero() }
        });
        let f = ModuleMap::new(s, reg, good).unwrap();
        assert!(f.is_injective());
        assert_eq!(f.cokernel().module.dim(), 5);
    }
}
