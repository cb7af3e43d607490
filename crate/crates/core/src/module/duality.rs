use std::sync::Arc;

use super::{HomSpace, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

impl Module {
    /// `M* = Hom(M, Λ)` as a left module over the opposite algebra, on the
    /// `hom_basis` order, together with the underlying Hom-space.
    pub fn dual_with_homs(&self) -> Result<(Module, HomSpace)> {
        let alg = self.algebra();
        let homs = self.hom_to_regular()?;
        let s = homs.dim();
        let op = Arc::new(alg.opposite());
        let mut action = Vec::with_capacity(alg.dim());
        for k in 0..alg.dim() {
            let mut cols = Vec::with_capacity(s);
            for h in homs.basis() {
                let moved = alg.right_mult(k) * h.matrix();
                let coords = homs.coordinates(&moved).ok_or_else(|| {
                    Error::RouteMismatch("right multiple of a homomorphism left Hom(M, Λ)".into())
                })?;
                cols.push(coords);
            }
            action.push(Matrix::from_columns(self.kind(), s, &cols));
        }
        Ok((Module::from_parts(op, s, action), homs))
    }

    /// The Λ-dual `Hom(M, Λ)`, over the opposite algebra.
    pub fn dual(&self) -> Result<Module> {
        Ok(self.dual_with_homs()?.0)
    }

    /// Evaluation `M → M**`, `m ↦ (φ ↦ φ(m))`.
    pub fn evaluation_map(&self) -> Result<ModuleMap> {
        let (dual, homs) = self.dual_with_homs()?;
        let (double, homs2) = dual.dual_with_homs()?;
        let n = self.algebra().dim();
        let s = homs.dim();
        let mut cols = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let ev = Matrix::from_fn(self.kind(), n, s, |r, j| homs.basis()[j].matrix().get(r, i).clone());
            let coords = homs2
                .coordinates(&ev)
                .ok_or_else(|| Error::RouteMismatch("evaluation is not a homomorphism".into()))?;
            cols.push(coords);
        }
        let matrix = Matrix::from_columns(self.kind(), double.dim(), &cols);
        ModuleMap::new(self.clone(), double, matrix)
    }

    /// `Tr M`: cokernel of the dual of a minimal presentation
    /// `Λ^{t₁} → Λ^{t₀} → M → 0`.
    pub fn transpose(&self) -> Result<Module> {
        let first = self.syzygy_sequence();
        let omega = first.syzygy();
        if omega.is_zero() {
            return Ok(Module::zero(&Arc::new(self.algebra().opposite())));
        }
        let second = omega.syzygy_sequence();
        let presentation = first.inclusion.compose(&second.cover)?;
        Ok(presentation.dual()?.cokernel().module)
    }
}

impl ModuleMap {
    /// `f* : N* → M*`, `φ ↦ φ ∘ f`, on the `hom_basis` orders.
    pub fn dual(&self) -> Result<ModuleMap> {
        let (src_dual, src_homs) = self.source().dual_with_homs()?;
        let (tgt_dual, tgt_homs) = self.target().dual_with_homs()?;
        let mut cols = Vec::with_capacity(tgt_homs.dim());
        for phi in tgt_homs.basis() {
            let pulled = phi.matrix() * self.matrix();
            let coords = src_homs
                .coordinates(&pulled)
                .ok_or_else(|| Error::RouteMismatch("pullback left Hom(M, Λ)".into()))?;
            cols.push(coords);
        }
        let matrix = Matrix::from_columns(self.source().kind(), src_dual.dim(), &cols);
        ModuleMap::new(tgt_dual, src_dual, matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Side};
    use crate::field::Field;

    fn lam(q: &str) -> Arc<Algebra> {
        Arc::new(Algebra::lambda(&Field::parse("Q", q).unwrap()))
    }

    #[test]
    fn regular_module_is_self_dual() {
        let a = lam("2");
        let reg = Module::regular(&a);
        let d = reg.dual().unwrap();
        d.validate().unwrap();
        let right = Module::regular_module(&a, Side::Right);
        assert!(d.is_isomorphic(&right).unwrap().value);
        assert!(reg.evaluation_map().unwrap().is_isomorphism());
    }

    #[test]
    fn dual_of_simple_is_two_dimensional() {
        let a = lam("2");
        let d = Module::simple(&a).dual().unwrap();
        assert_eq!(d.dim(), 2);
        d.validate().unwrap();
    }

    #[test]
    fn transpose_of_projective_vanishes() {
        let a = lam("3");
        assert_eq!(Module::free(&a, 2).transpose().unwrap().dim(), 0);
    }
}
