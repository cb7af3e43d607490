//! The family of three-dimensional local modules `M(a:b:c)` over Λ(q) and
//! its right-hand counterpart `M′(a:b:c)`, realized over the opposite algebra.

mod classify;
mod formulas;
mod point;
mod quiver;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{basis, Algebra, Side};
use crate::field::{Field, OrderResult, Scalar};
use crate::matrix::Subspace;
use crate::module::{Module, Quotient, Submodule};

pub use classify::{ClassificationReport, ExponentRange, ReportSource};
pub use formulas::{appendix_row, AppendixCase, ChainKind, FormulaCase};
pub use point::{all_points, default_grid, ProjPoint};
pub use quiver::{Category, Component, ComponentShape, QuiverEdge, QuiverGraph, QuiverNode};

/// A principal one-sided ideal `Λg` (left) or `gΛ` (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub label: String,
    pub generator: Vec<Scalar>,
}

/// A module named by a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    /// `M(p)` on the left, `M′(p)` on the right.
    Local { side: Side, point: ProjPoint },
    /// The one-sided ideal generated by `generators`; when `summands` is
    /// non-empty it is the direct sum of those principal ideals.
    Ideal {
        side: Side,
        label: String,
        generators: Vec<Vec<Scalar>>,
        summands: Vec<Summand>,
    },
    Zero { side: Side },
}

impl Descriptor {
    pub fn side(&self) -> Side {
        match self {
            Descriptor::Local { side, .. }
            | Descriptor::Ideal { side, .. }
            | Descriptor::Zero { side } => *side,
        }
    }

    pub fn point(&self) -> Option<&ProjPoint> {
        match self {
            Descriptor::Local { point, .. } => Some(point),
            _ => None,
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Local { side, point } => write!(f, "{}{point}", module_name(*side)),
            Descriptor::Ideal { label, .. } => write!(f, "{label}"),
            Descriptor::Zero { .. } => write!(f, "0"),
        }
    }
}

impl Serialize for Descriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `M` for left modules, `M'` for right modules.
pub fn module_name(side: Side) -> &'static str {
    match side {
        Side::Left => "M",
        Side::Right => "M'",
    }
}

/// Λ(q) and its opposite over a fixed field, with the constructions of the family.
#[derive(Clone, Debug)]
pub struct LambdaFamily {
    field: Field,
    left: Arc<Algebra>,
    right: Arc<Algebra>,
}

impl LambdaFamily {
    pub fn new(field: Field) -> LambdaFamily {
        let left = Arc::new(Algebra::lambda(&field));
        let right = Arc::new(left.opposite());
        LambdaFamily { field, left, right }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> OrderResult {
        self.field.mul_order()
    }

    /// Λ for left modules, Λ^op for right modules.
    pub fn algebra(&self, side: Side) -> &Arc<Algebra> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn regular(&self, side: Side) -> Module {
        Module::regular(self.algebra(side))
    }

    pub fn point(&self, a: i64, b: i64, c: i64) -> crate::Result<ProjPoint> {
        ProjPoint::from_ints(self.field.kind(), a, b, c)
    }

    pub fn parse_point(&self, text: &str) -> crate::Result<ProjPoint> {
        ProjPoint::parse(&self.field, text)
    }

    pub fn default_grid(&self) -> Vec<ProjPoint> {
        default_grid(&self.field)
    }

    /// The element `ax + by + cz`.
    pub fn linear_element(&self, p: &ProjPoint) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); 6];
        v[basis::X] = p.a().clone();
        v[basis::Y] = p.b().clone();
        v[basis::Z] = p.c().clone();
        v
    }

    /// `U(p) = Λ(ax+by+cz) + soc Λ` (left) or `(ax+by+cz)Λ + soc Λ` (right).
    pub fn module_u(&self, p: &ProjPoint, side: Side) -> Submodule {
        let alg = self.algebra(side);
        let gens = vec![
            self.linear_element(p),
            alg.basis_vector(basis::YX),
            alg.basis_vector(basis::ZX),
        ];
        self.regular(side).submodule(&gens)
    }

    /// `M(p) = Λ / U(p)` on the given side, with the projection from Λ.
    pub fn module_m_quotient(&self, p: &ProjPoint, side: Side) -> Quotient {
        let u = self.module_u(p, side);
        let reg = self.regular(side);
        reg.quotient(&u.subspace).expect("U(p) is a submodule")
    }

    pub fn module_m(&self, p: &ProjPoint, side: Side) -> Module {
        self.module_m_quotient(p, side).module
    }

    /// The ideal generated by the given elements on the given side.
    pub fn ideal(&self, side: Side, generators: &[Vec<Scalar>]) -> Module {
        self.regular(side).submodule(generators).module
    }

    /// A module for a descriptor.
    pub fn realize(&self, d: &Descriptor) -> Module {
        match d {
            Descriptor::Local { side, point } => self.module_m(point, *side),
            Descriptor::Ideal { side, generators, .. } => self.ideal(*side, generators),
            Descriptor::Zero { side } => Module::zero(self.algebra(*side)),
        }
    }

    /// The direct summands of a decomposable descriptor, realized.
    pub fn realize_summands(&self, d: &Descriptor) -> Option<Vec<Module>> {
        match d {
            Descriptor::Ideal { side, summands, .. } if !summands.is_empty() => Some(
                summands
                    .iter()
                    .map(|s| self.ideal(*side, std::slice::from_ref(&s.generator)))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Socle of Λ, identical on both sides.
    pub fn socle(&self) -> Subspace {
        self.left.socle(Side::Left)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(d: &str, q: &str) -> LambdaFamily {
        LambdaFamily::new(Field::parse(d, q).unwrap())
    }

    #[test]
    fn family_modules_are_local_of_dimension_three() {
        for (d, q) in [("Q", "2"), ("Fp:3", "2"), ("Fp:2", "1")] {
            let f = fam(d, q);
            for p in f.default_grid() {
                for side in [Side::Left, Side::Right] {
                    let u = f.module_u(&p, side);
                    assert_eq!(u.module.dim(), 3, "{p} {side}");
                    assert!(u.subspace.contains_subspace(&f.socle()));
                    let m = f.module_m(&p, side);
                    m.validate().unwrap();
                    assert_eq!(m.dim(), 3);
                    assert_eq!(m.top_dim(), 1);
                    assert_eq!(m.socle().dim(), 2);
                    assert!(m.loewy_length() <= 2);
                }
            }
        }
    }

    #[test]
    fn u_of_one_minus_one_zero_splits() {
        let f = fam("Q", "2");
        let k = f.field().kind();
        let p = f.point(1, -1, 0).unwrap();
        let u = f.module_u(&p, Side::Left).module;
        let x_minus_y = f.linear_element(&p);
        let zx = f.algebra(Side::Left).basis_vector(basis::ZX);
        let parts = [f.ideal(Side::Left, &[x_minus_y]), f.ideal(Side::Left, &[zx])];
        assert_eq!(parts[0].dim(), 2);
        assert!(u.is_direct_sum_of(&parts).unwrap().value);
        assert_eq!(k, parts[1].kind());
    }
}
