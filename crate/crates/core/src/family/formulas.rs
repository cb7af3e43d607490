use serde::Serialize;

use super::{Descriptor, LambdaFamily, ProjPoint, Summand};
use crate::algebra::{basis, Side};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Subspace;
use crate::module::Module;

/// A branch of a case analysis together with the module it names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaCase {
    pub case: u8,
    pub descriptor: Descriptor,
}

/// The two coefficient recurrences along infinite Ω℧-chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// `c_{t+1} = −c_t / (1 − q^t)` for `t ≥ 1`, starting from `c_1`.
    CChain,
    /// `d_{t+1} = −(1 − q^{−(t+1)}) d_t` for `t ≥ 0`, starting from `d_0`.
    DChain,
}

/// Row of the classification of three-dimensional local modules annihilated
/// by the square of the radical, with the dimensions used to decide it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixCase {
    pub case: u8,
    pub x_image_dim: usize,
    pub y_image_dim: usize,
    pub z_image_dim: usize,
}

impl LambdaFamily {
    fn elem(&self, terms: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); 6];
        for (i, s) in terms {
            v[*i] = &v[*i] + s;
        }
        v
    }

    fn principal(&self, side: Side, body: &str, generator: Vec<Scalar>) -> Summand {
        let label = match side {
            Side::Left => format!("Λ{body}"),
            Side::Right => format!("{body}Λ"),
        };
        Summand { label, generator }
    }

    fn split(&self, side: Side, summands: Vec<Summand>) -> Descriptor {
        let label = summands.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(" ⊕ ");
        Descriptor::Ideal {
            side,
            label,
            generators: summands.iter().map(|s| s.generator.clone()).collect(),
            summands,
        }
    }

    fn x_minus_y(&self) -> Vec<Scalar> {
        let one = self.field.one();
        self.elem(&[(basis::X, one.clone()), (basis::Y, -one)])
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        self.elem(&[(i, self.field.one())])
    }

    /// `Λ(x−y) ⊕ Λzx`.
    fn u_one_minus_one(&self, side: Side) -> Descriptor {
        let parts = vec![
            self.principal(side, "(x-y)", self.x_minus_y()),
            self.principal(side, "zx", self.unit(basis::ZX)),
        ];
        self.split(side, parts)
    }

    /// `Λz ⊕ Λyx`.
    fn u_z(&self, side: Side) -> Descriptor {
        let parts = vec![
            self.principal(side, "z", self.unit(basis::Z)),
            self.principal(side, "yx", self.unit(basis::YX)),
        ];
        self.split(side, parts)
    }

    /// Closed form for `ΩM(p)` (left) or `ΩM′(p)` (right).
    pub fn syzygy_formula(&self, p: &ProjPoint, side: Side) -> FormulaCase {
        let f = &self.field;
        let local = |point: ProjPoint| Descriptor::Local { side, point };
        let named = |a, b, c| local(self.point(a, b, c).expect("non-zero"));
        let (a, b, c) = (p.a(), p.b(), p.c());
        let (case, descriptor) = match side {
            Side::Left => {
                if !a.is_zero() {
                    if !(a + b).is_zero() {
                        (1, local(p.omega(f).expect("a + b ≠ 0")))
                    } else if !c.is_zero() {
                        (2, named(0, 0, 1))
                    } else {
                        (3, self.u_one_minus_one(side))
                    }
                } else if !b.is_zero() {
                    (4, named(0, 1, 0))
                } else {
                    (5, self.u_z(side))
                }
            }
            Side::Right => {
                if !a.is_zero() {
                    (1, local(p.omega_prime(f).expect("a ≠ 0")))
                } else if !(b * c).is_zero() {
                    (2, named(0, 0, 1))
                } else if c.is_zero() {
                    let parts = vec![
                        self.principal(side, "y", self.unit(basis::Y)),
                        self.principal(side, "zx", self.unit(basis::ZX)),
                    ];
                    (3, self.split(side, parts))
                } else {
                    (4, self.u_z(side))
                }
            }
        };
        FormulaCase { case, descriptor }
    }

    /// Closed form for the Λ-dual of `M(1:b:c)` (a right module) or of
    /// `M′(1:b:c)` (a left module).
    pub fn dual_formula(&self, p: &ProjPoint, side: Side) -> Result<FormulaCase> {
        if !p.is_affine() {
            return Err(Error::OutsideChart(p.to_string()));
        }
        let f = &self.field;
        let other = side.flip();
        let local = |point: ProjPoint| Descriptor::Local { side: other, point };
        let (b, c) = (p.b(), p.c());
        let minus_one = -f.one();
        let minus_q_inv = -f.q_inv();
        let (case, descriptor) = match side {
            Side::Left => {
                let w = p.omega_prime(f).and_then(|w| w.omega_prime(f)).expect("a = 1");
                (1, local(w))
            }
            Side::Right => {
                if b != &minus_one && b != &minus_q_inv {
                    let w = p.omega(f).and_then(|w| w.omega(f)).expect("b ∉ {−1, −q⁻¹}");
                    (1, local(w))
                } else if b == &minus_one && !c.is_zero() {
                    (2, self.u_z(other))
                } else if b == &minus_one {
                    let q = f.q().clone();
                    let one = f.one();
                    let gens = vec![
                        self.elem(&[(basis::X, one), (basis::Y, -q)]),
                        self.unit(basis::Z),
                        self.unit(basis::YX),
                        self.unit(basis::ZX),
                    ];
                    let d = Descriptor::Ideal {
                        side: other,
                        label: "U(1:-q:0)+U(0:0:1)".to_string(),
                        generators: gens,
                        summands: Vec::new(),
                    };
                    (3, d)
                } else if !c.is_zero() {
                    (4, local(self.point(0, 0, 1).expect("non-zero")))
                } else {
                    (5, self.u_one_minus_one(other))
                }
            }
        };
        Ok(FormulaCase { case, descriptor })
    }

    /// `Tr M(1:b:c) ≅ M′(1:b:c)` and vice versa, away from `(1:−1:0)`.
    pub fn transpose_formula(&self, p: &ProjPoint, side: Side) -> Result<Descriptor> {
        if !p.is_affine() {
            return Err(Error::OutsideChart(p.to_string()));
        }
        if p == &self.point(1, -1, 0)? {
            return Err(Error::Precondition(
                "the transpose of the point (1:-1:0) is not covered by the closed form".into(),
            ));
        }
        Ok(Descriptor::Local { side: side.flip(), point: p.clone() })
    }

    /// Iterates a coefficient recurrence: `length` terms starting from `seed`.
    pub fn chain_coefficients(&self, seed: &Scalar, kind: ChainKind, length: usize) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let mut out = Vec::with_capacity(length);
        if length == 0 {
            return Ok(out);
        }
        out.push(seed.clone());
        for step in 1..length {
            let prev = out.last().expect("non-empty");
            let next = match kind {
                ChainKind::CChain => {
                    let t = step as i64;
                    let denom = &f.one() - &f.q_pow(t);
                    let ratio = prev.checked_div(&denom).ok_or_else(|| {
                        Error::DivisionByZero(format!("q^{t} = 1 in the coefficient chain"))
                    })?;
                    -ratio
                }
                ChainKind::DChain => {
                    let factor = &f.one() - &f.q_pow(-(step as i64));
                    -(&factor * prev)
                }
            };
            out.push(next);
        }
        Ok(out)
    }

    /// Decides the appendix row of a three-dimensional local module
    /// annihilated by `soc Λ`, from the subspaces `xM`, `yM`, `zM`.
    pub fn appendix_case(&self, m: &Module) -> Result<AppendixCase> {
        let alg = m.algebra();
        if alg.dim() != 6 || m.dim() != 3 || m.top_dim() != 1 {
            return Err(Error::Precondition("expected a three-dimensional local module".into()));
        }
        if !m.action(basis::YX).is_zero() || !m.action(basis::ZX).is_zero() {
            return Err(Error::Precondition("module is not annihilated by the socle".into()));
        }
        let image = |i: usize| Subspace::column_space(m.action(i));
        let (xm, ym, zm) = (image(basis::X), image(basis::Y), image(basis::Z));
        let case = if zm.is_zero() {
            1
        } else if ym.is_zero() {
            2
        } else if xm.is_zero() {
            3
        } else if xm == ym {
            4
        } else if xm == zm {
            5
        } else if ym == zm {
            6
        } else {
            7
        };
        Ok(AppendixCase {
            case,
            x_image_dim: xm.dim(),
            y_image_dim: ym.dim(),
            z_image_dim: zm.dim(),
        })
    }
}

/// Appendix row predicted from the coordinates of `(a:b:c)`.
pub fn appendix_row(p: &ProjPoint) -> u8 {
    let (a, b, c) = (!p.a().is_zero(), !p.b().is_zero(), !p.c().is_zero());
    match (a, b, c) {
        (false, false, true) => 1,
        (false, true, false) => 2,
        (true, false, false) => 3,
        (true, true, false) => 4,
        (true, false, true) => 5,
        (false, true, true) => 6,
        (true, true, true) => 7,
        (false, false, false) => unreachable!("normalized points are non-zero"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn fam(d: &str, q: &str) -> LambdaFamily {
        LambdaFamily::new(Field::parse(d, q).unwrap())
    }

    #[test]
    fn syzygy_dispatch() {
        let f = fam("Q", "2");
        let case = |a, b, c, side| f.syzygy_formula(&f.point(a, b, c).unwrap(), side);
        let left = case(1, -1, 1, Side::Left);
        assert_eq!(left.case, 2);
        assert_eq!(left.descriptor.to_string(), "M(0:0:1)");
        assert_eq!(case(0, 1, 3, Side::Left).descriptor.to_string(), "M(0:1:0)");
        assert_eq!(case(1, -1, 0, Side::Left).descriptor.to_string(), "Λ(x-y) ⊕ Λzx");
        assert_eq!(case(0, 0, 1, Side::Left).case, 5);
        assert_eq!(case(1, 1, 2, Side::Left).descriptor.to_string(), "M(1:2:-1)");
        let right = case(0, 1, 1, Side::Right);
        assert_eq!(right.case, 2);
        assert_eq!(right.descriptor.to_string(), "M'(0:0:1)");
        assert_eq!(case(0, 1, 0, Side::Right).descriptor.to_string(), "yΛ ⊕ zxΛ");
        assert_eq!(case(0, 0, 1, Side::Right).case, 4);
    }

    #[test]
    fn dual_dispatch() {
        let f = fam("Q", "2");
        let d = |a, b, c, side| f.dual_formula(&f.point(a, b, c).unwrap(), side).unwrap();
        assert_eq!(d(1, -2, 5, Side::Left).descriptor.to_string(), "M'(1:-1/2:0)");
        assert_eq!(d(1, -4, 5, Side::Left).descriptor.to_string(), "M'(1:-1:0)");
        assert_eq!(d(1, -1, 3, Side::Right).descriptor.to_string(), "Λz ⊕ Λyx");
        assert_eq!(d(1, -1, 0, Side::Right).case, 3);
        assert!(matches!(
            f.dual_formula(&f.point(0, 1, 0).unwrap(), Side::Left),
            Err(Error::OutsideChart(_))
        ));
    }

    #[test]
    fn chain_examples() {
        let f = fam("Q", "2");
        let one = f.field().one();
        let c = f.chain_coefficients(&one, ChainKind::CChain, 3).unwrap();
        let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["1", "1", "1/3"]);
        let zero = f.field().zero();
        let d = f.chain_coefficients(&zero, ChainKind::DChain, 5).unwrap();
        assert!(d.iter().all(Scalar::is_zero));
        let f5 = fam("Fp:5", "2");
        let one = f5.field().one();
        assert!(matches!(
            f5.chain_coefficients(&one, ChainKind::CChain, 5),
            Err(Error::DivisionByZero(_))
        ));
        assert_eq!(f5.chain_coefficients(&one, ChainKind::CChain, 4).unwrap().len(), 4);
    }

    #[test]
    fn appendix_examples() {
        let f = fam("Q", "3");
        let case = |a, b, c| {
            let p = f.point(a, b, c).unwrap();
            f.appendix_case(&f.module_m(&p, Side::Left)).unwrap().case
        };
        assert_eq!(case(1, 0, 0), 3);
        assert_eq!(case(1, 2, 0), 4);
        assert_eq!(case(1, 2, -1), 7);
        assert!(f.appendix_case(&f.regular(Side::Left)).is_err());
    }
}
