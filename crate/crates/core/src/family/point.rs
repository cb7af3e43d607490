use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, Scalar};

/// A point `(a:b:c)` of the projective plane, normalized so that its first
/// non-zero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [Scalar; 3],
}

impl ProjPoint {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<ProjPoint> {
        let coords = [a, b, c];
        let lead = coords.iter().find(|s| !s.is_zero()).ok_or(Error::ZeroPoint)?;
        let inv = lead.inv().expect("non-zero");
        Ok(ProjPoint { coords: coords.map(|s| &s * &inv) })
    }

    pub fn from_ints(kind: FieldKind, a: i64, b: i64, c: i64) -> Result<ProjPoint> {
        ProjPoint::new(kind.from_i64(a), kind.from_i64(b), kind.from_i64(c))
    }

    /// Parses `"a,b,c"` with each coordinate an integer or fraction literal.
    pub fn parse(field: &Field, text: &str) -> Result<ProjPoint> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::ParseLiteral {
                literal: text.to_string(),
                field: "the projective plane (expected `a,b,c`)".to_string(),
            });
        }
        ProjPoint::new(
            field.parse_element(parts[0])?,
            field.parse_element(parts[1])?,
            field.parse_element(parts[2])?,
        )
    }

    pub fn a(&self) -> &Scalar {
        &self.coords[0]
    }

    pub fn b(&self) -> &Scalar {
        &self.coords[1]
    }

    pub fn c(&self) -> &Scalar {
        &self.coords[2]
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn kind(&self) -> FieldKind {
        self.coords[0].kind()
    }

    /// In the chart `a = 1`.
    pub fn is_affine(&self) -> bool {
        !self.a().is_zero()
    }

    /// `ω(a,b,c) = (a, qb, −a/(a+b)·c)`, defined when `a + b ≠ 0`.
    pub fn omega(&self, field: &Field) -> Option<ProjPoint> {
        let [a, b, c] = &self.coords;
        let s = a + b;
        if s.is_zero() {
            return None;
        }
        let c2 = -(&(a * c) / &s);
        ProjPoint::new(a.clone(), field.q() * b, c2).ok()
    }

    /// `ω′(a,b,c) = (a, q⁻¹b, −(a+q⁻¹b)/a·c)`, defined when `a ≠ 0`.
    pub fn omega_prime(&self, field: &Field) -> Option<ProjPoint> {
        let [a, b, c] = &self.coords;
        if a.is_zero() {
            return None;
        }
        let b2 = &field.q_inv() * b;
        let c2 = -(&(&(a + &b2) * c) / a);
        ProjPoint::new(a.clone(), b2, c2).ok()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "({a}:{b}:{c})")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Points used by default: `b ∈ {0, ±1, ±q, ±q², ±q⁻¹, −q³}`,
/// `c ∈ {0, 1, −1, q}` on the chart `a = 1`, plus four points with `a = 0`.
/// Coincident values are merged.
pub fn default_grid(field: &Field) -> Vec<ProjPoint> {
    let one = field.one();
    let q = field.q().clone();
    let bs = [
        field.zero(),
        one.clone(),
        -&one,
        q.clone(),
        -&q,
        field.q_pow(2),
        -field.q_pow(2),
        field.q_inv(),
        -field.q_inv(),
        -field.q_pow(3),
    ];
    let cs = [field.zero(), one.clone(), -&one, q];
    let mut out: Vec<ProjPoint> = Vec::new();
    let mut push = |p: ProjPoint| {
        if !out.contains(&p) {
            out.push(p);
        }
    };
    for b in &bs {
        for c in &cs {
            push(ProjPoint::new(one.clone(), b.clone(), c.clone()).expect("a = 1"));
        }
    }
    let kind = field.kind();
    for (b, c) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
        push(ProjPoint::from_ints(kind, 0, b, c).expect("non-zero"));
    }
    out
}

/// Every point of the projective plane over a prime field, `None` over the rationals.
pub fn all_points(kind: FieldKind) -> Option<Vec<ProjPoint>> {
    let elems = kind.elements()?;
    let (zero, one) = (kind.zero(), kind.one());
    let mut out = Vec::new();
    for b in &elems {
        for c in &elems {
            out.push(ProjPoint::new(one.clone(), b.clone(), c.clone()).expect("a = 1"));
        }
    }
    for c in &elems {
        out.push(ProjPoint::new(zero.clone(), one.clone(), c.clone()).expect("b = 1"));
    }
    out.push(ProjPoint::new(zero.clone(), zero, one).expect("c = 1"));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(d: &str, q: &str) -> Field {
        Field::parse(d, q).unwrap()
    }

    #[test]
    fn normalization() {
        let f = field("Q", "2");
        let p = ProjPoint::from_ints(f.kind(), 2, 4, 6).unwrap();
        assert_eq!(p.to_string(), "(1:2:3)");
        let p = ProjPoint::from_ints(FieldKind::Prime(5), 0, 3, 0).unwrap();
        assert_eq!(p.to_string(), "(0:1:0)");
        assert_eq!(ProjPoint::from_ints(f.kind(), 0, 0, 0), Err(Error::ZeroPoint));
        assert_eq!(ProjPoint::parse(&f, "1, -2, 1/2").unwrap().to_string(), "(1:-2:1/2)");
        assert!(ProjPoint::parse(&f, "1,2").is_err());
    }

    #[test]
    fn omega_examples() {
        let f = field("Q", "2");
        let p = ProjPoint::from_ints(f.kind(), 1, 1, 2).unwrap();
        let w = p.omega(&f).unwrap();
        assert_eq!(w, ProjPoint::from_ints(f.kind(), 1, 2, -1).unwrap());
        assert_eq!(w.omega_prime(&f).unwrap(), p);
        assert!(ProjPoint::from_ints(f.kind(), 1, -1, 5).unwrap().omega(&f).is_none());
        assert!(ProjPoint::from_ints(f.kind(), 0, 1, 5).unwrap().omega_prime(&f).is_none());
    }

    #[test]
    fn grids() {
        let f = field("Q", "2");
        let g = default_grid(&f);
        assert_eq!(g.len(), 10 * 4 + 4);
        let f2 = field("Fp:2", "1");
        assert!(default_grid(&f2).len() < 44);
        assert_eq!(all_points(FieldKind::Prime(3)).unwrap().len(), 13);
        assert!(all_points(FieldKind::Rationals).is_none());
    }

    proptest! {
        #[test]
        fn omega_round_trips(b in -20i64..20, c in -20i64..20, qn in 1i64..5, qd in 1i64..5) {
            let kind = FieldKind::Rationals;
            let f = Field::new(kind, kind.ratio(qn, qd).unwrap()).unwrap();
            let p = ProjPoint::from_ints(kind, 1, b, c).unwrap();
            if let Some(w) = p.omega(&f) {
                prop_assert_eq!(w.omega_prime(&f).unwrap(), p.clone());
            }
            let w = p.omega_prime(&f).unwrap();
            if let Some(back) = w.omega(&f) {
                prop_assert_eq!(back, p);
            }
        }
    }
}
