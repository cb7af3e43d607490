use serde::Serialize;

use super::{LambdaFamily, ProjPoint};
use crate::algebra::Side;
use crate::error::Result;
use crate::field::{OrderResult, Scalar};

/// A set of integer exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentRange {
    All,
    AtMost(i64),
    AtLeast(i64),
    Set(Vec<i64>),
}

impl ExponentRange {
    fn contains(&self, i: i64) -> bool {
        match self {
            ExponentRange::All => true,
            ExponentRange::AtMost(k) => i <= *k,
            ExponentRange::AtLeast(k) => i >= *k,
            ExponentRange::Set(s) => s.contains(&i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportSource {
    ClosedForm,
    /// Iterates checked up to `depth`; unbounded flags are never claimed.
    Computational { depth: usize },
}

/// The homological properties of `M(p)` (left) or `M′(p)` (right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub point: ProjPoint,
    pub side: Side,
    pub source: ReportSource,
    pub torsionless: bool,
    pub extensionless: bool,
    pub reflexive: bool,
    pub gorenstein_projective: bool,
    pub semi_gp: bool,
    pub inf_torsionfree: bool,
    pub pivotal_semi_gp: bool,
    pub pivotal_inf_tf: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semi_gp_failed_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inf_tf_failed_at: Option<usize>,
}

impl ClassificationReport {
    pub fn flags(&self) -> [(&'static str, bool); 8] {
        [
            ("torsionless", self.torsionless),
            ("extensionless", self.extensionless),
            ("reflexive", self.reflexive),
            ("gorenstein_projective", self.gorenstein_projective),
            ("semi_gp", self.semi_gp),
            ("inf_torsionfree", self.inf_torsionfree),
            ("pivotal_semi_gp", self.pivotal_semi_gp),
            ("pivotal_inf_tf", self.pivotal_inf_tf),
        ]
    }

    /// Names of the flags on which two reports differ.
    pub fn disagreements(&self, other: &ClassificationReport) -> Vec<&'static str> {
        self.flags()
            .iter()
            .zip(other.flags())
            .filter(|(a, b)| a.1 != b.1)
            .map(|(a, _)| a.0)
            .collect()
    }

    /// Gorenstein-projective is semi-GP and ∞-torsionfree; pivotal flags
    /// imply their main flag and the failure of the dual property.
    pub fn is_consistent(&self) -> bool {
        self.gorenstein_projective == (self.semi_gp && self.inf_torsionfree)
            && (!self.pivotal_semi_gp || (self.semi_gp && !self.torsionless))
            && (!self.pivotal_inf_tf || (self.inf_torsionfree && !self.extensionless))
            && (!self.reflexive || self.torsionless)
    }
}

impl LambdaFamily {
    /// Whether `−b = q^i` for some `i` in `range`, decided exactly.
    pub fn minus_is_power(&self, b: &Scalar, range: &ExponentRange) -> bool {
        let Some(i0) = self.field.log_q(&-b) else {
            return false;
        };
        match self.order() {
            OrderResult::Infinite => range.contains(i0),
            OrderResult::Finite(n) => match range {
                ExponentRange::Set(s) => s.iter().any(|i| (i - i0).rem_euclid(n as i64) == 0),
                _ => true,
            },
        }
    }

    /// Evaluates the closed-form classification of `M(p)` or `M′(p)`.
    pub fn classify_closed_form(&self, p: &ProjPoint, side: Side) -> ClassificationReport {
        let f = &self.field;
        let infinite = self.order() == OrderResult::Infinite;
        let (b, c) = (p.b(), p.c());
        let minus = |s: Scalar| -s;
        let power = |r: ExponentRange| self.minus_is_power(b, &r);
        let mut r = ClassificationReport {
            point: p.clone(),
            side,
            source: ReportSource::ClosedForm,
            torsionless: false,
            extensionless: false,
            reflexive: false,
            gorenstein_projective: false,
            semi_gp: false,
            inf_torsionfree: false,
            pivotal_semi_gp: false,
            pivotal_inf_tf: false,
            semi_gp_failed_at: None,
            inf_tf_failed_at: None,
        };
        let minus_one = minus(f.one());
        let minus_q = minus(f.q().clone());
        if !p.is_affine() {
            r.torsionless = match side {
                Side::Left => b.is_zero() || c.is_zero(),
                Side::Right => b.is_zero(),
            };
            return r;
        }
        match side {
            Side::Left => {
                r.torsionless = b != &minus_q;
                r.extensionless = b != &minus_one;
                r.reflexive = b != &minus_q && b != &minus(f.q_pow(2));
                r.semi_gp = !power(ExponentRange::AtMost(0));
                r.inf_torsionfree = !power(ExponentRange::AtLeast(1));
                r.pivotal_semi_gp = infinite && b == &minus_q;
                r.pivotal_inf_tf = infinite && b == &minus_one;
            }
            Side::Right => {
                let c_zero = c.is_zero();
                r.torsionless = b != &minus_one || c_zero;
                r.extensionless = b != &minus_q && !(b == &minus_one && c_zero);
                r.reflexive = b != &minus(f.q_inv()) && b != &minus_one;
                r.semi_gp = if c_zero {
                    !power(ExponentRange::AtLeast(0))
                } else {
                    !power(ExponentRange::AtLeast(1))
                };
                r.inf_torsionfree = !power(ExponentRange::AtMost(0));
                r.pivotal_semi_gp = infinite && b == &minus_one && !c_zero;
                r.pivotal_inf_tf = infinite && b == &minus_q;
            }
        }
        r.gorenstein_projective = r.semi_gp && r.inf_torsionfree;
        r
    }

    /// Builds the module and evaluates every predicate directly, with
    /// iterates checked up to `depth`.
    pub fn classify_computational(
        &self,
        p: &ProjPoint,
        side: Side,
        depth: usize,
    ) -> Result<ClassificationReport> {
        let m = self.module_m(p, side);
        let torsionless = m.is_torsionless()?.value;
        let extensionless = m.is_extensionless()?.value;
        let reflexive = m.is_reflexive()?.value;
        let semi = m.semi_gp_up_to(depth)?;
        let inf = m.inf_tf_up_to(depth)?;
        Ok(ClassificationReport {
            point: p.clone(),
            side,
            source: ReportSource::Computational { depth },
            torsionless,
            extensionless,
            reflexive,
            gorenstein_projective: semi.value && inf.value,
            semi_gp: semi.value,
            inf_torsionfree: inf.value,
            pivotal_semi_gp: semi.value && !torsionless,
            pivotal_inf_tf: inf.value && !extensionless,
            semi_gp_failed_at: semi.witness.and_then(|w| w.failed_at),
            inf_tf_failed_at: inf.witness.and_then(|w| w.failed_at),
        })
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
    fn power_membership() {
        let f = fam("Q", "2");
        let b = |s: &str| f.field().parse_element(s).unwrap();
        assert!(f.minus_is_power(&b("-4"), &ExponentRange::AtLeast(1)));
        assert!(!f.minus_is_power(&b("-4"), &ExponentRange::AtMost(0)));
        assert!(f.minus_is_power(&b("-1/2"), &ExponentRange::AtMost(0)));
        assert!(!f.minus_is_power(&b("4"), &ExponentRange::All));
        assert!(!f.minus_is_power(&b("0"), &ExponentRange::All));
        let f5 = fam("Fp:5", "2");
        // −1 = 4 = 2², and the order is 4, so every unbounded range meets it.
        assert!(f5.minus_is_power(&f5.field().int(1), &ExponentRange::AtLeast(100)));
        assert!(f5.minus_is_power(&f5.field().int(1), &ExponentRange::Set(vec![6])));
        assert!(!f5.minus_is_power(&f5.field().int(1), &ExponentRange::Set(vec![1])));
    }

    #[test]
    fn closed_form_examples() {
        let f = fam("Q", "2");
        let left = |b, c| f.classify_closed_form(&f.point(1, b, c).unwrap(), Side::Left);
        let r = left(-2, 3);
        assert!(r.pivotal_semi_gp && !r.torsionless);
        assert!(left(0, 5).gorenstein_projective);
        assert!(left(1, 0).gorenstein_projective);
        assert!(!left(-4, 0).reflexive);
        let right = f.classify_closed_form(&f.point(1, -1, 1).unwrap(), Side::Right);
        assert!(right.pivotal_semi_gp && !right.inf_torsionfree);
        for p in f.default_grid() {
            for side in [Side::Left, Side::Right] {
                assert!(f.classify_closed_form(&p, side).is_consistent(), "{p} {side}");
            }
        }
    }

    #[test]
    fn computational_examples() {
        let f = fam("Q", "2");
        let r = f.classify_computational(&f.point(1, 1, 0).unwrap(), Side::Left, 6).unwrap();
        assert!(r.torsionless && r.extensionless && r.reflexive);
        let r = f.classify_computational(&f.point(1, -2, 0).unwrap(), Side::Left, 6).unwrap();
        assert!(r.extensionless && !r.torsionless);
        let f5 = fam("Fp:5", "2");
        let r = f5.classify_computational(&f5.point(0, 1, 1).unwrap(), Side::Left, 3).unwrap();
        assert!(!r.torsionless && !r.extensionless);
    }
}
