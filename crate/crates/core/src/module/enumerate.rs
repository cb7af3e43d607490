use itertools::Itertools;

use super::{Module, Submodule};
use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::matrix::Subspace;

/// Default cap on the number of subspaces an exhaustive scan may visit.
pub const DEFAULT_SCAN_BUDGET: u128 = 1_000_000;

/// Number of `d`-dimensional subspaces of `𝔽_p^n`, saturating on overflow.
pub fn grassmannian_size(p: u64, n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        let a = p.checked_pow((n - i) as u32).map(|v| v - 1);
        let b = p.pow((i + 1) as u32) - 1;
        match a.and_then(|a| num.checked_mul(a)) {
            Some(v) => num = v,
            None => return u128::MAX,
        }
        den *= b;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Module {
    /// All `d`-dimensional submodules, by scanning reduced echelon
    /// representatives of every `d`-dimensional subspace.
    pub fn enumerate_submodules(&self, d: usize, budget: u128) -> Result<Vec<Submodule>> {
        let FieldKind::Prime(p) = self.kind() else {
            return Err(Error::NotFiniteField);
        };
        let n = self.dim();
        let needed = grassmannian_size(p, n, d);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let kind = self.kind();
        let elems = kind.elements().expect("finite field");
        let mut out = Vec::new();
        for pivots in (0..n).combinations(d) {
            let free: Vec<(usize, usize)> = (0..d)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let combos = (p as u128).pow(free.len() as u32);
            for mut code in 0..combos {
                let mut rows = vec![vec![kind.zero(); n]; d];
                for (r, &c) in pivots.iter().enumerate() {
                    rows[r][c] = kind.one();
                }
                for &(r, c) in &free {
                    rows[r][c] = elems[(code % p as u128) as usize].clone();
                    code /= p as u128;
                }
                let s = Subspace::span(kind, n, &rows);
                if self.is_submodule(&s) {
                    out.push(self.restrict_unchecked(&s));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Side};
    use crate::field::Field;
    use std::sync::Arc;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(grassmannian_size(2, 4, 2), 35);
        assert_eq!(grassmannian_size(3, 6, 3), 33880);
        assert_eq!(grassmannian_size(3, 6, 2), 11011);
        assert_eq!(grassmannian_size(5, 6, 0), 1);
    }

    #[test]
    fn socle_is_the_only_two_dimensional_semisimple_ideal_over_f2() {
        let a = Arc::new(Algebra::lambda(&Field::parse("Fp:2", "1").unwrap()));
        let reg = Module::regular(&a);
        let subs = reg.enumerate_submodules(2, DEFAULT_SCAN_BUDGET).unwrap();
        let soc = a.socle(Side::Left);
        assert!(subs.iter().any(|s| s.subspace == soc));
        assert!(subs.iter().all(|s| s.module.loewy_length() <= 2));
        let zero = reg.enumerate_submodules(0, DEFAULT_SCAN_BUDGET).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].module.dim(), 0);
    }

    #[test]
    fn rejects_rationals_and_large_scans() {
        let a = Arc::new(Algebra::lambda(&Field::parse("Q", "2").unwrap()));
        assert_eq!(Module::regular(&a).enumerate_submodules(1, 10).unwrap_err(), Error::NotFiniteField);
        let b = Arc::new(Algebra::lambda(&Field::parse("Fp:5", "2").unwrap()));
        assert!(matches!(
            Module::regular(&b).enumerate_submodules(3, DEFAULT_SCAN_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
