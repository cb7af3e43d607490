use super::{Module, ModuleMap, Verdict};
use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::matrix::Matrix;

/// Largest number of evaluation points a finite-field isomorphism scan may use.
pub const ISO_SCAN_BUDGET: u128 = 1_000_000;

/// `Hom(M, N)` as the solution space of the intertwining equations.
///
/// Basis maps are the kernel columns of the equation system with unknowns
/// `F[r][c]` at index `r * dim M + c`; each basis map has a single `1` among
/// the free unknowns, so coordinates can be read off directly.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Module,
    target: Module,
    basis: Vec<ModuleMap>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn new(source: &Module, target: &Module) -> Result<HomSpace> {
        source.require_same_algebra(target)?;
        let kind = source.kind();
        let (m, n) = (source.dim(), target.dim());
        let unknowns = m * n;
        if unknowns == 0 {
            return Ok(HomSpace {
                source: source.clone(),
                target: target.clone(),
                basis: Vec::new(),
                free: Vec::new(),
            });
        }
        let gens = source.algebra().generators().to_vec();
        let mut system = Matrix::zeros(kind, gens.len() * unknowns, unknowns);
        for (gi, &g) in gens.iter().enumerate() {
            let a = source.action(g);
            let b = target.action(g);
            // Row for entry (r, c) of F·A − B·F.
            for r in 0..n {
                for c in 0..m {
                    let row = gi * unknowns + r * m + c;
                    for k in 0..m {
                        let v = a.get(k, c);
                        if !v.is_zero() {
                            let idx = r * m + k;
                            let cur = system.get(row, idx).clone();
                            system.set(row, idx, &cur + v);
                        }
                    }
                    for k in 0..n {
                        let v = b.get(r, k);
                        if !v.is_zero() {
                            let idx = k * m + c;
                            let cur = system.get(row, idx).clone();
                            system.set(row, idx, &cur - v);
                        }
                    }
                }
            }
        }
        let rref = system.rref();
        let free: Vec<usize> = (0..unknowns).filter(|c| !rref.pivots.contains(c)).collect();
        let kernel = system.kernel_basis();
        let basis = (0..kernel.cols())
            .map(|j| {
                let f = Matrix::from_fn(kind, n, m, |r, c| kernel.get(r * m + c, j).clone());
                ModuleMap::from_parts(source.clone(), target.clone(), f)
            })
            .collect();
        Ok(HomSpace { source: source.clone(), target: target.clone(), basis, free })
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleMap] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<ModuleMap> {
        self.basis
    }

    /// Coordinates of a homomorphism in the basis, or `None` if the matrix is not one.
    pub fn coordinates(&self, f: &Matrix) -> Option<Vec<Scalar>> {
        let m = self.source.dim();
        let coords: Vec<Scalar> = self
            .free
            .iter()
            .map(|&idx| f.get(idx / m, idx % m).clone())
            .collect();
        (&self.combine(&coords) == f).then_some(coords)
    }

    /// `Σ cᵢ hᵢ` as a matrix.
    pub fn combine(&self, coeffs: &[Scalar]) -> Matrix {
        let kind = self.source.kind();
        let mut out = Matrix::zeros(kind, self.target.dim(), self.source.dim());
        for (h, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                out = &out + &h.matrix().scale(c);
            }
        }
        out
    }

    pub fn combine_map(&self, coeffs: &[Scalar]) -> ModuleMap {
        ModuleMap::from_parts(self.source.clone(), self.target.clone(), self.combine(coeffs))
    }
}

/// Certificate attached to an isomorphism verdict.
#[derive(Clone, Debug)]
pub enum IsoWitness {
    /// An invertible intertwiner.
    Isomorphism(ModuleMap),
    DimensionsDiffer { source: usize, target: usize },
    TopsDiffer { source: usize, target: usize },
    /// No homomorphism induces an invertible map on tops: the determinant of
    /// the induced top map vanishes on a hitting set for its degree.
    TopDeterminantVanishes { variables: usize, points: usize },
}

impl Module {
    /// Basis of `Hom(self, other)` in kernel-column order.
    pub fn hom_basis(&self, other: &Module) -> Result<Vec<ModuleMap>> {
        Ok(HomSpace::new(self, other)?.into_basis())
    }

    /// Decides `self ≅ other`; every answer carries a certificate.
    ///
    /// A homomorphism between modules of equal dimension over a local algebra
    /// is an isomorphism iff it induces an invertible map on tops. The top
    /// determinant is a polynomial of degree `dim top` in the coefficients of
    /// a generic homomorphism; it is evaluated on a simplex grid (unisolvent
    /// for that degree) when the characteristic exceeds the degree, and on
    /// every point of the coefficient space otherwise.
    pub fn is_isomorphic(&self, other: &Module) -> Result<Verdict<IsoWitness>> {
        self.is_isomorphic_within(other, ISO_SCAN_BUDGET)
    }

    pub fn is_isomorphic_within(&self, other: &Module, budget: u128) -> Result<Verdict<IsoWitness>> {
        self.require_same_algebra(other)?;
        if self.dim() != other.dim() {
            return Ok(Verdict::no(IsoWitness::DimensionsDiffer {
                source: self.dim(),
                target: other.dim(),
            }));
        }
        let top_s = self.top();
        let top_t = other.top();
        let d = top_s.module.dim();
        if d != top_t.module.dim() {
            return Ok(Verdict::no(IsoWitness::TopsDiffer { source: d, target: top_t.module.dim() }));
        }
        if self.dim() == 0 {
            return Ok(Verdict::yes(IsoWitness::Isomorphism(ModuleMap::identity(self))));
        }
        let kind = self.kind();
        let homs = HomSpace::new(self, other)?;
        // Induced maps on tops, as vectors; keep an independent subset.
        let sections: Vec<usize> = top_s.kernel.complement_indices();
        let tops: Vec<Matrix> = homs
            .basis()
            .iter()
            .map(|h| (top_t.projection.matrix() * h.matrix()).select_cols(&sections))
            .collect();
        let stacked = Matrix::from_fn(kind, d * d, tops.len(), |i, j| tops[j].get(i / d, i % d).clone());
        let chosen = stacked.rref().pivots;
        let r = chosen.len();
        if r == 0 {
            return Ok(Verdict::no(IsoWitness::TopDeterminantVanishes { variables: 0, points: 0 }));
        }
        let points = evaluation_points(kind, r, d, budget)?;
        let count = points.len();
        for mu in points {
            let mut t = Matrix::zeros(kind, d, d);
            for (c, &j) in mu.iter().zip(&chosen) {
                if !c.is_zero() {
                    t = &t + &tops[j].scale(c);
                }
            }
            if t.det().is_zero() {
                continue;
            }
            let mut coeffs = vec![kind.zero(); homs.dim()];
            for (c, &j) in mu.iter().zip(&chosen) {
                coeffs[j] = c.clone();
            }
            let h = homs.combine_map(&coeffs);
            if !h.is_isomorphism() || !h.intertwines() {
                return Err(Error::RouteMismatch(
                    "top map invertible but homomorphism is not an isomorphism".into(),
                ));
            }
            return Ok(Verdict::yes(IsoWitness::Isomorphism(h)));
        }
        Ok(Verdict::no(IsoWitness::TopDeterminantVanishes { variables: r, points: count }))
    }

    /// Whether `self` is isomorphic to the direct sum of `parts`.
    pub fn is_direct_sum_of(&self, parts: &[Module]) -> Result<Verdict<IsoWitness>> {
        for p in parts {
            self.require_same_algebra(p)?;
        }
        let sum = Module::direct_sum(self.algebra(), parts);
        self.is_isomorphic(&sum)
    }
}

/// Points at which a polynomial of total degree `≤ degree` in `vars`
/// variables cannot vanish identically without being zero as a function on
/// the whole coefficient space.
fn evaluation_points(kind: FieldKind, vars: usize, degree: usize, budget: u128) -> Result<Vec<Vec<Scalar>>> {
    let p = kind.characteristic();
    if p == 0 || p as usize > degree {
        let mut out = Vec::new();
        let mut cur = vec![0usize; vars];
        simplex(&mut cur, 0, degree, &mut |mu| {
            out.push(mu.iter().map(|&m| kind.from_i64(m as i64)).collect());
        });
        return Ok(out);
    }
    let needed = (p as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Undecided(format!(
            "isomorphism scan needs {needed} points over {kind}, budget is {budget}"
        )));
    }
    let elems = kind.elements().expect("finite field");
    let mut out = Vec::with_capacity(needed as usize);
    for mut code in 0..needed as u64 {
        let mut mu = Vec::with_capacity(vars);
        for _ in 0..vars {
            mu.push(elems[(code % p) as usize].clone());
            code /= p;
        }
        out.push(mu);
    }
    Ok(out)
}

/// Visits all `μ ∈ ℕ^len` with `Σμ ≤ remaining`, in lexicographic order.
fn simplex(cur: &mut Vec<usize>, pos: usize, remaining: usize, visit: &mut impl FnMut(&[usize])) {
    if pos == cur.len() {
        visit(cur);
        return;
    }
    for v in 0..=remaining {
        cur[pos] = v;
        simplex(cur, pos + 1, remaining - v, visit);
    }
    cur[pos] = 0;
}
