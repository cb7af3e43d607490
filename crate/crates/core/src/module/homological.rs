use super::{HomSpace, Module, ModuleMap, Quotient, Verdict};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Subspace};

/// `0 → ΩM → Λ^t → M → 0` built from a projective cover.
#[derive(Clone, Debug)]
pub struct SyzygySequence {
    /// `Λ^t → M`.
    pub cover: ModuleMap,
    /// `ΩM → Λ^t`.
    pub inclusion: ModuleMap,
    pub rank: usize,
}

impl SyzygySequence {
    pub fn syzygy(&self) -> &Module {
        self.inclusion.source()
    }
}

/// A minimal left approximation `M → Λ^t` by free modules.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub map: ModuleMap,
    pub rank: usize,
    /// `dim Hom(M, Λ)`, the size of the starting family before pruning.
    pub hom_dim: usize,
}

#[derive(Clone, Debug)]
pub enum TorsionlessWitness {
    /// The minimal approximation, which is injective.
    Embedding(ModuleMap),
    /// Vectors killed by every homomorphism into the regular module.
    Kernel(Subspace),
}

#[derive(Clone, Debug)]
pub enum ReflexiveWitness {
    /// The bijective evaluation map into the double dual.
    Evaluation(ModuleMap),
    NotTorsionless,
    CosyzygyNotTorsionless { cosyzygy_dim: usize },
}

/// Result of a check run for iterates `0..=depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepthWitness {
    pub depth: usize,
    /// First iterate at which the condition fails.
    pub failed_at: Option<usize>,
}

impl Module {
    fn regular_target(&self) -> Module {
        Module::regular(self.algebra())
    }

    /// `Hom(M, Λ)` for the regular module of the same algebra.
    pub fn hom_to_regular(&self) -> Result<HomSpace> {
        HomSpace::new(self, &self.regular_target())
    }

    /// Surjection `Λ^t → M` sending the standard generators to a basis of a
    /// complement of the radical; `t = dim top M`.
    pub fn projective_cover(&self) -> ModuleMap {
        let alg = self.algebra();
        let n = alg.dim();
        let tops = self.radical().complement_indices();
        let t = tops.len();
        let free = Module::free(alg, t);
        let matrix = Matrix::from_fn(self.kind(), self.dim(), t * n, |r, c| {
            let (j, i) = (c / n, c % n);
            self.action(i).get(r, tops[j]).clone()
        });
        ModuleMap::from_parts(free, self.clone(), matrix)
    }

    pub fn syzygy_sequence(&self) -> SyzygySequence {
        let cover = self.projective_cover();
        let rank = cover.source().dim() / self.algebra().dim();
        let kernel = cover.kernel();
        SyzygySequence { cover, inclusion: kernel.inclusion, rank }
    }

    /// `ΩM`, the kernel of the projective cover.
    pub fn syzygy(&self) -> Module {
        self.syzygy_sequence().inclusion.source().clone()
    }

    /// `M, ΩM, …, Ω^depth M`.
    pub fn syzygy_iterates(&self, depth: usize) -> Vec<Module> {
        let mut out = vec![self.clone()];
        for _ in 0..depth {
            let next = out.last().expect("non-empty").syzygy();
            out.push(next);
        }
        out
    }

    /// Prunes the full family `Hom(M, Λ)` to a minimal approximation by
    /// deleting members in ascending order while the rest still generate
    /// `Hom(M, Λ)` as a module over the endomorphisms of `Λ`.
    pub fn left_approximation_minimal(&self) -> Result<Approximation> {
        Ok(self.approximation_from(&self.hom_to_regular()?))
    }

    fn approximation_from(&self, homs: &HomSpace) -> Approximation {
        let alg = self.algebra();
        let n = alg.dim();
        let s = homs.dim();
        let generated = |members: &[usize]| -> usize {
            let mut rows = Vec::with_capacity(members.len() * n);
            for &j in members {
                let h = homs.basis()[j].matrix();
                for k in 0..n {
                    rows.push((alg.right_mult(k) * h).entries().to_vec());
                }
            }
            Matrix::from_rows(self.kind(), n * self.dim(), &rows).rank()
        };
        let mut keep: Vec<usize> = (0..s).collect();
        for i in 0..s {
            let trial: Vec<usize> = keep.iter().copied().filter(|&j| j != i).collect();
            if generated(&trial) == s {
                keep = trial;
            }
        }
        let t = keep.len();
        let parts: Vec<&Matrix> = keep.iter().map(|&j| homs.basis()[j].matrix()).collect();
        let matrix = Matrix::vstack(self.kind(), self.dim(), &parts);
        let map = ModuleMap::from_parts(self.clone(), Module::free(alg, t), matrix);
        Approximation { map, rank: t, hom_dim: s }
    }

    /// `℧M`, the cokernel of the minimal left approximation.
    pub fn cosyzygy(&self) -> Result<Quotient> {
        Ok(self.left_approximation_minimal()?.map.cokernel())
    }

    /// `M, ℧M, …, ℧^depth M`.
    pub fn cosyzygy_iterates(&self, depth: usize) -> Result<Vec<Module>> {
        let mut out = vec![self.clone()];
        for _ in 0..depth {
            let next = out.last().expect("non-empty").cosyzygy()?.module;
            out.push(next);
        }
        Ok(out)
    }

    /// Torsionless iff the kernels of all maps into `Λ` meet in zero;
    /// cross-checked against injectivity of the minimal approximation.
    pub fn is_torsionless(&self) -> Result<Verdict<TorsionlessWitness>> {
        let homs = self.hom_to_regular()?;
        self.torsionless_from(&homs)
    }

    fn torsionless_from(&self, homs: &HomSpace) -> Result<Verdict<TorsionlessWitness>> {
        let parts: Vec<&Matrix> = homs.basis().iter().map(ModuleMap::matrix).collect();
        let stacked = Matrix::vstack(self.kind(), self.dim(), &parts);
        let common = if self.dim() == 0 {
            Subspace::zero(self.kind(), 0)
        } else {
            Subspace::kernel(&stacked)
        };
        let approx = self.approximation_from(homs);
        if common.is_zero() != approx.map.is_injective() {
            return Err(Error::RouteMismatch(
                "kernel intersection and approximation injectivity disagree".into(),
            ));
        }
        Ok(if common.is_zero() {
            Verdict::yes(TorsionlessWitness::Embedding(approx.map))
        } else {
            Verdict::no(TorsionlessWitness::Kernel(common))
        })
    }

    /// `dim Ext¹(M, Λ)`: homomorphisms `ΩM → Λ` modulo those extending to the cover.
    pub fn ext1_dim(&self) -> Result<usize> {
        let seq = self.syzygy_sequence();
        let omega = seq.syzygy();
        if omega.is_zero() {
            return Ok(0);
        }
        let alg = self.algebra();
        let n = alg.dim();
        let homs = omega.hom_to_regular()?;
        let iota = seq.inclusion.matrix();
        let mut rows = Vec::with_capacity(seq.rank * n);
        for j in 0..seq.rank {
            let component = iota.block(j * n, 0, n, omega.dim());
            for k in 0..n {
                rows.push((alg.right_mult(k) * &component).entries().to_vec());
            }
        }
        let extendable = Matrix::from_rows(self.kind(), n * omega.dim(), &rows).rank();
        Ok(homs.dim() - extendable)
    }

    /// `dim Ext^i(M, Λ) = dim Ext¹(Ω^{i−1}M, Λ)` for `i ≥ 1`.
    pub fn ext_dim(&self, i: usize) -> Result<usize> {
        if i == 0 {
            return Err(Error::Precondition("Ext index must be at least 1".into()));
        }
        let mut m = self.clone();
        for _ in 1..i {
            m = m.syzygy();
        }
        m.ext1_dim()
    }

    /// `Ext¹(M, Λ) = 0`; the witness is the Ext dimension.
    pub fn is_extensionless(&self) -> Result<Verdict<usize>> {
        let e = self.ext1_dim()?;
        Ok(Verdict { value: e == 0, witness: Some(e) })
    }

    /// Reflexive iff `M` and `℧M` are torsionless; cross-checked against
    /// bijectivity of the evaluation map `M → M**`.
    pub fn is_reflexive(&self) -> Result<Verdict<ReflexiveWitness>> {
        let homs = self.hom_to_regular()?;
        let tf = self.torsionless_from(&homs)?;
        let cosyzygy = self.approximation_from(&homs).map.cokernel().module;
        let primary = tf.value && cosyzygy.is_torsionless()?.value;
        let ev = self.evaluation_map()?;
        if primary != ev.is_isomorphism() {
            return Err(Error::RouteMismatch(
                "cosyzygy criterion and evaluation map disagree on reflexivity".into(),
            ));
        }
        Ok(if primary {
            Verdict::yes(ReflexiveWitness::Evaluation(ev))
        } else if !tf.value {
            Verdict::no(ReflexiveWitness::NotTorsionless)
        } else {
            Verdict::no(ReflexiveWitness::CosyzygyNotTorsionless { cosyzygy_dim: cosyzygy.dim() })
        })
    }

    /// `Ω^t M` extensionless for `t = 0..=depth`.
    pub fn semi_gp_up_to(&self, depth: usize) -> Result<Verdict<DepthWitness>> {
        let mut m = self.clone();
        for t in 0..=depth {
            if m.is_zero() {
                break;
            }
            if m.ext1_dim()? != 0 {
                return Ok(Verdict::no(DepthWitness { depth, failed_at: Some(t) }));
            }
            m = m.syzygy();
        }
        Ok(Verdict::yes(DepthWitness { depth, failed_at: None }))
    }

    /// `℧^t M` reflexive for `t = 0..=depth`, i.e. `℧^t M` torsionless for `t = 0..=depth+1`.
    pub fn inf_tf_up_to(&self, depth: usize) -> Result<Verdict<DepthWitness>> {
        let mut m = self.clone();
        for t in 0..=depth + 1 {
            if m.is_zero() {
                break;
            }
            let homs = m.hom_to_regular()?;
            if !m.torsionless_from(&homs)?.value {
                let failed = t.saturating_sub(1);
                return Ok(Verdict::no(DepthWitness { depth, failed_at: Some(failed) }));
            }
            m = m.approximation_from(&homs).map.cokernel().module;
        }
        Ok(Verdict::yes(DepthWitness { depth, failed_at: None }))
    }
}
