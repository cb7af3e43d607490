//! The verification suite: twelve exact checks run against one `(field, q)`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{basis, Side};
use crate::error::{Error, Result};
use crate::family::{
    all_points, appendix_row, module_name, Category, ChainKind, ComponentShape, LambdaFamily,
    ProjPoint,
};
use crate::field::{FieldKind, OrderResult, Scalar};
use crate::module::{Module, DEFAULT_SCAN_BUDGET};

/// Identifiers of the checks, in execution order.
pub const CHECK_IDS: [u8; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

/// Short name and topic of a check.
pub fn check_info(id: u8) -> Option<(&'static str, &'static str)> {
    Some(match id {
        1 => ("algebra-integrity", "defining relations, associativity, socle and radical cube"),
        2 => ("annihilator-formulae", "the four products that vanish in Λ(q)"),
        3 => ("transform-round-trips", "ω and ω′ are mutually inverse"),
        4 => ("syzygy-tables", "Ω of M(p) and M′(p) against the case tables"),
        5 => ("left-classification", "closed form against computation for M(p)"),
        6 => ("right-classification", "closed form against computation for M′(p)"),
        7 => ("special-cosyzygies", "minimal approximations of M(0:1:0) and M(0:0:1)"),
        8 => ("duality", "Λ-duals, transposes and duals of semi-GP modules"),
        9 => ("quiver-shapes", "components of the Ω℧-quiver"),
        10 => ("exhaustive-ideals", "full scan of the one-sided ideals over a small field"),
        11 => ("three-dimensional-iterates", "iterates of semi-GP and ∞-torsionfree modules stay local"),
        12 => ("appendix-rows", "the row of each module from xM, yM, zM"),
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecided,
    Skipped,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Undecided => "UNDECIDED",
            CheckStatus::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: u8,
    pub name: &'static str,
    pub topic: &'static str,
    pub status: CheckStatus,
    pub details: Vec<String>,
    /// Command line reproducing a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub field: String,
    pub q: String,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn is_success(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn record(&self, id: u8) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Depth of the bounded semi-GP and ∞-torsionfree checks.
    pub depth: usize,
    /// Largest number of subspaces an exhaustive scan may visit.
    pub budget: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { depth: 6, budget: DEFAULT_SCAN_BUDGET }
    }
}

#[derive(Default)]
struct Log {
    failures: Vec<String>,
    notes: Vec<String>,
    skipped: bool,
}

impl Log {
    fn ensure(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    fn extend(&mut self, failures: Vec<String>) {
        self.failures.extend(failures);
    }
}

/// Runs `f` on every point in parallel and gathers failure messages in point order.
fn per_point<F>(points: &[ProjPoint], f: F) -> Result<Vec<String>>
where
    F: Fn(&ProjPoint) -> Result<Vec<String>> + Sync + Send,
{
    let results: Vec<Result<Vec<String>>> = points.par_iter().map(f).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn iso(a: &Module, b: &Module) -> Result<bool> {
    Ok(a.is_isomorphic(b)?.value)
}

fn affine(points: &[ProjPoint]) -> Vec<ProjPoint> {
    points.iter().filter(|p| p.is_affine()).cloned().collect()
}

fn add(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn scale(s: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|a| s * a).collect()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Values of `c` used on the default grid.
fn grid_cs(fam: &LambdaFamily) -> Vec<Scalar> {
    let f = fam.field();
    let mut out: Vec<Scalar> = Vec::new();
    for c in [f.zero(), f.one(), -f.one(), f.q().clone()] {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

impl LambdaFamily {
    /// Runs the given checks (all when `checks` is empty).
    pub fn verify(&self, checks: &[u8], options: VerifyOptions) -> Result<VerifyReport> {
        let ids: Vec<u8> = if checks.is_empty() { CHECK_IDS.to_vec() } else { checks.to_vec() };
        if let Some(bad) = ids.iter().find(|id| check_info(**id).is_none()) {
            return Err(Error::Precondition(format!("no check with id {bad}")));
        }
        let records: Vec<CheckRecord> = ids.par_iter().map(|&id| self.run_check(id, options)).collect();
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                CheckStatus::Pass => summary.pass += 1,
                CheckStatus::Fail => summary.fail += 1,
                CheckStatus::Undecided => summary.undecided += 1,
                CheckStatus::Skipped => summary.skipped += 1,
            }
        }
        Ok(VerifyReport {
            schema: 1,
            field: self.field().kind().to_string(),
            q: self.field().q().to_string(),
            records,
            summary,
        })
    }

    fn run_check(&self, id: u8, options: VerifyOptions) -> CheckRecord {
        let (name, topic) = check_info(id).expect("known id");
        let mut log = Log::default();
        let outcome = match id {
            1 => self.check_algebra(&mut log),
            2 => self.check_annihilators(&mut log),
            3 => self.check_round_trips(&mut log),
            4 => self.check_syzygies(&mut log),
            5 => self.check_classification(Side::Left, options.depth, &mut log),
            6 => self.check_classification(Side::Right, options.depth, &mut log),
            7 => self.check_special_cosyzygies(&mut log),
            8 => self.check_duality(options.depth, &mut log),
            9 => self.check_quivers(&mut log),
            10 => self.check_exhaustive(options.budget, &mut log),
            11 => self.check_local_iterates(options.depth, &mut log),
            _ => self.check_appendix(&mut log),
        };
        let status = match outcome {
            Err(e @ (Error::Undecided(_) | Error::BudgetExceeded { .. })) => {
                log.note(e.to_string());
                CheckStatus::Undecided
            }
            Err(e) => {
                log.failures.push(format!("error: {e}"));
                CheckStatus::Fail
            }
            Ok(()) if !log.failures.is_empty() => CheckStatus::Fail,
            Ok(()) if log.skipped => CheckStatus::Skipped,
            Ok(()) => CheckStatus::Pass,
        };
        let repro = (status == CheckStatus::Fail).then(|| {
            format!(
                "lambdaq --field {} --q {} --depth {} verify --check {id}",
                self.field().kind(),
                self.field().q(),
                options.depth
            )
        });
        let mut details = log.failures;
        details.extend(log.notes);
        CheckRecord { id, name, topic, status, details, repro }
    }

    fn check_algebra(&self, log: &mut Log) -> Result<()> {
        let alg = self.algebra(Side::Left);
        let f = self.field();
        let e = |i: usize| alg.basis_vector(i);
        let mul = |u: &[Scalar], v: &[Scalar]| alg.multiply(u, v);
        let (x, y, z) = (e(basis::X), e(basis::Y), e(basis::Z));
        let relations = [
            ("x²", mul(&x, &x)),
            ("y²", mul(&y, &y)),
            ("z²", mul(&z, &z)),
            ("yz", mul(&y, &z)),
            ("xy+q·yx", add(&mul(&x, &y), &scale(f.q(), &mul(&y, &x)))),
            ("xz−zx", add(&mul(&x, &z), &scale(&-f.one(), &mul(&z, &x)))),
            ("zy−zx", add(&mul(&z, &y), &scale(&-f.one(), &mul(&z, &x)))),
        ];
        for (name, value) in &relations {
            log.ensure(is_zero(value), || format!("relation {name} does not vanish"));
        }
        let n = alg.dim();
        let mut triples = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = mul(&mul(&e(i), &e(j)), &e(k));
                    let right = mul(&e(i), &mul(&e(j), &e(k)));
                    log.ensure(left == right, || format!("associativity fails on ({i},{j},{k})"));
                    triples += 1;
                }
            }
        }
        let rad = alg.radical_indices();
        for &i in &rad {
            for &j in &rad {
                for &k in &rad {
                    let w = mul(&mul(&e(i), &e(j)), &e(k));
                    log.ensure(is_zero(&w), || format!("radical cube is non-zero on ({i},{j},{k})"));
                }
            }
        }
        for side in [Side::Left, Side::Right] {
            let soc = alg.socle(side).dim();
            log.ensure(soc == 2, || format!("{side} socle has dimension {soc}"));
        }
        let dims = alg.radical_series().dims();
        log.ensure(dims == [6, 5, 2, 0], || format!("radical series dims {dims:?}"));
        log.note(format!("{triples} basis triples associative"));
        Ok(())
    }

    fn check_annihilators(&self, log: &mut Log) -> Result<()> {
        let alg = self.algebra(Side::Left);
        let f = self.field();
        let lin = |a: &Scalar, b: &Scalar, c: &Scalar| {
            let mut v = vec![f.zero(); 6];
            v[basis::X] = a.clone();
            v[basis::Y] = b.clone();
            v[basis::Z] = c.clone();
            v
        };
        let mut products = [0usize; 4];
        for p in self.default_grid() {
            let (a, b, c) = (p.a(), p.b(), p.c());
            let target = lin(a, b, c);
            let s = a + b;
            if !s.is_zero() {
                let u = lin(a, &(f.q() * b), &-(&(a * c) / &s));
                log.ensure(is_zero(&alg.multiply(&u, &target)), || format!("first product at {p}"));
                products[0] += 1;
            }
            let w = alg.multiply(&lin(&f.zero(), &f.zero(), &f.one()), &lin(a, &-a, c));
            log.ensure(is_zero(&w), || format!("second product at {p}"));
            products[1] += 1;
            if !a.is_zero() {
                let b2 = &f.q_inv() * b;
                let c2 = -(&(&(a + &b2) * c) / a);
                let v = lin(a, &b2, &c2);
                log.ensure(is_zero(&alg.multiply(&target, &v)), || format!("third product at {p}"));
                products[2] += 1;
            }
            let w = alg.multiply(&lin(&f.zero(), b, c), &lin(&f.zero(), &f.zero(), &f.one()));
            log.ensure(is_zero(&w), || format!("fourth product at {p}"));
            products[3] += 1;
        }
        log.note(format!("products evaluated: {products:?}"));
        Ok(())
    }

    fn check_round_trips(&self, log: &mut Log) -> Result<()> {
        const WANTED: usize = 100;
        let f = self.field();
        let omega_valid = |p: &ProjPoint| !p.a().is_zero() && !(p.a() + p.b()).is_zero();
        let prime_valid =
            |p: &ProjPoint| !p.a().is_zero() && !(p.a() + &(&f.q_inv() * p.b())).is_zero();
        let (points, exhaustive) = match all_points(f.kind()) {
            Some(all) if all.iter().filter(|p| omega_valid(p)).count() < WANTED => (all, true),
            _ => (self.sample_points(WANTED, &omega_valid, &prime_valid)?, false),
        };
        let (mut n_omega, mut n_prime) = (0, 0);
        for p in &points {
            if omega_valid(p) {
                n_omega += 1;
                let back = p.omega(f).and_then(|w| w.omega_prime(f));
                log.ensure(back.as_ref() == Some(p), || format!("ω′∘ω fails at {p}"));
            }
            if prime_valid(p) {
                n_prime += 1;
                let back = p.omega_prime(f).and_then(|w| w.omega(f));
                log.ensure(back.as_ref() == Some(p), || format!("ω∘ω′ fails at {p}"));
            }
        }
        if !exhaustive {
            log.ensure(n_omega >= WANTED && n_prime >= WANTED, || {
                format!("only {n_omega} and {n_prime} valid samples")
            });
        }
        let how = if exhaustive { "exhaustive" } else { "sampled" };
        log.note(format!("{how}: ω′∘ω on {n_omega} points, ω∘ω′ on {n_prime} points"));
        Ok(())
    }

    /// Deterministic random points until both predicates have `wanted` hits.
    fn sample_points(
        &self,
        wanted: usize,
        first: &dyn Fn(&ProjPoint) -> bool,
        second: &dyn Fn(&ProjPoint) -> bool,
    ) -> Result<Vec<ProjPoint>> {
        let kind = self.field().kind();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a3b);
        let random = |rng: &mut ChaCha8Rng| -> Scalar {
            let num = rng.gen_range(-60i64..=60);
            let den = rng.gen_range(1i64..=12);
            kind.ratio(num, den).expect("non-zero denominator")
        };
        let (mut n1, mut n2) = (0, 0);
        let mut out = Vec::new();
        for _ in 0..100_000 {
            if n1 >= wanted && n2 >= wanted {
                break;
            }
            let (a, b, c) = (random(&mut rng), random(&mut rng), random(&mut rng));
            let Ok(p) = ProjPoint::new(a, b, c) else { continue };
            n1 += usize::from(first(&p));
            n2 += usize::from(second(&p));
            out.push(p);
        }
        Ok(out)
    }

    fn check_syzygies(&self, log: &mut Log) -> Result<()> {
        let grid = self.default_grid();
        for (side, cases) in [(Side::Left, 5u8), (Side::Right, 4u8)] {
            let hit = std::sync::Mutex::new(BTreeSet::new());
            let failures = per_point(&grid, |p| {
                let mut out = Vec::new();
                let fc = self.syzygy_formula(p, side);
                hit.lock().expect("lock").insert(fc.case);
                let omega = self.module_m(p, side).syzygy();
                let expected = self.realize(&fc.descriptor);
                if !iso(&omega, &expected)? {
                    out.push(format!("Ω{}{p} is not {} (case {})", module_name(side), fc.descriptor, fc.case));
                }
                if let Some(parts) = self.realize_summands(&fc.descriptor) {
                    if !expected.is_direct_sum_of(&parts)?.value {
                        out.push(format!("{} does not split as stated", fc.descriptor));
                    }
                }
                Ok(out)
            })?;
            log.extend(failures);
            let hit = hit.into_inner().expect("lock");
            log.ensure(hit.len() == cases as usize, || format!("{side} cases hit: {hit:?}"));
            log.note(format!("{side}: {} points, cases {hit:?}", grid.len()));
        }
        Ok(())
    }

    fn check_classification(&self, side: Side, depth: usize, log: &mut Log) -> Result<()> {
        let grid = self.default_grid();
        let failures = per_point(&grid, |p| {
            let closed = self.classify_closed_form(p, side);
            let comp = self.classify_computational(p, side, depth)?;
            let diff = closed.disagreements(&comp);
            let mut out = Vec::new();
            if !diff.is_empty() {
                out.push(format!("{}{p}: closed form and computation differ on {diff:?}", module_name(side)));
            }
            if !closed.is_consistent() {
                out.push(format!("{}{p}: closed-form flags are inconsistent", module_name(side)));
            }
            Ok(out)
        })?;
        log.extend(failures);
        log.note(format!("{} points at depth {depth}", grid.len()));
        if side == Side::Right && self.order() == OrderResult::Infinite {
            for c in grid_cs(self).into_iter().filter(|c| !c.is_zero()) {
                let p = ProjPoint::new(self.field().one(), -self.field().one(), c)?;
                let closed = self.classify_closed_form(&p, side);
                let comp = self.classify_computational(&p, side, depth)?;
                for r in [&closed, &comp] {
                    log.ensure(r.semi_gp && !r.inf_torsionfree, || {
                        format!("M'{p} should be semi-GP but not ∞-torsionfree ({:?})", r.source)
                    });
                }
            }
            log.note("special branch M'(1:-1:c), c ≠ 0, checked");
        }
        Ok(())
    }

    fn check_special_cosyzygies(&self, log: &mut Log) -> Result<()> {
        let n = self.algebra(Side::Left).dim();
        for p in [self.point(0, 1, 0)?, self.point(0, 0, 1)?] {
            let m = self.module_m(&p, Side::Left);
            let approx = m.left_approximation_minimal()?;
            let t = approx.rank;
            let dual = m.dual()?;
            // A minimal approximation uses one copy of Λ per generator of the dual.
            let t_oracle = dual.top_dim();
            log.ensure(t >= 2, || format!("M{p}: approximation rank {t} < 2"));
            log.ensure(t == t_oracle, || format!("M{p}: rank {t}, dual needs {t_oracle} generators"));
            log.ensure(approx.hom_dim == dual.dim(), || format!("M{p}: Hom dimension bookkeeping"));
            log.ensure(approx.map.is_injective(), || format!("M{p}: approximation not injective"));
            let co = approx.map.cokernel().module;
            log.ensure(co.dim() + m.dim() == n * t, || {
                format!("M{p}: dim ℧M = {} ≠ 6·{t} − 3", co.dim())
            });
            let ll = co.loewy_length();
            log.ensure(ll == 3, || format!("M{p}: ℧M has Loewy length {ll}"));
            log.ensure(!co.is_torsionless()?.value, || format!("M{p}: ℧M is torsionless"));
            log.note(format!("M{p}: t = {t}, dim ℧M = {}, Loewy length {ll}", co.dim()));
        }
        Ok(())
    }

    fn check_duality(&self, depth: usize, log: &mut Log) -> Result<()> {
        let f = self.field();
        let chart = affine(&self.default_grid());
        let infinite = self.order() == OrderResult::Infinite;

        let failures = per_point(&chart, |p| {
            let fc = self.dual_formula(p, Side::Left)?;
            let dual = self.module_m(p, Side::Left).dual()?;
            Ok(if iso(&dual, &self.realize(&fc.descriptor))? {
                Vec::new()
            } else {
                vec![format!("M{p}* is not {}", fc.descriptor)]
            })
        })?;
        log.extend(failures);

        let hit = std::sync::Mutex::new(BTreeSet::new());
        let failures = per_point(&chart, |p| {
            let mut out = Vec::new();
            let fc = self.dual_formula(p, Side::Right)?;
            hit.lock().expect("lock").insert(fc.case);
            let dual = self.module_m(p, Side::Right).dual()?;
            let expected = self.realize(&fc.descriptor);
            if !iso(&dual, &expected)? {
                out.push(format!("M'{p}* is not {} (case {})", fc.descriptor, fc.case));
            }
            if fc.case == 3 && dual.dim() != 4 {
                out.push(format!("M'{p}* has dimension {}", dual.dim()));
            }
            if let Some(parts) = self.realize_summands(&fc.descriptor) {
                if !dual.is_direct_sum_of(&parts)?.value {
                    out.push(format!("M'{p}* does not split as {}", fc.descriptor));
                }
            }
            Ok(out)
        })?;
        log.extend(failures);
        let hit = hit.into_inner().expect("lock");
        // For q = 1 the values −1 and −q⁻¹ coincide and the last two branches are empty.
        let wanted = if f.q().is_one() { 3 } else { 5 };
        log.ensure(hit.len() == wanted, || format!("right dual branches hit: {hit:?}"));
        log.note(format!("right dual branches hit: {hit:?}"));

        let exceptional = self.point(1, -1, 0)?;
        let failures = per_point(&chart, |p| {
            if p == &exceptional {
                return Ok(Vec::new());
            }
            let tr = self.module_m(p, Side::Left).transpose()?;
            let expected = self.realize(&self.transpose_formula(p, Side::Left)?);
            Ok(if iso(&tr, &expected)? { Vec::new() } else { vec![format!("Tr M{p} is not M'{p}")] })
        })?;
        log.extend(failures);

        if infinite {
            let deep = depth.max(8);
            let target_point = ProjPoint::new(f.one(), -f.q_inv(), f.zero())?;
            let target = self.module_m(&target_point, Side::Right);
            log.ensure(target.semi_gp_up_to(deep)?.value, || format!("M'{target_point} not semi-GP"));
            for c in [0, 1, -1] {
                let p = ProjPoint::new(f.one(), -f.q().clone(), f.int(c))?;
                let m = self.module_m(&p, Side::Left);
                log.ensure(m.semi_gp_up_to(deep)?.value, || format!("M{p} not semi-GP to depth {deep}"));
                log.ensure(!m.is_torsionless()?.value, || format!("M{p} is torsionless"));
                log.ensure(iso(&m.dual()?, &target)?, || format!("M{p}* is not M'{target_point}"));
            }
            log.note(format!("semi-GP family M(1:-q:c) checked to depth {deep}"));
        }

        // Right modules that are semi-GP but not Gorenstein-projective have duals
        // that are not semi-GP.
        let family: Vec<ProjPoint> = chart
            .iter()
            .filter(|p| {
                let r = self.classify_closed_form(p, Side::Right);
                r.semi_gp && !r.gorenstein_projective
            })
            .cloned()
            .collect();
        let failures = per_point(&family, |p| {
            let dual = self.module_m(p, Side::Right).dual()?;
            Ok(if dual.semi_gp_up_to(depth)?.value {
                vec![format!("M'{p}* passes semi-GP to depth {depth}")]
            } else {
                Vec::new()
            })
        })?;
        log.extend(failures);
        if infinite {
            log.ensure(!family.is_empty(), || "no semi-GP, non-GP right module on the grid".into());
        }
        log.note(format!("{} right semi-GP, non-GP modules have non-semi-GP duals", family.len()));
        Ok(())
    }

    fn check_quivers(&self, log: &mut Log) -> Result<()> {
        let f = self.field();
        let cs = grid_cs(self);
        let id = |p: &ProjPoint| format!("M{p}");
        let mut edges = 0;
        match self.order() {
            OrderResult::Finite(n) => {
                let n = n as usize;
                let seeds: Vec<ProjPoint> = cs
                    .iter()
                    .map(|c| ProjPoint::new(f.one(), -f.q().clone(), c.clone()))
                    .collect::<Result<_>>()?;
                let g = self.quiver_build(&seeds, Side::Left, n.max(2) + 1)?;
                edges += g.edges.len();
                log.ensure(g.edges.iter().all(|e| e.certified), || "uncertified edge".into());
                let expected = if n == 1 { ComponentShape::Singleton } else { ComponentShape::A(n) };
                for s in &seeds {
                    let Some(comp) = g.component_of(&id(s)) else {
                        log.failures.push(format!("seed {s} missing"));
                        continue;
                    };
                    log.ensure(comp.shape == expected, || format!("{s}: shape {}", comp.shape));
                    let first = g.node(&comp.nodes[0]).expect("node");
                    let last = g.node(comp.nodes.last().expect("node")).expect("node");
                    log.ensure(last.id == id(s), || format!("{s}: component ends at {}", last.id));
                    let minus_one = -f.one();
                    let starts_on_e = first.point.as_ref().is_some_and(|p| p.b() == &minus_one);
                    log.ensure(starts_on_e, || format!("{s}: component starts at {}", first.id));
                    if n == 1 {
                        log.ensure(first.category == Category::Circle, || format!("{s}: not a circle"));
                    } else {
                        log.ensure(first.category == Category::BlackLozenge, || format!("{s}: start marker"));
                        log.ensure(last.category == Category::BlackSquare, || format!("{s}: end marker"));
                    }
                }
                log.note(format!("seeds (1:-q:c) lie on {expected} components"));
            }
            OrderResult::Infinite => {
                let depth = 8;
                for c in &cs {
                    let square = ProjPoint::new(f.one(), -f.q().clone(), c.clone())?;
                    let g = self.quiver_build(std::slice::from_ref(&square), Side::Left, depth)?;
                    edges += g.edges.len();
                    log.ensure(g.edges.iter().all(|e| e.certified), || "uncertified edge".into());
                    let comp = g.component_of(&id(&square)).expect("seed present");
                    log.ensure(comp.shape == ComponentShape::NegNatChain, || {
                        format!("{square}: shape {}", comp.shape)
                    });
                    log.ensure(comp.nodes.len() == depth + 1, || format!("{square}: length"));
                    let end = g.node(&id(&square)).expect("node");
                    let closed = self.classify_closed_form(&square, Side::Left);
                    log.ensure(end.category == Category::BlackSquare && closed.pivotal_semi_gp, || {
                        format!("{square}: end is not a pivotal square")
                    });
                    let chain = self.chain_coefficients(c, ChainKind::CChain, depth + 1)?;
                    for (k, ct) in chain.iter().enumerate() {
                        let expect = ProjPoint::new(f.one(), -f.q_pow(k as i64 + 1), ct.clone())?;
                        let at = comp.nodes.len().checked_sub(k + 1).map(|i| &comp.nodes[i]);
                        log.ensure(at == Some(&id(&expect)), || format!("{square}: Ω^{k} is not {expect}"));
                    }

                    let lozenge = ProjPoint::new(f.one(), -f.one(), c.clone())?;
                    let g = self.quiver_build(std::slice::from_ref(&lozenge), Side::Left, depth)?;
                    edges += g.edges.len();
                    log.ensure(g.edges.iter().all(|e| e.certified), || "uncertified edge".into());
                    let comp = g.component_of(&id(&lozenge)).expect("seed present");
                    log.ensure(comp.shape == ComponentShape::NatChain, || {
                        format!("{lozenge}: shape {}", comp.shape)
                    });
                    let start = g.node(&id(&lozenge)).expect("node");
                    let closed = self.classify_closed_form(&lozenge, Side::Left);
                    log.ensure(start.category == Category::BlackLozenge && closed.pivotal_inf_tf, || {
                        format!("{lozenge}: start is not a pivotal lozenge")
                    });
                    let chain = self.chain_coefficients(c, ChainKind::DChain, depth + 1)?;
                    for (k, dt) in chain.iter().enumerate() {
                        let expect = ProjPoint::new(f.one(), -f.q_pow(-(k as i64)), dt.clone())?;
                        log.ensure(comp.nodes.get(k) == Some(&id(&expect)), || {
                            format!("{lozenge}: ℧^{k} is not {expect}")
                        });
                    }
                }
                log.note("truncated ℕ and −ℕ chains match the coefficient recurrences");
            }
        }
        let char_two = f.kind().characteristic() == 2;
        for c in &cs {
            let p = ProjPoint::new(f.one(), f.zero(), c.clone())?;
            let g = self.quiver_build(std::slice::from_ref(&p), Side::Left, 4)?;
            edges += g.edges.len();
            log.ensure(g.edges.iter().all(|e| e.certified), || "uncertified edge".into());
            let period = if c.is_zero() || char_two { 1 } else { 2 };
            let shape = g.component_of(&id(&p)).map(|c| c.shape);
            log.ensure(shape == Some(ComponentShape::Cycle(period)), || {
                format!("{p}: expected Cycle({period}), got {shape:?}")
            });
        }
        log.note(format!("{edges} edges certified"));
        Ok(())
    }

    fn check_exhaustive(&self, budget: u128, log: &mut Log) -> Result<()> {
        let Some(points) = all_points(self.field().kind()) else {
            log.skipped = true;
            log.note("exhaustive scans need a finite field");
            return Ok(());
        };
        let FieldKind::Prime(p) = self.field().kind() else { unreachable!("finite field") };
        let needed = crate::module::grassmannian_size(p, 6, 3);
        if needed > budget {
            log.skipped = true;
            log.note(format!("scan of {needed} subspaces exceeds the budget {budget}"));
            return Ok(());
        }
        let reg = self.regular(Side::Left);
        let soc = self.socle();
        let x_minus_y = {
            let mut v = vec![self.field().zero(); 6];
            v[basis::X] = self.field().one();
            v[basis::Y] = -self.field().one();
            v
        };
        let lx = self.ideal(Side::Left, &[x_minus_y]);
        let lz = self.ideal(Side::Left, &[self.algebra(Side::Left).basis_vector(basis::Z)]);

        let twos = reg.enumerate_submodules(2, budget)?;
        let failures: Vec<String> = twos
            .par_iter()
            .filter(|s| s.subspace != soc)
            .map(|s| -> Result<Option<String>> {
                let ok = iso(&s.module, &lx)? || iso(&s.module, &lz)?;
                Ok((!ok).then(|| format!("2-dimensional ideal {:?} is of neither type", s.subspace.basis())))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        log.extend(failures);

        let threes = reg.enumerate_submodules(3, budget)?;
        for s in &threes {
            log.ensure(s.subspace.contains_subspace(&soc), || {
                format!("3-dimensional ideal {:?} misses the socle", s.subspace.basis())
            });
        }
        let mut us = Vec::new();
        for p in &points {
            let u = self.module_u(p, Side::Left).subspace;
            if !us.contains(&u) {
                us.push(u);
            }
        }
        log.ensure(us.len() == threes.len(), || {
            format!("{} ideals U(p) but {} three-dimensional ideals", us.len(), threes.len())
        });
        for u in &us {
            log.ensure(threes.iter().any(|s| &s.subspace == u), || "U(p) missing from the scan".into());
        }

        let right = self.regular(Side::Right);
        let yx = self.algebra(Side::Right).basis_vector(basis::YX);
        let zx = self.algebra(Side::Right).basis_vector(basis::ZX);
        for p in &points {
            let v = right.submodule(&[self.linear_element(p)]);
            if !p.a().is_zero() || !(p.b() * p.c()).is_zero() {
                let u = self.module_u(p, Side::Right).subspace;
                log.ensure(v.subspace == u, || format!("right ideal of {p} is not U({p})"));
            } else {
                log.ensure(v.module.dim() == 2, || format!("right ideal of {p} has dim {}", v.module.dim()));
                let soc_v = v.module.socle();
                let image: Vec<Vec<Scalar>> =
                    soc_v.basis().iter().map(|b| v.inclusion.matrix().mul_vec(b)).collect();
                let expected = if p.c().is_zero() { &yx } else { &zx };
                let ok = image.len() == 1 && crate::matrix::Subspace::span(self.field().kind(), 6, &image)
                    .contains(expected);
                log.ensure(ok, || format!("socle of the right ideal of {p}"));
            }
        }
        log.note(format!(
            "{} two-dimensional and {} three-dimensional left ideals, {} principal right ideals",
            twos.len(),
            threes.len(),
            points.len()
        ));
        Ok(())
    }

    fn check_local_iterates(&self, depth: usize, log: &mut Log) -> Result<()> {
        let grid = self.default_grid();
        let counts = std::sync::Mutex::new((0usize, 0usize));
        for side in [Side::Left, Side::Right] {
            let failures = per_point(&grid, |p| {
                let m = self.module_m(p, side);
                let name = format!("{}{p}", module_name(side));
                let mut out = Vec::new();
                if m.semi_gp_up_to(depth)?.value {
                    counts.lock().expect("lock").0 += 1;
                    for (t, it) in m.syzygy_iterates(depth).iter().enumerate() {
                        if it.dim() != 3 || it.top_dim() != 1 {
                            out.push(format!("Ω^{t}{name} has dim {} and top {}", it.dim(), it.top_dim()));
                        }
                    }
                }
                if m.inf_tf_up_to(depth)?.value {
                    counts.lock().expect("lock").1 += 1;
                    for (t, it) in m.cosyzygy_iterates(depth)?.iter().enumerate() {
                        if it.dim() != 3 || it.top_dim() != 1 {
                            out.push(format!("℧^{t}{name} has dim {} and top {}", it.dim(), it.top_dim()));
                        }
                    }
                }
                Ok(out)
            })?;
            log.extend(failures);
        }
        let (semi, inf) = counts.into_inner().expect("lock");
        log.note(format!("{semi} semi-GP and {inf} ∞-torsionfree survivors at depth {depth}"));
        Ok(())
    }

    fn check_appendix(&self, log: &mut Log) -> Result<()> {
        let mut hit = BTreeSet::new();
        for p in self.default_grid() {
            let m = self.module_m(&p, Side::Left);
            let case = self.appendix_case(&m)?.case;
            let row = appendix_row(&p);
            hit.insert(case);
            log.ensure(case == row, || format!("M{p}: computed row {case}, coordinates give {row}"));
        }
        log.ensure(hit.len() == 7, || format!("rows hit: {hit:?}"));
        log.note(format!("rows hit: {hit:?}"));
        Ok(())
    }
}
