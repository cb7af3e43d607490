//! Cross-checks against a small stand-alone model of Λ(q) over 𝔽_p written
//! with plain `u64` arithmetic. For `M = Λ/U` with `U` a two-sided ideal:
//! `Hom(M, Λ)` is the right annihilator of `U`; `M` is torsionless iff the
//! left annihilator of that annihilator is `U` again; and `Ext¹(M, Λ)` comes
//! from `0 → Hom(M,Λ) → Λ → Hom(U,Λ) → Ext¹(M,Λ) → 0`.

use lambdaq_core::family::all_points;
use lambdaq_core::{Field, FieldKind, LambdaFamily, ProjPoint, Side};

#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn norm(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
    fn inv(&self, a: u64) -> u64 {
        let mut r = 1;
        let (mut b, mut e) = (a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// Rank of a row list by plain elimination.
    fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
            rows.swap(r, k);
            let inv = self.inv(rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = *v * inv % self.p;
            }
            for k in 0..rows.len() {
                if k != r && rows[k][c] != 0 {
                    let f = rows[k][c];
                    for j in 0..cols {
                        rows[k][j] = (rows[k][j] + self.p * self.p - f * rows[r][j]) % self.p;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// Λ(q): basis 1, x, y, z, yx, zx.
struct Model {
    f: Fp,
    q: u64,
}

impl Model {
    fn mul(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let p = self.f.p;
        let mut out = vec![0u64; 6];
        let mut put = |k: usize, s: u64| out[k] = (out[k] + s) % p;
        for i in 0..6 {
            for j in 0..6 {
                let s = u[i] * v[j] % p;
                if s == 0 {
                    continue;
                }
                match (i, j) {
                    (0, k) | (k, 0) => put(k, s),
                    (1, 2) => put(4, s * (p - self.q) % p),
                    (1, 3) | (3, 1) | (3, 2) => put(5, s),
                    (2, 1) => put(4, s),
                    _ => {}
                }
            }
        }
        out
    }

    fn unit(i: usize) -> Vec<u64> {
        let mut v = vec![0; 6];
        v[i] = 1;
        v
    }

    /// Two-sided ideal `U(a,b,c)`; rows span it.
    fn ideal(&self, a: u64, b: u64, c: u64) -> Vec<Vec<u64>> {
        vec![vec![0, a, b, c, 0, 0], Model::unit(4), Model::unit(5)]
    }

    /// Dimension of `{λ : uλ = 0 for u in U}` (`right = true`) or `{λ : λu = 0}`.
    fn annihilator_dim(&self, ideal: &[Vec<u64>], right: bool) -> usize {
        // Columns are the coordinates of λ; one equation per (u, output coordinate).
        let mut rows = Vec::new();
        for u in ideal {
            let images: Vec<Vec<u64>> = (0..6)
                .map(|k| if right { self.mul(u, &Model::unit(k)) } else { self.mul(&Model::unit(k), u) })
                .collect();
            for out in 0..6 {
                rows.push((0..6).map(|k| images[k][out]).collect());
            }
        }
        6 - self.f.rank(rows)
    }

    fn annihilator_basis(&self, ideal: &[Vec<u64>], right: bool) -> Vec<Vec<u64>> {
        let p = self.f.p;
        // Brute force over 𝔽_p^6 is fine for p ≤ 5.
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let total = p.pow(6);
        for n in 0..total {
            let v: Vec<u64> = (0..6).map(|k| n / p.pow(k) % p).collect();
            let kills = ideal.iter().all(|u| {
                let w = if right { self.mul(u, &v) } else { self.mul(&v, u) };
                w.iter().all(|&s| s == 0)
            });
            if kills {
                let mut trial = basis.clone();
                trial.push(v);
                if self.f.rank(trial.clone()) == trial.len() {
                    basis = trial;
                }
            }
        }
        basis
    }

    /// `dim Hom(U, Λ)` for the module on the given side: unknown 6×3 matrix `F`
    /// with `F(g·u) = g·F(u)` for the generators `g = x, y, z`.
    fn hom_from_ideal(&self, ideal: &[Vec<u64>], left: bool) -> usize {
        let p = self.f.p;
        let act = |g: usize, v: &[u64]| {
            if left { self.mul(&Model::unit(g), v) } else { self.mul(v, &Model::unit(g)) }
        };
        // Coordinates in the basis `ideal` (rows are independent, coordinates read at
        // positions where some row has its leading entry).
        let coords = |v: &[u64]| -> Vec<u64> {
            let rows = ideal;
            let n = rows.len();
            // Solve Σ c_i rows_i = v by brute force.
            for m in 0..p.pow(n as u32) {
                let c: Vec<u64> = (0..n).map(|k| m / p.pow(k as u32) % p).collect();
                let w: Vec<u64> = (0..6).map(|j| (0..n).map(|i| c[i] * rows[i][j]).sum::<u64>() % p).collect();
                if w == v {
                    return c;
                }
            }
            panic!("not in the ideal")
        };
        let n = ideal.len();
        // Unknown F[r][i] at index r*n + i: image of basis element i, coordinate r.
        let mut eqs: Vec<Vec<u64>> = Vec::new();
        for g in 1..4 {
            for i in 0..n {
                let gi = coords(&act(g, &ideal[i]));
                // F(g·u_i) − g·F(u_i) = 0, coordinate by coordinate.
                for r in 0..6 {
                    let mut row = vec![0u64; 6 * n];
                    for (j, &cj) in gi.iter().enumerate() {
                        row[r * n + j] = (row[r * n + j] + cj) % p;
                    }
                    for s in 0..6 {
                        let coeff = act(g, &Model::unit(s))[r];
                        row[s * n + i] = (row[s * n + i] + p - coeff) % p;
                    }
                    eqs.push(row);
                }
            }
        }
        6 * n - self.f.rank(eqs)
    }
}

struct Expect {
    hom: usize,
    ext1: usize,
    torsionless: bool,
}

fn oracle(model: &Model, pt: &ProjPoint, side: Side) -> Expect {
    let residue = |s: &lambdaq_core::Scalar| s.residue().expect("prime field");
    let (a, b, c) = (residue(pt.a()), residue(pt.b()), residue(pt.c()));
    let u = model.ideal(a, b, c);
    let left = side == Side::Left;
    // Hom(Λ/U, Λ) for left modules: λ with Uλ = 0; for right modules: λU = 0.
    let hom = model.annihilator_dim(&u, left);
    let ann = model.annihilator_basis(&u, left);
    let double = model.annihilator_dim(&ann, !left);
    let ext1 = model.hom_from_ideal(&u, left) + hom - 6;
    Expect { hom, ext1, torsionless: double == 3 }
}

fn check_field(p: u64, q: i64) {
    let kind = FieldKind::Prime(p);
    let fam = LambdaFamily::new(Field::new(kind, kind.from_i64(q)).unwrap());
    let f = Fp { p };
    let model = Model { f, q: f.norm(q) };
    for pt in all_points(kind).unwrap() {
        for side in [Side::Left, Side::Right] {
            let want = oracle(&model, &pt, side);
            let m = fam.module_m(&pt, side);
            let tag = format!("p={p} q={q} {pt} {side}");
            assert_eq!(m.hom_to_regular().unwrap().dim(), want.hom, "Hom {tag}");
            assert_eq!(m.ext1_dim().unwrap(), want.ext1, "Ext¹ {tag}");
            assert_eq!(m.is_torsionless().unwrap().value, want.torsionless, "torsionless {tag}");
            let closed = fam.classify_closed_form(&pt, side);
            assert_eq!(closed.torsionless, want.torsionless, "closed torsionless {tag}");
            assert_eq!(closed.extensionless, want.ext1 == 0, "closed extensionless {tag}");
        }
    }
}

#[test]
fn hom_ext_torsionless_match_model_over_f3() {
    check_field(3, 2);
    check_field(3, 1);
}

#[test]
fn hom_ext_torsionless_match_model_over_f5() {
    for q in 1..5 {
        check_field(5, q);
    }
}

#[test]
fn hom_ext_torsionless_match_model_over_f2() {
    check_field(2, 1);
}
