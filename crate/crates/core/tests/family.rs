use lambdaq_core::family::{all_points, ChainKind, ComponentShape};
use lambdaq_core::{Error, Field, FieldKind, LambdaFamily, Side};
use proptest::prelude::*;

fn fam(d: &str, q: &str) -> LambdaFamily {
    LambdaFamily::new(Field::parse(d, q).unwrap())
}

/// `(a, b, c, side, dim Ext¹, torsionless)` over ℚ with q = 2, from a separate
/// computer-algebra computation.
const GOLDEN: [(i64, i64, i64, Side, usize, bool); 8] = [
    (1, -1, 0, Side::Left, 2, true),
    (1, -2, 0, Side::Left, 0, false),
    (0, 1, 0, Side::Left, 2, true),
    (0, 0, 1, Side::Left, 3, true),
    (1, -1, 0, Side::Right, 1, true),
    (1, -1, 1, Side::Right, 0, false),
    (0, 1, 0, Side::Right, 2, false),
    (0, 0, 1, Side::Right, 3, true),
];

#[test]
fn golden_ext_and_torsionless() {
    let f = fam("Q", "2");
    for (a, b, c, side, ext1, tl) in GOLDEN {
        let m = f.module_m(&f.point(a, b, c).unwrap(), side);
        assert_eq!(m.ext1_dim().unwrap(), ext1, "({a},{b},{c}) {side}");
        assert_eq!(m.is_torsionless().unwrap().value, tl, "({a},{b},{c}) {side}");
    }
}

#[test]
fn family_members_are_pairwise_non_isomorphic_over_f3() {
    let f = fam("Fp:3", "2");
    let points = all_points(FieldKind::Prime(3)).unwrap();
    for side in [Side::Left, Side::Right] {
        let mods: Vec<_> = points.iter().map(|p| f.module_m(p, side)).collect();
        for (i, m) in mods.iter().enumerate() {
            for (j, n) in mods.iter().enumerate() {
                assert_eq!(m.is_isomorphic(n).unwrap().value, i == j, "{} {}", points[i], points[j]);
            }
        }
    }
}

#[test]
fn syzygy_chain_follows_omega() {
    let f = fam("Q", "2");
    let p = f.point(1, 1, 2).unwrap();
    let first = f.syzygy_formula(&p, Side::Left).descriptor;
    assert_eq!(first.to_string(), "M(1:2:-1)");
    let second = f.syzygy_formula(first.point().unwrap(), Side::Left).descriptor;
    assert_eq!(second.to_string(), "M(1:4:1/3)");
    let m = f.module_m(&p, Side::Left);
    let iterates = m.syzygy_iterates(2);
    assert!(iterates[1].is_isomorphic(&f.realize(&first)).unwrap().value);
    assert!(iterates[2].is_isomorphic(&f.realize(&second)).unwrap().value);

    let split = f.syzygy_formula(&f.point(1, -1, 0).unwrap(), Side::Left);
    assert_eq!((split.case, split.descriptor.to_string()), (3, "Λ(x-y) ⊕ Λzx".to_string()));

    let fixed = f.point(1, 0, 0).unwrap();
    assert_eq!(f.syzygy_formula(&fixed, Side::Left).descriptor.point(), Some(&fixed));
}

#[test]
fn coefficient_chains() {
    let f = fam("Q", "2");
    let one = f.field().one();
    let c = f.chain_coefficients(&one, ChainKind::CChain, 3).unwrap();
    let shown: Vec<String> = c.iter().map(ToString::to_string).collect();
    assert_eq!(shown, ["1", "1", "1/3"]);
    let d = f.chain_coefficients(&f.field().zero(), ChainKind::DChain, 5).unwrap();
    assert!(d.iter().all(|s| s.is_zero()));
    let f5 = fam("Fp:5", "2");
    let err = f5.chain_coefficients(&f5.field().one(), ChainKind::CChain, 5).unwrap_err();
    assert!(matches!(err, Error::DivisionByZero(_)));
}

#[test]
fn dual_examples() {
    let f = fam("Q", "2");
    let left = f.dual_formula(&f.point(1, -2, 7).unwrap(), Side::Left).unwrap();
    assert_eq!(left.descriptor.to_string(), "M'(1:-1/2:0)");
    let p = f.point(1, -1, 0).unwrap();
    let right = f.dual_formula(&p, Side::Right).unwrap();
    assert_eq!(right.case, 3);
    assert_eq!(f.module_m(&p, Side::Right).dual().unwrap().dim(), 4);
    let r2 = f.dual_formula(&f.point(1, -1, 1).unwrap(), Side::Right).unwrap();
    assert_eq!(r2.descriptor.to_string(), "Λz ⊕ Λyx");
    assert!(matches!(f.dual_formula(&f.point(0, 1, 0).unwrap(), Side::Left), Err(Error::OutsideChart(_))));
}

#[test]
fn classification_examples() {
    let f = fam("Q", "2");
    let r = f.classify_closed_form(&f.point(1, -2, 0).unwrap(), Side::Left);
    assert!(r.pivotal_semi_gp && !r.torsionless);
    let f5 = fam("Fp:5", "2");
    // Gorenstein-projective iff −b avoids the powers of q; scan the powers of 2 in 𝔽₅.
    let powers: Vec<u64> = (1..=4).map(|i| 2u64.pow(i) % 5).collect();
    let minus_b = 4;
    let expected = !powers.contains(&minus_b);
    let r = f5.classify_closed_form(&f5.point(1, 1, 0).unwrap(), Side::Left);
    assert_eq!(r.gorenstein_projective, expected);
}

#[test]
fn quiver_output_is_deterministic() {
    let f = fam("Fp:5", "2");
    let seeds = [f.point(1, -2, 1).unwrap(), f.point(0, 1, 0).unwrap()];
    let a = f.quiver_build(&seeds, Side::Left, 6).unwrap();
    let b = f.quiver_build(&seeds, Side::Left, 6).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_dot(), b.to_dot());
    let json: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(json["schema"], 1);
    let shapes: Vec<ComponentShape> = a.components.iter().map(|c| c.shape).collect();
    assert!(shapes.contains(&ComponentShape::A(4)));
    assert!(shapes.contains(&ComponentShape::A(2)));

    let r = f.quiver_build(&[f.point(1, -1, 0).unwrap()], Side::Right, 4).unwrap();
    assert!(r.edges.iter().all(|e| e.certified));
    let single = f.quiver_build(&[f.point(0, 1, 1).unwrap()], Side::Left, 3).unwrap();
    assert_eq!(single.components[0].shape, ComponentShape::Singleton);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn syzygy_matches_table_for_random_rational_points(
        b in -9i64..9, c in -9i64..9, qn in prop::sample::select(vec![-3i64, -2, 2, 3]), qd in 1i64..4,
    ) {
        let kind = FieldKind::Rationals;
        let f = LambdaFamily::new(Field::new(kind, kind.ratio(qn, qd).unwrap()).unwrap());
        let p = f.point(1, b, c).unwrap();
        for side in [Side::Left, Side::Right] {
            let m = f.module_m(&p, side);
            let omega = m.syzygy();
            prop_assert_eq!(omega.dim() + m.dim(), 6);
            let expected = f.realize(&f.syzygy_formula(&p, side).descriptor);
            prop_assert!(omega.is_isomorphic(&expected).unwrap().value);
            let closed = f.classify_closed_form(&p, side);
            prop_assert!(closed.is_consistent());
            prop_assert_eq!(closed.torsionless, m.is_torsionless().unwrap().value);
            prop_assert_eq!(closed.extensionless, m.is_extensionless().unwrap().value);
        }
    }
}
