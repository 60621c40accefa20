use euclid_dual::isometry::{basic_invariants, compose, inverse, product, reflection, reflection_length, Isometry};
use euclid_dual::linalg::{ratio, AffineSubspace, LinearSubspace, QVector, Rational};
use euclid_dual::roots::{
    build_root_system, coroot, decompose_irreducible, format_root, parse_root_notation, DynkinType, Family,
};
use num::Zero;
use proptest::prelude::*;

fn all_types() -> Vec<DynkinType> {
    let mut out = Vec::new();
    for (f, ranks) in [
        (Family::A, 1..=7),
        (Family::B, 3..=7),
        (Family::C, 2..=7),
        (Family::D, 4..=7),
        (Family::E, 6..=8),
        (Family::F, 4..=4),
        (Family::G, 2..=2),
    ] {
        for r in ranks {
            out.push(DynkinType::new(f, r).unwrap());
        }
    }
    out
}

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn vector(n: usize) -> impl Strategy<Value = QVector> {
    proptest::collection::vec(rational(), n).prop_map(|v| {
        let s: Vec<String> = v.iter().map(ToString::to_string).collect();
        QVector::from_strings(&s).unwrap()
    })
}

fn rows(n: usize) -> impl Strategy<Value = Vec<QVector>> {
    proptest::collection::vec(vector(n), 0..=n + 1)
}

proptest! {
    #[test]
    fn rref_idempotent_and_order_free(rs in rows(4), rot in 0usize..5) {
        let u = LinearSubspace::span(4, &rs).unwrap();
        prop_assert_eq!(LinearSubspace::span(4, u.basis()).unwrap(), u.clone());
        let mut shuffled = rs.clone();
        if !shuffled.is_empty() {
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
        }
        prop_assert_eq!(LinearSubspace::span(4, &shuffled).unwrap(), u);
    }

    #[test]
    fn complement_dimensions(rs in rows(5)) {
        let u = LinearSubspace::span(5, &rs).unwrap();
        let perp = u.complement();
        prop_assert_eq!(u.dim() + perp.dim(), 5);
        prop_assert_eq!(perp.complement(), u.clone());
        for a in u.basis() {
            for b in perp.basis() {
                prop_assert!(a.dot(b).is_zero());
            }
        }
        for r in &rs {
            prop_assert!(u.contains(r));
        }
    }

    #[test]
    fn affine_standard_form(p in vector(4), rs in rows(4), c in rational()) {
        let dir = LinearSubspace::span(4, &rs).unwrap();
        let a = AffineSubspace::new(&p, dir.clone());
        for b in dir.basis() {
            prop_assert!(a.base().dot(b).is_zero());
        }
        prop_assert!(a.contains_point(&p));
        // another point and another spanning set of the same set
        let q = dir.basis().iter().fold(p.clone(), |acc, b| acc.axpy(&c, b));
        let doubled: Vec<QVector> = rs.iter().map(|r| r.scale(&ratio(2, 1))).collect();
        let b = AffineSubspace::new(&q, LinearSubspace::span(4, &doubled).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn root_counts() {
    for t in all_types() {
        let n = t.rank;
        let expect = match t.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => [72, 126, 240][n - 6],
            Family::F => 48,
            Family::G => 12,
        };
        let sys = build_root_system(t);
        assert_eq!(sys.len(), expect, "{t}");
        for a in sys.roots() {
            assert!(sys.contains(&-a), "{t}: -{a}");
            assert_eq!(a.dot(&coroot(a)), ratio(2, 1), "{t}: {a}");
        }
    }
}

#[test]
fn notation_round_trip() {
    for t in all_types() {
        let sys = build_root_system(t);
        let mut named = 0;
        for a in sys.roots() {
            match format_root(a, &sys) {
                Ok(s) => {
                    assert_eq!(&parse_root_notation(&s, &sys).unwrap(), a, "{t}: {s}");
                    named += 1;
                }
                // only the long roots of G2 have no slash notation
                Err(_) => assert!(t.family == Family::G && a.norm2() == ratio(6, 1), "{t}: {a}"),
            }
        }
        assert!(named >= sys.len() / 2, "{t}");
    }
}

proptest! {
    #[test]
    fn decomposition_is_orthogonal_and_order_free(ti in 0usize..28, keep in proptest::collection::vec(any::<bool>(), 240), rot in 0usize..240) {
        let types = all_types();
        let sys = build_root_system(types[ti % types.len()]);
        // a sub-root-system: roots orthogonal to a random root
        let pick = sys.roots()[rot % sys.len()].clone();
        let sub: Vec<QVector> = sys
            .roots()
            .iter()
            .zip(&keep)
            .filter(|(a, k)| **k || a.dot(&pick).is_zero())
            .map(|(a, _)| a.clone())
            .filter(|a| a.dot(&pick).is_zero())
            .collect();
        let comps = decompose_irreducible(&sub);
        let total: usize = comps.iter().map(|c| c.roots.len()).sum();
        prop_assert_eq!(total, sub.len());
        for (i, c) in comps.iter().enumerate() {
            for d in &comps[i + 1..] {
                for a in &c.roots {
                    for b in &d.roots {
                        prop_assert!(a.dot(b).is_zero());
                    }
                }
            }
        }
        let mut rev = sub.clone();
        rev.reverse();
        let mut l1: Vec<String> = comps.iter().map(|c| c.describe()).collect();
        let mut l2: Vec<String> = decompose_irreducible(&rev).iter().map(|c| c.describe()).collect();
        l1.sort();
        l2.sort();
        prop_assert_eq!(l1, l2);
    }
}

/// Reflections of the affine group of a type, with offsets in `-3..=3`.
fn group_reflection(types: &[DynkinType], ti: usize, ri: usize, m: i64) -> Isometry {
    let sys = build_root_system(types[ti % types.len()]);
    let a = &sys.roots()[ri % sys.len()];
    reflection(a, &ratio(m, 1)).unwrap()
}

/// Words of up to six euclidean reflections in a fixed ambient space.
fn reflection_word() -> impl Strategy<Value = Vec<Isometry>> {
    let types: Vec<DynkinType> = all_types().into_iter().filter(|t| t.ambient() == 4).collect();
    (0usize..types.len(), proptest::collection::vec((0usize..500, -3i64..=3, vector(4), any::<bool>()), 0..=6))
        .prop_map(move |(ti, word)| {
            word.into_iter()
                .map(|(ri, m, v, group)| {
                    if group || v.is_zero() {
                        group_reflection(&types, ti, ri, m)
                    } else {
                        reflection(&v, &ratio(m, 2)).unwrap()
                    }
                })
                .collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scherk_parity_and_bounds(w in reflection_word(), v in reflection_word()) {
        let g = product(4, &w);
        let h = product(4, &v);
        let lg = reflection_length(&g);
        prop_assert!(lg <= w.len());
        prop_assert_eq!(lg % 2, w.len() % 2);
        prop_assert_eq!(reflection_length(&inverse(&g)), lg);
        prop_assert!(reflection_length(&compose(&g, &h)) <= lg + reflection_length(&h));
    }

    #[test]
    fn min_direction_is_perp_of_move_direction(w in reflection_word(), r in reflection_word()) {
        let g = product(4, &w);
        let b = basic_invariants(&g);
        prop_assert_eq!(b.min.dir(), &b.mov.dir().complement());
        if let Some(r) = r.first() {
            let rg = compose(r, &g);
            let d1 = basic_invariants(&rg).mov.dir().dim() as i64;
            let d0 = b.mov.dir().dim() as i64;
            let dm1 = basic_invariants(&rg).mov.dim() as i64;
            let dm0 = b.mov.dim() as i64;
            prop_assert!((d1 - d0).abs() <= 1);
            prop_assert_eq!((dm1 - dm0).abs(), 1);
        }
    }
}
