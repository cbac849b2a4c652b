//! Randomized property suite: algebraic laws of the polynomial ring,
//! hull multiplicativity, Sturm count consistency, canonical-form
//! equivalence with the isomorphism search, and the extension/deletion
//! inverse law.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use olex_core::extend::{enumerate_census, ol_ext};
use olex_core::poly::{
    divides, exact_div, minkowski_sum, mv_gcd, newton_polytope, real_root_count, MPoly, UPoly,
};
use olex_core::symmetry::{canonical_form, find_isomorphism};
use olex_core::Catalog;

const VARS: [&str; 3] = ["a", "b", "c"];

fn arb_poly() -> impl Strategy<Value = MPoly> {
    // up to 4 monomials, arity 3, per-variable degree <= 3, small coeffs
    prop::collection::vec(
        (0u32..=3, 0u32..=3, 0u32..=3, -4i64..=4),
        1..=4,
    )
    .prop_map(|monos| {
        let mut f = MPoly::zero(&VARS);
        for (i, j, k, c) in monos {
            let m = MPoly::constant(&VARS, BigInt::from(c))
                .mul(&MPoly::var(&VARS, 0).pow(i))
                .unwrap()
                .mul(&MPoly::var(&VARS, 1).pow(j))
                .unwrap()
                .mul(&MPoly::var(&VARS, 2).pow(k))
                .unwrap();
            f = f.add(&m).unwrap();
        }
        f
    })
}

fn eval(f: &MPoly, at: &[i64; 3]) -> BigInt {
    let assignment: BTreeMap<usize, BigInt> =
        (0..3).map(|i| (i, BigInt::from(at[i]))).collect();
    let c = f.substitute_ints(&assignment).unwrap();
    if c.is_zero() {
        BigInt::from(0)
    } else {
        UPoly::from_mpoly(&c, 0).unwrap().coeff(0)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.add(&g).unwrap().add(&h).unwrap(),
            f.add(&g.add(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.sub(&f).unwrap(), MPoly::zero(&VARS));
    }

    #[test]
    fn multiplication_agrees_with_evaluation(f in arb_poly(), g in arb_poly(),
                                             x in -5i64..=5, y in -5i64..=5, z in -5i64..=5) {
        let at = [x, y, z];
        prop_assert_eq!(
            eval(&f.mul(&g).unwrap(), &at),
            eval(&f, &at) * eval(&g, &at)
        );
    }

    #[test]
    fn gcd_divides_and_exact_div_inverts(f in arb_poly(), g in arb_poly()) {
        let d = mv_gcd(&f, &g);
        if !d.is_zero() {
            prop_assert!(divides(&d, &f));
            prop_assert!(divides(&d, &g));
            if !f.is_zero() {
                let q = exact_div(&f, &d).unwrap();
                prop_assert_eq!(q.mul(&d).unwrap(), f);
            }
        }
    }

    #[test]
    fn ostrowski_hull_multiplicativity(f in arb_poly(), g in arb_poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let sum = minkowski_sum(
            &newton_polytope(&f).unwrap(),
            &newton_polytope(&g).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(newton_polytope(&f.mul(&g).unwrap()).unwrap(), sum);
    }

    #[test]
    fn sturm_counts_constructed_real_roots(roots in prop::collection::btree_set(-6i64..=6, 1..=4),
                                           complex_pairs in 0usize..=2) {
        // (x - r_1)...(x - r_k) * (x^2 + 1)^m has exactly k real roots
        let mut u = UPoly::from_ints(&[1]);
        for &r in &roots {
            u = u.mul(&UPoly::from_ints(&[-r, 1]));
        }
        for _ in 0..complex_pairs {
            u = u.mul(&UPoly::from_ints(&[1, 0, 1]));
        }
        prop_assert_eq!(real_root_count(&u).unwrap(), roots.len());
    }
}

#[test]
fn canonical_form_matches_isomorphism_search_on_k5_census() {
    // soundness and completeness on all pairs of the 23 five-point
    // extensions
    let cat = Catalog::bundled();
    let survivors: Vec<_> = enumerate_census(5, &cat)
        .unwrap()
        .survivors
        .iter()
        .map(|n| cat.build_named(n).unwrap())
        .collect();
    assert_eq!(survivors.len(), 23);
    for a in &survivors {
        for b in &survivors {
            let same = canonical_form(a) == canonical_form(b);
            match find_isomorphism(a, b) {
                Some(w) => {
                    assert!(same);
                    assert!(w.verify(a, b));
                }
                None => assert!(!same),
            }
        }
    }
}

#[test]
fn extension_then_deletion_is_the_identity() {
    let cat = Catalog::bundled();
    for entry in cat.entries() {
        for ext in ol_ext(3, &entry.arrangement).unwrap() {
            let extended = entry.arrangement.add_line(&ext).unwrap();
            let back = extended.remove_line(extended.num_lines() - 1).unwrap();
            assert_eq!(back.emit_table(), entry.arrangement.emit_table());
        }
    }
}
