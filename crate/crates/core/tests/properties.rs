use loopsym::boxball::{evolve_carrier, evolve_leftmost, BoxBallState, Capacity, ConservationLaw};
use loopsym::crystal::{comb_r_jdt, comb_r_tropical, OneRowTableau};
use loopsym::exactring::Trop;
use loopsym::factorize::{tnn_check, toeplitz_window};
use loopsym::lsym::{loop_e, whirl_product, LoopVarArray, LoopVarJson};
use loopsym::rmatrix::{apply_word_values, swap, PermWord};
use loopsym::{Monomial, Poly, VarId};
use num_rational::BigRational;
use proptest::prelude::*;

fn positive() -> impl Strategy<Value = BigRational> {
    (1i64..40, 1i64..12).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

/// A positive rational point with `n` colors and `m` sites.
fn point(n: u32, m: u32) -> impl Strategy<Value = LoopVarArray<BigRational>> {
    prop::collection::vec(prop::collection::vec(positive(), n as usize), m as usize)
        .prop_map(move |sites| LoopVarArray::new(n, sites).expect("rectangular"))
}

fn small_point() -> impl Strategy<Value = LoopVarArray<BigRational>> {
    (1u32..=3, 2u32..=3).prop_flat_map(|(n, m)| point(n, m))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec((1u32..=2, 1i64..=2, 1u32..=2), 0..3), -3i64..=3).prop_map(|(f, c)| {
        let m = Monomial::from_pairs(f.into_iter().map(|(i, r, e)| (VarId::new(i, r, 2), e)));
        Poly::from_term(m, BigRational::from_integer(c.into()))
    });
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.iter().fold(Poly::zero(), |a, t| &a + t))
}

fn row(n: u32) -> impl Strategy<Value = OneRowTableau> {
    prop::collection::vec(0u32..3, n as usize).prop_map(OneRowTableau::from_counts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn swap_is_an_involution(x in prop::collection::vec(positive(), 3), y in prop::collection::vec(positive(), 3)) {
        let once = swap(&x, &y).unwrap();
        let twice = swap(&once.x_out, &once.y_out).unwrap();
        prop_assert_eq!(twice.x_out, x);
        prop_assert_eq!(twice.y_out, y);
    }

    #[test]
    fn tropical_swap_is_an_involution(x in prop::collection::vec(-20i64..20, 1..4usize), shift in -5i64..5) {
        let x: Vec<Trop> = x.into_iter().map(Trop).collect();
        let y: Vec<Trop> = x.iter().rev().map(|t| Trop(t.0 + shift)).collect();
        let once = swap(&x, &y).unwrap();
        let twice = swap(&once.x_out, &once.y_out).unwrap();
        prop_assert_eq!(twice.x_out, x);
        prop_assert_eq!(twice.y_out, y);
    }

    #[test]
    fn swaps_preserve_the_whirl_product(p in small_point(), k in 1u32..3) {
        prop_assume!(k < p.m());
        let q = apply_word_values(&p, &PermWord::new(vec![k]).unwrap()).unwrap();
        prop_assert_eq!(whirl_product(&q), whirl_product(&p));
    }

    #[test]
    fn loop_elementary_functions_are_invariant(p in small_point(), k in 1u32..3) {
        prop_assume!(k < p.m());
        let q = apply_word_values(&p, &PermWord::new(vec![k]).unwrap()).unwrap();
        for kk in 1..=p.m() as i64 {
            for r in 1..=p.n() as i64 {
                prop_assert_eq!(loop_e(&q, kk, r), loop_e(&p, kk, r));
            }
        }
    }

    #[test]
    fn point_json_round_trip(p in small_point()) {
        let text = serde_json::to_string(&LoopVarJson::from_values(&p)).unwrap();
        let back: LoopVarJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_values().unwrap(), p);
    }

    #[test]
    fn boxball_evolutions_agree(boxes in prop::collection::vec(any::<bool>(), 0..30)) {
        let s = BoxBallState::from_boxes(boxes);
        let next = evolve_leftmost(&s);
        prop_assert_eq!(next.balls(), s.balls());
        prop_assert_eq!(evolve_carrier(&s, Capacity::Infinite).unwrap(), next.clone());
        prop_assert!(ConservationLaw::CarrierChain.holds_on(&s));
    }

    #[test]
    fn comb_r_is_an_involution(b1 in row(3), b2 in row(3)) {
        let (c1, c2) = comb_r_tropical(&b1, &b2);
        prop_assert_eq!(comb_r_jdt(&b1, &b2).unwrap(), (c1.clone(), c2.clone()));
        prop_assert_eq!(c1.len() + c2.len(), b1.len() + b2.len());
        prop_assert_eq!(comb_r_tropical(&c1, &c2), (b1, b2));
    }

    #[test]
    fn toeplitz_windows_nest(p in small_point(), first in 0usize..3, w in 1usize..3) {
        let big = toeplitz_window(&whirl_product(&p), 5);
        prop_assert_eq!(big.sub_window(first, w), toeplitz_window(&whirl_product(&p), w).matrix);
    }

    #[test]
    fn positive_whirl_products_are_tnn(p in small_point()) {
        let r = tnn_check(&whirl_product(&p), 3, 2);
        prop_assert!(r.passed(), "{}", r);
    }
}
