use num_bigint::BigInt;
use proptest::prelude::*;

use weightcx::cell::skeletal_filtration;
use weightcx::chain::{cone, homology, minimize, pi0_hom, ChainComplex};
use weightcx::document::{parse_complex, write_complex};
use weightcx::fuzz::oracle::rank_by_elimination;
use weightcx::fuzz::{gen_chain_map, gen_complex, GenParams};
use weightcx::kzero::{euler_char, euler_char_homology, k0_via_filtration};
use weightcx::linalg::{rank, smith_normal_form, Matrix, Ring};
use weightcx::weight::{in_t_geq, in_w_geq, t_cotruncate, weight_decompose};

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Integers), Just(Ring::PrimeField(2)), Just(Ring::PrimeField(3)), Just(Ring::PrimeField(7))]
}

fn complex(seed: u64, ring: Ring) -> weightcx::fuzz::Generated {
    gen_complex(&GenParams { seed, ring, max_rank: 4, ..GenParams::default() })
}

fn matrix_strategy() -> impl Strategy<Value = (Ring, Matrix)> {
    (ring_strategy(), 0usize..6, 0usize..6).prop_flat_map(|(ring, r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            (ring, Matrix::from_fn(ring, r, c, |i, j| BigInt::from(v[i * c + j])))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_homology_is_computed_homology(seed in any::<u64>(), ring in ring_strategy()) {
        let g = complex(seed, ring);
        prop_assert_eq!(homology(&g.complex), g.expected);
    }

    #[test]
    fn rank_agrees_with_elimination((_, m) in matrix_strategy()) {
        prop_assert_eq!(rank(&m), rank_by_elimination(&m));
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d);
    }

    #[test]
    fn euler_characteristic_telescopes(seed in any::<u64>(), ring in ring_strategy()) {
        let x = complex(seed, ring).complex;
        prop_assert_eq!(euler_char(&x), euler_char_homology(&x));
        prop_assert_eq!(k0_via_filtration(&skeletal_filtration(&x)).unwrap(), euler_char(&x));
    }

    #[test]
    fn homology_commutes_with_shift_and_sum(a in any::<u64>(), b in any::<u64>(), k in -3i64..=3) {
        let x = complex(a, Ring::Integers).complex;
        let y = complex(b, Ring::Integers).complex;
        prop_assert_eq!(homology(&x.shift(k)), homology(&x).shift(k));
        prop_assert_eq!(homology(&x.direct_sum(&y).unwrap()), homology(&x).direct_sum(&homology(&y)));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), ring in ring_strategy()) {
        let x = complex(seed, ring).complex;
        prop_assert_eq!(parse_complex(&write_complex(&x)).unwrap(), x);
    }

    #[test]
    fn minimization_keeps_homology(seed in any::<u64>(), ring in ring_strategy()) {
        let x = complex(seed, ring).complex;
        let m = minimize(&x).unwrap();
        prop_assert_eq!(homology(&m.complex), homology(&x));
        prop_assert!(m.complex.total_rank() <= x.total_rank());
        if ring.is_field() {
            // over a field the minimal complex is its homology
            prop_assert!(m.complex.diffs().iter().all(|d| d.is_zero()));
        }
    }

    #[test]
    fn cone_euler_is_difference(a in any::<u64>(), b in any::<u64>(), s in any::<u64>()) {
        let x = complex(a, Ring::Integers).complex;
        let y = complex(b, Ring::Integers).complex;
        let f = gen_chain_map(s, &x, &y).unwrap();
        prop_assert_eq!(cone(&f).complex.euler_characteristic(), y.euler_characteristic() - x.euler_characteristic());
    }

    #[test]
    fn maps_out_of_a_point_are_homology(seed in any::<u64>(), i in -4i64..=4) {
        // π_0 Hom(Z[i], X) = H_i(X)
        let x = complex(seed, Ring::Integers).complex;
        let point = ChainComplex::free(Ring::Integers, i, 1);
        prop_assert_eq!(pi0_hom(&point, &x).unwrap().0, homology(&x).get(i));
    }

    #[test]
    fn decomposition_is_additive(seed in any::<u64>(), n in -5i64..=5) {
        let x = complex(seed, Ring::Integers).complex;
        let d = weight_decompose(&x, n).unwrap();
        prop_assert_eq!(euler_char(&x), euler_char(&d.a) + euler_char(&d.b));
    }

    #[test]
    fn cotruncation_keeps_high_homology(seed in any::<u64>(), n in -5i64..=5) {
        let x = complex(seed, Ring::Integers).complex;
        let t = t_cotruncate(&x, n);
        let (hx, ht) = (homology(&x), homology(&t.complex));
        for i in n..=6 {
            prop_assert_eq!(hx.get(i), ht.get(i));
        }
        prop_assert!(ht.min_degree().is_none_or(|lo| lo >= n));
        prop_assert_eq!(in_t_geq(&x, n), in_w_geq(&x, n));
    }
}
