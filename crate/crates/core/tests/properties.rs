//! Vanishing of H^2 away from weight zero and away from degrees divisible by p.

use modlie::arith::Fp;
use modlie::ceco::{degree_slice, ComplexSlice, Module, SliceSpec, DEFAULT_NNZ_BUDGET};
use modlie::commalg::make_divided_powers;
use modlie::liealg::{current_algebra, make_w1, LieAlgebra};
use proptest::prelude::*;

fn algebra(p: u32, current: bool) -> LieAlgebra {
    let f = Fp::new(p).unwrap();
    let w = make_w1(1, &f).unwrap();
    if current {
        current_algebra(&w, &make_divided_powers(1, &f).unwrap()).unwrap()
    } else {
        w
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nonzero_weight_slices_are_acyclic(p in prop::sample::select(vec![5u32, 7]), current: bool, w in 1u32..7, n in 1usize..=2) {
        let w = w % p;
        prop_assume!(w != 0 && !(current && p == 7));
        let l = algebra(p, current);
        let h = ComplexSlice::new(&l, Module::Adjoint, SliceSpec::weight(w)).unwrap().cohomology(n, DEFAULT_NNZ_BUDGET).unwrap();
        prop_assert_eq!(h.dim, 0);
    }

    #[test]
    fn degrees_prime_to_p_are_acyclic(p in prop::sample::select(vec![5u32, 7]), current: bool, i in -12i64..20) {
        prop_assume!(i.rem_euclid(p as i64) != 0 && !(current && p == 7));
        let l = algebra(p, current);
        let h = degree_slice(&l, Module::Adjoint, i).unwrap().cohomology(2, DEFAULT_NNZ_BUDGET).unwrap();
        prop_assert_eq!(h.dim, 0);
    }
}
