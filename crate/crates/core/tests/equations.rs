use proptest::prelude::*;
use qcode_core::ca_engine::{
    a_equation, all_odd_closed_form, ca_add, derive_equation, equation_for, lift_insert_zero,
    toggle_entry, KEquation,
};
use qcode_core::design::{cell_count, cell_pattern};
use qcode_core::golden::{inner_product_a, inner_product_k};
use qcode_core::{build_system, WordType, Z4};

fn word_type(max_p: usize) -> impl Strategy<Value = WordType> {
    (1..=max_p).prop_flat_map(|p| {
        prop::collection::vec(0u8..4, p)
            .prop_map(|v| WordType::new(v.into_iter().map(Z4::new).collect()))
    })
}

#[test]
fn every_derived_equation_matches_inner_product() {
    for p in 1..=5 {
        let sys = build_system(p).unwrap();
        for (w, row) in sys.k_order.iter().zip(&sys.c) {
            assert_eq!(row, &inner_product_k(w), "k_{}", w);
        }
        for (w, row) in sys.a_order.iter().zip(&sys.b) {
            assert_eq!(row, &inner_product_a(w), "a_{}", w);
        }
    }
}

#[test]
fn all_odd_derivation_matches_closed_form() {
    for p in 1..=6 {
        let w = WordType::new(vec![Z4::ONE; p]);
        assert_eq!(
            derive_equation(&w).unwrap(),
            all_odd_closed_form(p).unwrap()
        );
    }
}

#[test]
fn coefficient_rows_sum_to_fixed_totals() {
    // each k-row sums to 4^p and each a-row to 4^p / 2
    for p in 1..=4 {
        let sys = build_system(p).unwrap();
        for row in &sys.c {
            assert_eq!(
                row.iter().map(|&x| x as usize).sum::<usize>(),
                cell_count(p)
            );
        }
        for row in &sys.b {
            assert_eq!(
                row.iter().map(|&x| x as usize).sum::<usize>(),
                cell_count(p) / 2
            );
        }
    }
}

proptest! {
    #[test]
    fn ca_add_is_commutative(x in word_type(4), seed in any::<u64>()) {
        let p = x.p();
        let y = WordType::new(cell_pattern(seed as usize % cell_count(p), p));
        let kx = equation_for(&x).unwrap();
        let ky = equation_for(&y).unwrap();
        prop_assert_eq!(ca_add(&kx, &ky).unwrap(), ca_add(&ky, &kx).unwrap());
    }

    #[test]
    fn equation_for_any_type_is_inner_product(w in word_type(4)) {
        let k = equation_for(&w).unwrap();
        prop_assert_eq!(&k.wtype, &w);
        prop_assert_eq!(k.coeffs, inner_product_k(&w));
    }

    #[test]
    fn negation_preserves_equation(w in word_type(4)) {
        let neg = WordType::new(w.entries().iter().map(|&x| -x).collect());
        prop_assert_eq!(equation_for(&w).unwrap().coeffs, equation_for(&neg).unwrap().coeffs);
    }

    #[test]
    fn a_equation_depends_on_parity_only(w in word_type(4), flips in any::<u8>()) {
        prop_assume!(!w.is_all_even());
        let shifted = WordType::new(
            w.entries()
                .iter()
                .enumerate()
                .map(|(j, &x)| if flips >> j & 1 == 1 { x + Z4::TWO } else { x })
                .collect(),
        );
        let a = a_equation(&w).unwrap();
        let b = a_equation(&shifted).unwrap();
        prop_assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn toggle_twice_is_identity(w in word_type(4), l in 0usize..4) {
        let l = l % w.p();
        let k = equation_for(&w).unwrap();
        prop_assert_eq!(toggle_entry(&toggle_entry(&k, l).unwrap(), l).unwrap(), k);
    }

    #[test]
    fn inserting_zero_keeps_coefficients(w in word_type(3), l in 0usize..4) {
        let l = l % (w.p() + 1);
        let k = equation_for(&w).unwrap();
        let lifted = lift_insert_zero(&k, l).unwrap();
        prop_assert_eq!(lifted.coeffs, inner_product_k(&lifted.wtype));
    }
}

#[test]
fn zero_equation_is_identity() {
    let k = equation_for(&WordType::from_label("123").unwrap()).unwrap();
    assert_eq!(ca_add(&k, &KEquation::zero(3)).unwrap(), k);
}
