use super::*;
use crate::algroup::AlgebraGroup;
use crate::ffield::Field;
use crate::grouptab::library;
use crate::nilalg::NilAlgebra;

fn b() -> Budgets {
    Budgets::default()
}

fn exps(g: &FiniteGroupTable, p: u32, e: u32) -> Vec<u32> {
    build_mq(g, p, e, &b()).unwrap().invariant_exponents().unwrap()
}

#[test]
fn hand_computed_anchors() {
    assert_eq!(exps(&library::cyclic(2).unwrap(), 2, 1), vec![1]);
    let c4 = library::cyclic(4).unwrap();
    let m = build_mq(&c4, 2, 1, &b()).unwrap();
    assert_eq!(m.invariant_factors().unwrap(), vec![BigUint::from(2u32), BigUint::from(4u32)]);
    assert_eq!(m.order().unwrap(), BigUint::from(8u32));
    let (ok, layers) = m.verify_filtration().unwrap();
    assert!(ok);
    assert_eq!(
        layers.iter().map(|l| l.measured_log_p).collect::<Vec<_>>(),
        vec![2, 1]
    );
    let c2q4 = build_mq(&library::cyclic(2).unwrap(), 2, 2, &b()).unwrap();
    assert_eq!(c2q4.generator_count(), 2);
    assert_eq!(c2q4.order().unwrap(), BigUint::from(4u32));
    let trivial = build_mq(&library::cyclic(1).unwrap(), 2, 1, &b()).unwrap();
    assert_eq!(trivial.order().unwrap(), BigUint::from(1u32));
}

#[test]
fn abelian_groups_have_order_p_to_the_order_minus_one() {
    for name in ["C4xC2", "C2^3", "C8", "C4xC4", "C9xC3", "C27"] {
        let g = library::named_group(name, &b()).unwrap();
        let p = g.p_group_prime().unwrap();
        let m = build_mq(&g, p, 1, &b()).unwrap();
        assert_eq!(m.order().unwrap(), BigUint::from(p).pow(g.order() as u32 - 1), "{name}");
    }
    let c2_3 = library::named_group("C2^3", &b()).unwrap();
    assert_eq!(exps(&c2_3, 2, 1), vec![1; 7]);
}

#[test]
fn d8_filtration() {
    let d8 = library::dihedral8(&b()).unwrap();
    let m = build_mq(&d8, 2, 1, &b()).unwrap();
    assert_eq!(m.layer_classes.iter().sum::<usize>(), 4);
    assert_eq!(m.order().unwrap(), BigUint::from(16u32));
    assert!(m.verify_filtration().unwrap().0);
}

#[test]
fn order_is_q_to_the_k_minus_one_on_library() {
    for (name, g) in library::corpus_groups(&b()).unwrap() {
        let p = g.p_group_prime().unwrap();
        for e in [1, 2] {
            let m = build_mq(&g, p, e, &b()).unwrap();
            assert_eq!(m.order().unwrap(), m.expected_order(), "{name}, e = {e}");
            assert!(m.verify_filtration().unwrap().0, "{name}, e = {e}");
        }
    }
}

#[test]
fn independent_of_precision_and_basis() {
    for name in ["Q16", "SD16", "M27", "C4:C4"] {
        let g = library::named_group(name, &b()).unwrap();
        let p = g.p_group_prime().unwrap();
        let base = build_mq(&g, p, 2, &b()).unwrap();
        let higher = build_mq_with(&g, p, 2, Some(base.v + 1), ExtensionBasis::Teichmuller, &b()).unwrap();
        let monomial = build_mq_with(&g, p, 2, None, ExtensionBasis::Monomial, &b()).unwrap();
        let reference = base.invariant_exponents().unwrap();
        assert_eq!(higher.invariant_exponents().unwrap(), reference, "{name}");
        assert_eq!(monomial.invariant_exponents().unwrap(), reference, "{name}");
    }
}

#[test]
fn independent_of_generator_order() {
    let g = library::named_group("D16", &b()).unwrap();
    let m = build_mq(&g, 2, 2, &b()).unwrap();
    let mut shuffled = m.clone();
    shuffled.relations.reverse();
    for row in &mut shuffled.relations {
        row.reverse();
    }
    assert_eq!(shuffled.invariant_exponents().unwrap(), m.invariant_exponents().unwrap());
}

#[test]
fn prediction_matches_brute_force_abelianization() {
    let f2 = Field::prime(2).unwrap();
    for name in ["D8", "Q8", "C2xC2", "C4"] {
        let g = library::named_group(name, &b()).unwrap();
        let b0 = library::bogomolov_multiplier_order(name).unwrap();
        let predicted = predicted_ab_order(&g, 2, 1, b0, &b()).unwrap();
        let alg = AlgebraGroup::new(NilAlgebra::make_augmentation_ideal(&g, &f2, &b()).unwrap());
        assert_eq!(predicted, BigUint::from(alg.abelianization_order(&b()).unwrap()), "{name}");
    }
    let c2c2 = library::named_group("C2xC2", &b()).unwrap();
    assert!(matches!(predicted_ab_order(&c2c2, 3, 1, 1, &b()), Err(Error::Domain(_))));
    assert!(matches!(build_mq(&c2c2, 3, 1, &b()), Err(Error::Domain(_))));
}
