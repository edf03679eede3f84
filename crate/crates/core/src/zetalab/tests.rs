use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::{prop_assert_eq, proptest};

use super::*;
use crate::budget::Budgets;
use crate::error::Error;

fn naive_product_counts(multisets: &[Vec<u64>], cutoff: u64) -> Vec<u64> {
    // Every tuple of one degree per factor, multiplied out.
    let mut counts = vec![0u64; cutoff as usize + 1];
    counts[1] = 1;
    for degrees in multisets {
        let mut next = vec![0u64; cutoff as usize + 1];
        for (n, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &d in degrees {
                let m = n as u64 * d;
                if m <= cutoff {
                    next[m as usize] += c;
                }
            }
        }
        counts = next;
    }
    counts
}

fn as_u64(s: &TruncatedDirichlet) -> Vec<u64> {
    (0..=s.cutoff()).map(|n| s.coeff(n).to_u64().unwrap()).collect()
}

#[test]
fn sl2_small_cases() {
    assert_eq!(sl2_degrees(5).unwrap().expanded(), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    let d5 = sl2_degrees(5).unwrap();
    assert_eq!((d5.count(), d5.sum_of_squares()), (9, 120));
    let d7 = sl2_degrees(7).unwrap();
    assert_eq!((d7.count(), d7.sum_of_squares()), (11, 336));
    let d9 = sl2_degrees(9).unwrap();
    assert_eq!((d9.count(), d9.sum_of_squares()), (13, 720));
    assert_eq!(d9.min_nontrivial(), Some(4));
}

#[test]
fn sl2_rejects_bad_q() {
    for q in [2, 3, 4, 8, 15, 21] {
        assert!(matches!(sl2_degrees(q), Err(Error::Domain(_))), "q = {q}");
    }
}

#[test]
fn sl2_identities_up_to_1000() {
    for q in (5..=1000u64).step_by(2).filter(|&q| is_prime_power(q)) {
        let d = sl2_degrees(q).unwrap();
        assert_eq!(d.count(), q as u128 + 4);
        assert_eq!(d.sum_of_squares(), q as u128 * (q as u128 * q as u128 - 1));
    }
}

#[test]
fn lie_type_guard_and_names() {
    assert!(LieTypeSpec::new(1, 2, 2).is_err());
    assert_eq!(LieTypeSpec::from_name("A1").unwrap(), LieTypeSpec::A1);
    assert_eq!(LieTypeSpec::from_name("B_2").unwrap(), LieTypeSpec::B2);
    assert_eq!(LieTypeSpec::from_name("g2").unwrap(), LieTypeSpec::G2);
    let e8 = LieTypeSpec::from_name("E8").unwrap();
    assert_eq!((e8.rank, e8.pos_roots, e8.coxeter), (8, 120, 30));
    assert!(LieTypeSpec::from_name("D3").is_err());
}

#[test]
fn akov_terms() {
    let q = PrimePower::new(7, 1).unwrap();
    let (a, n) = LieTypeSpec::A1.akov_term(&q);
    assert_eq!((a, n), (BigUint::from(7u32), BigUint::from(7u32)));

    let a2 = LieTypeSpec::from_name("A2").unwrap();
    let spec = FactorSpec::new(vec![Factor {
        lie_type: a2,
        q: PrimePower::new(2, 1).unwrap(),
        mult: 1u32.into(),
    }]);
    let s = product_series(&spec, 20, SeriesMode::Akov, &Budgets::default()).unwrap();
    assert_eq!(s.coeff(8), BigUint::from(4u32));
    assert_eq!(s.support(), vec![1, 8]);
    assert_eq!(s.provenance(), Provenance::AkovApprox);
}

#[test]
fn akov_power_is_binomial() {
    // (1 + 2·2^{-s})^5 up to 2^3: r_{2^j} = C(5, j) 2^j.
    let spec = FactorSpec::new(vec![Factor {
        lie_type: LieTypeSpec::A1,
        q: PrimePower::new(2, 1).unwrap(),
        mult: 5u32.into(),
    }]);
    let s = product_series(&spec, 9, SeriesMode::Akov, &Budgets::default()).unwrap();
    let got: Vec<u64> = [1, 2, 4, 8].iter().map(|&n| s.coeff(n).to_u64().unwrap()).collect();
    assert_eq!(got, vec![1, 10, 40, 80]);
    assert_eq!(s.total(), BigUint::from(131u32));
}

#[test]
fn trivial_series_is_identity() {
    let f = sl2_degrees(7).unwrap().series(50);
    let one = TruncatedDirichlet::one(50);
    assert_eq!(dirichlet_product(&f, &one, 50).unwrap(), f);
    assert_eq!(dirichlet_product(&one, &f, 50).unwrap(), f);
}

#[test]
fn sl2_5_squared() {
    let f = sl2_degrees(5).unwrap().series(36);
    let ff = dirichlet_product(&f, &f, 36).unwrap();
    assert_eq!(ff.total(), BigUint::from(81u32));
    let d = sl2_degrees(5).unwrap().expanded();
    assert_eq!(as_u64(&ff), naive_product_counts(&[d.clone(), d], 36));
    assert_eq!(ff.coeff(4), BigUint::from(8u32));
}

#[test]
fn product_cutoff_must_be_covered() {
    let f = TruncatedDirichlet::one(10);
    let g = TruncatedDirichlet::one(20);
    assert!(dirichlet_product(&f, &g, 15).is_err());
}

#[test]
fn tower_product_matches_tuple_enumeration() {
    let spec = FactorSpec::sl2_tower(5, 6).unwrap();
    let s = product_series(&spec, 100, SeriesMode::Exact, &Budgets::default()).unwrap();
    // (5^3 - 1)/2 = 62 ≤ 100 < (5^4 - 1)/2, so only the first three factors matter.
    let multisets: Vec<Vec<u64>> = [5, 25, 125]
        .iter()
        .map(|&q| sl2_degrees(q).unwrap().expanded())
        .collect();
    assert_eq!(as_u64(&s), naive_product_counts(&multisets, 100));
    let three = FactorSpec::sl2_tower(5, 3).unwrap();
    let s3 = product_series(&three, 100, SeriesMode::Exact, &Budgets::default()).unwrap();
    assert_eq!(s, s3);
}

#[test]
fn exact_power_matches_repeated_product() {
    let spec = FactorSpec::new(vec![Factor {
        lie_type: LieTypeSpec::A1,
        q: PrimePower::new(7, 1).unwrap(),
        mult: 3u32.into(),
    }]);
    let s = product_series(&spec, 300, SeriesMode::Exact, &Budgets::default()).unwrap();
    let d = sl2_degrees(7).unwrap().expanded();
    assert_eq!(as_u64(&s), naive_product_counts(&[d.clone(), d.clone(), d], 300));
}

#[test]
fn empty_and_skipped_factors() {
    let b = Budgets::default();
    let s = product_series(&FactorSpec::default(), 40, SeriesMode::Exact, &b).unwrap();
    assert_eq!(s, TruncatedDirichlet::one(40));
    let zero_mult = FactorSpec::new(vec![Factor {
        lie_type: LieTypeSpec::A1,
        q: PrimePower::new(5, 1).unwrap(),
        mult: BigUint::zero(),
    }]);
    let s = product_series(&zero_mult, 40, SeriesMode::Exact, &b).unwrap();
    assert_eq!(s, TruncatedDirichlet::one(40));
}

#[test]
fn exact_mode_rejects_other_types() {
    let spec = FactorSpec::new(vec![Factor {
        lie_type: LieTypeSpec::B2,
        q: PrimePower::new(3, 1).unwrap(),
        mult: 1u32.into(),
    }]);
    let err = product_series(&spec, 100, SeriesMode::Exact, &Budgets::default()).unwrap_err();
    assert!(matches!(err, Error::Domain(ref m) if m.contains("unsupported factor")));
}

#[test]
fn cutoff_budget() {
    let mut b = Budgets::default();
    b.series_cutoff = 1000;
    let err = product_series(&FactorSpec::default(), 1001, SeriesMode::Exact, &b).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn l_of_n_examples() {
    let tower = FactorSpec::sl2_tower(5, 8).unwrap();
    assert_eq!(l_of_n(&tower, 2, SeriesMode::Exact).unwrap(), 1u32.into());
    assert_eq!(l_of_n(&tower, 1, SeriesMode::Exact).unwrap(), 0u32.into());
    assert_eq!(l_of_n(&tower, 12, SeriesMode::Exact).unwrap(), 2u32.into());
    let cube = FactorSpec::new(vec![Factor {
        lie_type: LieTypeSpec::A1,
        q: PrimePower::new(5, 1).unwrap(),
        mult: 3u32.into(),
    }]);
    assert_eq!(l_of_n(&cube, 2, SeriesMode::Exact).unwrap(), 3u32.into());
    let mut prev = BigUint::zero();
    for n in 1..2000 {
        let l = l_of_n(&tower, n, SeriesMode::Exact).unwrap();
        assert!(l >= prev);
        prev = l;
    }
}

#[test]
fn upper_bound_dominates_exact_count() {
    let tower = FactorSpec::sl2_tower(7, 6).unwrap();
    let bound = MinDegreeBound::default();
    for n in [1, 3, 10, 100, 10_000] {
        assert!(l_upper_bound(&tower, n, &bound) >= l_of_n(&tower, n, SeriesMode::Exact).unwrap());
    }
}

#[test]
fn prg_witness_on_products() {
    let b = Budgets::default();
    let tower = FactorSpec::sl2_tower(3, 12).unwrap();
    let s = product_series(&tower, 4096, SeriesMode::Exact, &b);
    // SL_2(F_3) is outside the exact data.
    assert!(s.is_err());
    let tower = FactorSpec::sl2_tower(5, 6).unwrap();
    let s = product_series(&tower, 4096, SeriesMode::Exact, &b).unwrap();
    for n in [2, 4, 8, 16, 64] {
        let w = prg_witness(&s, &tower, n, SeriesMode::Exact).unwrap();
        assert!(w.holds, "{w:?}");
    }
    assert!(prg_witness(&s, &tower, 65, SeriesMode::Exact).is_err());
}

#[test]
fn single_group_abscissa_is_small() {
    let small = abscissa_estimate(&sl2_degrees(5).unwrap().series(100)).unwrap();
    let large = abscissa_estimate(&sl2_degrees(5).unwrap().series(100_000)).unwrap();
    assert!(large.tail_max < small.tail_max);
    assert!(large.tail_max < 0.4);
}

#[test]
fn synthetic_abscissa() {
    for c in [0.5, 1.0, 2.0] {
        let s = synthetic_power_series(c, 100_000).unwrap();
        assert_eq!(s.total(), BigUint::from((100_000f64.powf(c)).round() as u64));
        let est = abscissa_estimate(&s).unwrap();
        assert!((est.tail_max - c).abs() < 0.05, "c = {c}: {}", est.tail_max);
        assert!((est.slope - c).abs() < 0.05, "c = {c}: {}", est.slope);
    }
}

#[test]
fn grid_is_geometric_and_ends_at_cutoff() {
    let g = abscissa::geometric_grid(1000);
    assert_eq!(*g.first().unwrap(), 2);
    assert_eq!(*g.last().unwrap(), 1000);
    assert!(g.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn target_guards() {
    let half = Ratio::new(1, 2);
    assert!(matches!(
        target_abscissa_spec(Ratio::from_integer(1), LieTypeSpec::A1, 5),
        Err(Error::Domain(_))
    ));
    let a2 = LieTypeSpec::from_name("A2").unwrap();
    assert!(matches!(target_abscissa_spec(Ratio::from_integer(3), a2, 5), Err(Error::Domain(_))));
    // k h c = 4 > 2 but h c = 2.
    assert!(matches!(target_abscissa_spec(half, LieTypeSpec::B2, 5), Err(Error::Domain(_))));
    assert!(target_abscissa_spec(half, LieTypeSpec::G2, 5).is_ok());
    assert!(target_abscissa_spec(Ratio::from_integer(2), LieTypeSpec::A1, 4).is_err());
}

#[test]
fn target_a1_c2() {
    let t = target_abscissa_spec(Ratio::from_integer(2), LieTypeSpec::A1, 5).unwrap();
    assert_eq!(t.n0, 0);
    for i in 1..30 {
        assert_eq!(t.a(i), 2 * i as i64);
        assert_eq!(t.multiplicity(i), BigUint::from(5u32).pow(i as u32));
    }
}

#[test]
fn target_sequence_properties() {
    for (c, ty) in [
        (Ratio::new(1, 2), LieTypeSpec::G2),
        (Ratio::new(7, 3), LieTypeSpec::A1),
        (Ratio::from_integer(1), LieTypeSpec::B2),
    ] {
        let t = target_abscissa_spec(c, ty, 3).unwrap();
        for i in 1..200u64 {
            let a = Ratio::from_integer(t.a(i));
            let gap = c - a / Ratio::from_integer(i as i64);
            assert!(gap >= Ratio::from_integer(0) && gap < Ratio::new(1, i as i64));
            if i > t.n0 {
                let term = t.term(i);
                let k = ty.rank as i64;
                let h = ty.coxeter as i64;
                assert_eq!(term.log_p_mult.unwrap() as i64 * 2, k * (h * term.a - 2 * i as i64));
            } else {
                assert!(t.multiplicity(i).is_zero());
            }
        }
    }
}

#[test]
fn target_partial_sums_dichotomy() {
    for (c, ty) in [
        (Ratio::new(1, 2), LieTypeSpec::G2),
        (Ratio::from_integer(1), LieTypeSpec::B2),
        (Ratio::from_integer(2), LieTypeSpec::A1),
    ] {
        let t = target_abscissa_spec(c, ty, 5).unwrap();
        let cf = c.to_f64().unwrap();
        let above = akov_partial_sums(&t, cf + 0.1, 400);
        let below = akov_partial_sums(&t, cf - 0.1, 400);
        assert!(*above.last().unwrap() < 3.0);
        assert!(*below.last().unwrap() > 6.0);
        assert!(above.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn target_factor_spec_feeds_akov_product() {
    let t = target_abscissa_spec(Ratio::from_integer(2), LieTypeSpec::A1, 5).unwrap();
    let spec = t.factor_spec(6).unwrap();
    let s = product_series(&spec, 1000, SeriesMode::Akov, &Budgets::default()).unwrap();
    // Factor i contributes (1 + 5^i (5^i)^{-s})^{5^i}; at n = 5, r_5 = 5 * 5.
    assert_eq!(s.coeff(5), BigUint::from(25u32));
    for n in [2, 4, 8, 16, 30] {
        let w = prg_witness(&s, &spec, n, SeriesMode::Akov).unwrap();
        assert!(w.holds, "{w:?}");
    }
}

fn brute_ordered_factorizations(n: u64) -> u128 {
    if n == 1 {
        return 1;
    }
    (2..=n).filter(|d| n % d == 0).map(|d| brute_ordered_factorizations(n / d)).sum()
}

#[test]
fn divisor_tuples() {
    assert_eq!(divisor_tuple_count(8), 4);
    assert_eq!(divisor_tuple_count(12), 8);
    assert_eq!(divisor_tuple_count(97), 1);
    for n in 1..400 {
        assert_eq!(divisor_tuple_count(n), brute_ordered_factorizations(n), "n = {n}");
    }
    // A fixed polynomial bound holds across the range.
    for n in 2..5000u64 {
        assert!(divisor_tuple_count(n) as f64 <= (n as f64).powi(2));
    }
}

#[test]
fn spec_json_forms() {
    let text = r#"[
        {"type": {"rank": 1, "pos_roots": 1, "coxeter": 2}, "q": 25, "mult": 2},
        {"type": "B2", "q": {"p": 3, "e": 2}, "mult": "123456789012345678901234567890"},
        {"type": "A1", "q": 7}
    ]"#;
    let spec: FactorSpec = serde_json::from_str(text).unwrap();
    assert_eq!(spec.len(), 3);
    assert_eq!(spec.factors[0].q, PrimePower { p: 5, e: 2 });
    assert_eq!(spec.factors[1].lie_type, LieTypeSpec::B2);
    assert_eq!(spec.factors[1].mult.to_string(), "123456789012345678901234567890");
    assert_eq!(spec.factors[2].mult, 1u32.into());
    let back: FactorSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(back, spec);

    let bad = r#"[{"type": {"rank": 1, "pos_roots": 2, "coxeter": 2}, "q": 5}]"#;
    assert!(serde_json::from_str::<FactorSpec>(bad).is_err());
    let bad_q = r#"[{"type": "A1", "q": 12}]"#;
    assert!(serde_json::from_str::<FactorSpec>(bad_q).is_err());
}

fn sparse_series(entries: &[(u64, u64)], cutoff: u64) -> TruncatedDirichlet {
    let mut s = TruncatedDirichlet::zero(cutoff, Provenance::Exact);
    for &(n, c) in entries {
        s.add_at(n, &BigUint::from(c));
    }
    s
}

proptest! {
    #[test]
    fn product_commutes_and_associates(
        a in proptest::collection::vec((1u64..=120, 0u64..50), 0..12),
        b in proptest::collection::vec((1u64..=120, 0u64..50), 0..80),
        c in proptest::collection::vec((1u64..=120, 0u64..50), 0..12),
    ) {
        let n = 120;
        let (f, g, h) = (sparse_series(&a, n), sparse_series(&b, n), sparse_series(&c, n));
        prop_assert_eq!(dirichlet_product(&f, &g, n).unwrap(), dirichlet_product(&g, &f, n).unwrap());
        let left = dirichlet_product(&dirichlet_product(&f, &g, n).unwrap(), &h, n).unwrap();
        let right = dirichlet_product(&f, &dirichlet_product(&g, &h, n).unwrap(), n).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_total_is_at_most_product_of_totals(
        a in proptest::collection::vec((1u64..=60, 0u64..20), 0..10),
        b in proptest::collection::vec((1u64..=60, 0u64..20), 0..10),
    ) {
        let f = sparse_series(&a, 60);
        let g = sparse_series(&b, 60);
        let fg = dirichlet_product(&f, &g, 60).unwrap();
        proptest::prop_assert!(fg.total() <= f.total() * g.total());
    }
}
