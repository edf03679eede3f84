//! Cross-module identity suites run over the bundled corpus.
//!
//! Every check records a pass/fail line instead of aborting, so one run reports
//! all failures.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algroup::{size_of, AlgebraGroup};
use crate::bogomod::build_mq;
use crate::budget::Budgets;
use crate::coadjoint::{Coadjoint, CyclotomicValue};
use crate::corpus::{self, CorpusAlgebra};
use crate::error::{Error, Result};
use crate::grouptab::library;
use crate::nilalg::NilAlgebra;
use crate::zetalab::{
    abscissa_estimate, akov_partial_sums, prg_witness, product_series, sl2_degrees,
    synthetic_power_series, target_abscissa_spec, FactorSpec, LieTypeSpec, SeriesMode,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Suite names in run order.
pub const SUITES: [&str; 11] = [
    "assoc",
    "duality",
    "fake-degree",
    "characters",
    "abelianization",
    "disproof",
    "mq",
    "sl2",
    "abscissa",
    "target",
    "prg",
];

/// The suite that decides each numbered acceptance criterion.
pub const CRITERIA: [(u32, &str); 10] = [
    (1, "duality"),
    (2, "fake-degree"),
    (3, "characters"),
    (4, "abelianization"),
    (5, "disproof"),
    (6, "mq"),
    (7, "sl2"),
    (8, "abscissa"),
    (9, "target"),
    (10, "prg"),
];

fn check(
    suite: &'static str,
    name: impl Into<String>,
    f: impl FnOnce() -> Result<(bool, String)>,
) -> CheckResult {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, e.to_string()),
    };
    CheckResult {
        suite,
        name: name.into(),
        passed,
        detail,
    }
}

pub fn run_suite(name: &str, budgets: &Budgets) -> Result<Vec<CheckResult>> {
    Ok(match name {
        "assoc" => assoc(budgets),
        "duality" => duality(budgets),
        "fake-degree" => fake_degrees(budgets),
        "characters" => characters(budgets),
        "abelianization" => abelianization(budgets),
        "disproof" => vec![disproof(budgets)],
        "mq" => mq(budgets),
        "sl2" => sl2(),
        "abscissa" => abscissa(budgets),
        "target" => target(),
        "prg" => prg(budgets),
        _ => {
            return Err(Error::validation(format!(
                "unknown suite `{name}` (known: {})",
                SUITES.join(", ")
            )))
        }
    })
}

/// Parses an algebra file and reports whether it passes construction checks
/// (associativity with a witness triple, nilpotency) and survives a round trip.
pub fn check_algebra_text(name: &str, text: &str, budgets: &Budgets) -> CheckResult {
    check("assoc", name, || {
        let alg = NilAlgebra::parse(text, budgets)?;
        round_trip(&alg, budgets)
    })
}

fn round_trip(alg: &NilAlgebra, budgets: &Budgets) -> Result<(bool, String)> {
    let back = NilAlgebra::parse(&alg.to_file_string(), budgets)?;
    let same = back.structure_constants() == alg.structure_constants();
    Ok((
        same,
        format!("dim {}, class {}, round trip {}", alg.dim(), alg.class(), if same { "ok" } else { "differs" }),
    ))
}

fn assoc(budgets: &Budgets) -> Vec<CheckResult> {
    let mut algebras = corpus::unitriangular_algebras();
    algebras.extend(corpus::duality_algebras());
    algebras
        .iter()
        .map(|a| check("assoc", &a.name, || round_trip(&a.build(budgets)?, budgets)))
        .collect()
}

fn duality(budgets: &Budgets) -> Vec<CheckResult> {
    corpus::duality_algebras()
        .iter()
        .map(|a| {
            check("duality", &a.name, || {
                let c = Coadjoint::new(a.build(budgets)?);
                let orbits = c.census(budgets)?.count();
                let classes = c.group().class_count(budgets)?;
                Ok((orbits == classes, format!("orbits {orbits}, classes {classes}")))
            })
        })
        .collect()
}

fn is_power_of(q: u64, mut n: u64) -> bool {
    while n > 1 && n % q == 0 {
        n /= q;
    }
    n == 1
}

fn fake_degrees(budgets: &Budgets) -> Vec<CheckResult> {
    corpus::duality_algebras()
        .iter()
        .map(|a| {
            check("fake-degree", &a.name, || {
                let alg = a.build(budgets)?;
                let (q, d) = (alg.field().q(), alg.dim());
                let c = Coadjoint::new(alg);
                let census = c.census(budgets)?;
                let sum: u128 = census
                    .records
                    .iter()
                    .map(|r| r.fake_degree as u128 * r.fake_degree as u128)
                    .sum();
                let order = c.group().order();
                let all_q_powers = census.records.iter().all(|r| is_power_of(q as u64, r.fake_degree));
                let sizes_match = census
                    .records
                    .iter()
                    .all(|r| r.size as u128 == size_of(q, d) / size_of(q, r.radical.dim()));
                Ok((
                    sum == order && all_q_powers && sizes_match,
                    format!(
                        "sum fd^2 = {sum} vs |1+J| = {order}; q-powers {all_q_powers}; |J|/|Rad| {sizes_match}; degrees {:?}",
                        census.fake_degree_multiset()
                    ),
                ))
            })
        })
        .collect()
}

fn character_check(a: &CorpusAlgebra, budgets: &Budgets) -> Result<(bool, String)> {
    let c = Coadjoint::new(a.build(budgets)?);
    let census = c.census(budgets)?;
    let table = c.characters(&census, budgets)?;
    let k = table.classes.count();
    let count_ok = table.characters.len() == k;
    let p = c.p();
    let identity_class = table.classes.class_of[0] as usize;
    let degrees_ok = table.characters.iter().all(|chi| {
        let size = census.records[chi.orbit].size;
        chi.degree * chi.degree == size
            && chi.value(identity_class) == CyclotomicValue::integer(p, chi.degree as i64)
    });
    let orthonormal = table.orthonormality_check();
    let mut induced_ok = true;
    for r in &census.records {
        if !c.verify_induced(&r.representative, &census, &table)? {
            induced_ok = false;
            break;
        }
    }
    Ok((
        count_ok && degrees_ok && orthonormal && induced_ok,
        format!(
            "{} characters, k = {k}; chi(1)^2 = |orbit| {degrees_ok}; orthonormal {orthonormal}; induced {induced_ok}",
            table.characters.len()
        ),
    ))
}

fn characters(budgets: &Budgets) -> Vec<CheckResult> {
    corpus::character_algebras()
        .iter()
        .map(|a| check("characters", &a.name, || character_check(a, budgets)))
        .collect()
}

fn abelianization(budgets: &Budgets) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = corpus::abelianization_groups()
        .into_iter()
        .map(|(name, p)| {
            check("abelianization", format!("dim I/[I,I] for {name} over F{p}"), || {
                let g = library::named_group(name, budgets)?;
                let k = g.conjugacy_classes(budgets)?.count();
                let alg = CorpusAlgebra::augmentation(name, p, 1).build(budgets)?;
                let codim = alg.dim() - alg.derived_lie_subspace().dim();
                Ok((codim + 1 == k, format!("codim {codim}, k(pi) = {k}")))
            })
        })
        .collect();
    out.extend(corpus::closure_groups().into_iter().map(|(name, p)| {
        check("abelianization", format!("|(1+I)_ab| for {name} over F{p}"), || {
            let g = library::named_group(name, budgets)?;
            let k = g.conjugacy_classes(budgets)?.count();
            let alg = CorpusAlgebra::augmentation(name, p, 1).build(budgets)?;
            let ab = AlgebraGroup::new(alg).abelianization_order(budgets)? as u128;
            let expected = size_of(p, k - 1);
            Ok((ab == expected, format!("closure {ab}, p^(k-1) = {expected}")))
        })
    }));
    out
}

fn disproof(budgets: &Budgets) -> CheckResult {
    check("disproof", "k(pi) = 2 k(pi~) for the order-1024 group", || {
        let g = library::disproof_group(2, budgets)?;
        let z = library::disproof_central_element(&g);
        let quotient = g.quotient_by_central(z)?;
        let k = g.conjugacy_classes(budgets)?.count();
        let kq = quotient.conjugacy_classes(budgets)?.count();
        let orders_ok = g.order() == 1024 && quotient.order() == 512;
        Ok((
            orders_ok && k == 2 * kq,
            format!("|pi| = {}, |pi~| = {}, k(pi) = {k}, k(pi~) = {kq}", g.order(), quotient.order()),
        ))
    })
}

fn mq(budgets: &Budgets) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, expected) in [("C2", vec![2u32]), ("C4", vec![2, 4])] {
        out.push(check("mq", format!("M_2({name}) invariant factors"), || {
            let g = library::named_group(name, budgets)?;
            let factors = build_mq(&g, 2, 1, budgets)?.invariant_factors()?;
            let want: Vec<BigUint> = expected.iter().map(|&x| BigUint::from(x)).collect();
            Ok((factors == want, format!("{factors:?}")))
        }));
    }
    for name in corpus::mq_groups() {
        for e in [1, 2] {
            out.push(check("mq", format!("{name}, e = {e}"), || {
                let g = library::named_group(name, budgets)?;
                let p = g
                    .p_group_prime()
                    .ok_or_else(|| Error::internal(format!("{name} is not a p-group")))?;
                let m = build_mq(&g, p, e, budgets)?;
                let order = m.order()?;
                let expected = m.expected_order();
                let (layers_ok, layers) = m.verify_filtration()?;
                Ok((
                    order == expected && layers_ok,
                    format!(
                        "|pi| = {}, k = {}, |M| = {p}^{}, q^(k-1) = {p}^{}, layers {}",
                        g.order(),
                        m.k,
                        log_p(&order, p),
                        (m.k as u64 - 1) * e as u64,
                        layers.len()
                    ),
                ))
            }));
        }
    }
    out
}

fn log_p(n: &BigUint, p: u32) -> u64 {
    let mut n = n.clone();
    let mut k = 0;
    let p = BigUint::from(p);
    while n > BigUint::from(1u32) && (&n % &p).bits() == 0 {
        n /= &p;
        k += 1;
    }
    k
}

fn sl2() -> Vec<CheckResult> {
    let qs: Vec<u64> = (5..=1000u64)
        .step_by(2)
        .filter(|&q| crate::zetalab::is_prime_power(q))
        .collect();
    let failures: Vec<String> = qs
        .iter()
        .filter_map(|&q| match sl2_degrees(q) {
            Ok(d) if d.count() == q as u128 + 4 && d.sum_of_squares() == q as u128 * (q as u128 * q as u128 - 1) => None,
            Ok(_) => Some(format!("q = {q}: identities fail")),
            Err(e) => Some(format!("q = {q}: {e}")),
        })
        .collect();
    vec![CheckResult {
        suite: "sl2",
        name: "odd prime powers 5 <= q <= 1000".into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} values of q", qs.len())
        } else {
            failures.join("; ")
        },
    }]
}

fn abscissa(budgets: &Budgets) -> Vec<CheckResult> {
    let mut out = vec![check("abscissa", "SL2(F_5^i) tower, N = 10^6", || {
        let s = product_series(&FactorSpec::sl2_tower(5, 12)?, 1_000_000, SeriesMode::Exact, budgets)?;
        let est = abscissa_estimate(&s)?;
        Ok((
            (0.85..=1.15).contains(&est.tail_max),
            format!(
                "tail max {:.4} (n >= {}), slope {:.4}, R_N = {}",
                est.tail_max,
                est.tail_start,
                est.slope,
                est.path.last().map(|x| x.r.to_string()).unwrap_or_default()
            ),
        ))
    })];
    for c in [0.5, 1.0, 2.0] {
        out.push(check("abscissa", format!("synthetic c = {c}, N = 10^6"), || {
            let est = abscissa_estimate(&synthetic_power_series(c, 1_000_000)?)?;
            Ok((
                (est.tail_max - c).abs() <= 0.05,
                format!("tail max {:.4}, slope {:.4}", est.tail_max, est.slope),
            ))
        }));
    }
    out
}

/// Targets and the Lie types realising them.
pub fn target_cases() -> [(Ratio<i64>, LieTypeSpec); 3] {
    [
        (Ratio::new(1, 2), LieTypeSpec::G2),
        (Ratio::from_integer(1), LieTypeSpec::B2),
        (Ratio::from_integer(2), LieTypeSpec::A1),
    ]
}

fn target() -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = target_cases()
        .into_iter()
        .map(|(c, ty)| {
            check(
                "target",
                format!("c = {c}, rank {} h {}", ty.rank, ty.coxeter),
                || {
                    let t = target_abscissa_spec(c, ty, 5)?;
                    let cf = c.to_f64().unwrap_or(f64::NAN);
                    let above = akov_partial_sums(&t, cf + 0.1, 400);
                    let below = akov_partial_sums(&t, cf - 0.1, 400);
                    let hi = above.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    let lo_last = *below.last().unwrap_or(&f64::NEG_INFINITY);
                    Ok((
                        hi < 3.0 && lo_last > 6.0,
                        format!("n0 = {}; log10 partial sums: max {hi:.3} at s = c + 0.1, {lo_last:.1} at s = c - 0.1", t.n0),
                    ))
                },
            )
        })
        .collect();
    out.push(check("target", "k h c <= 2 is rejected", || {
        let r = target_abscissa_spec(Ratio::from_integer(1), LieTypeSpec::A1, 5);
        Ok((matches!(r, Err(Error::Domain(_))), format!("{r:?}")))
    }));
    out
}

fn prg(budgets: &Budgets) -> Vec<CheckResult> {
    let cases = match corpus::zeta_cases() {
        Ok(c) => c,
        Err(e) => {
            return vec![CheckResult {
                suite: "prg",
                name: "corpus".into(),
                passed: false,
                detail: e.to_string(),
            }]
        }
    };
    cases
        .iter()
        .map(|case| {
            check("prg", &case.name, || {
                let s = product_series(&case.spec, case.cutoff, case.mode, budgets)?;
                let mut parts = Vec::new();
                let mut ok = true;
                for n in [2, 4, 8, 16] {
                    let w = prg_witness(&s, &case.spec, n, case.mode)?;
                    ok &= w.holds;
                    parts.push(format!("n={n}: R={} >= {}", w.r_n_squared, w.pairs));
                }
                Ok((ok, parts.join(", ")))
            })
        })
        .collect()
}
