//! The bundled test corpus: named algebras, groups and zeta specs.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;

use crate::budget::Budgets;
use crate::error::Result;
use crate::ffield::Field;
use crate::grouptab::library;
use crate::nilalg::NilAlgebra;
use crate::zetalab::{
    target_abscissa_spec, Factor, FactorSpec, LieTypeSpec, PrimePower, SeriesMode,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AlgebraSource {
    /// Strictly upper triangular `n x n` matrices over `F_{p^e}`.
    Unitriangular { n: usize, p: u32, e: u32 },
    /// Augmentation ideal of a library group over `F_{p^e}`.
    Augmentation { group: String, p: u32, e: u32 },
    /// `F_{p^e}^d` with zero multiplication.
    ZeroProduct { d: usize, p: u32, e: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusAlgebra {
    pub name: String,
    pub source: AlgebraSource,
}

fn field_name(p: u32, e: u32) -> String {
    if e == 1 {
        format!("F{p}")
    } else {
        format!("F{}", p.pow(e))
    }
}

impl CorpusAlgebra {
    pub fn unitriangular(n: usize, p: u32, e: u32) -> Self {
        CorpusAlgebra {
            name: format!("u{n}({})", field_name(p, e)),
            source: AlgebraSource::Unitriangular { n, p, e },
        }
    }

    pub fn augmentation(group: &str, p: u32, e: u32) -> Self {
        CorpusAlgebra {
            name: format!("I_{}[{group}]", field_name(p, e)),
            source: AlgebraSource::Augmentation {
                group: group.to_string(),
                p,
                e,
            },
        }
    }

    pub fn zero_product(d: usize, p: u32, e: u32) -> Self {
        CorpusAlgebra {
            name: format!("{}^{d} (J^2 = 0)", field_name(p, e)),
            source: AlgebraSource::ZeroProduct { d, p, e },
        }
    }

    /// `log_2 |J|`.
    pub fn log2_size(&self) -> f64 {
        let (p, e, d) = match &self.source {
            AlgebraSource::Unitriangular { n, p, e } => (*p, *e, n * (n - 1) / 2),
            AlgebraSource::Augmentation { group, p, e } => {
                let order = library::named_presentation(group)
                    .map(|pc| (pc.p() as usize).pow(pc.generator_count() as u32))
                    .unwrap_or(usize::MAX);
                (*p, *e, order.saturating_sub(1))
            }
            AlgebraSource::ZeroProduct { d, p, e } => (*p, *e, *d),
        };
        d as f64 * e as f64 * (p as f64).log2()
    }

    pub fn build(&self, budgets: &Budgets) -> Result<NilAlgebra> {
        match &self.source {
            AlgebraSource::Unitriangular { n, p, e } => {
                NilAlgebra::make_unitriangular(*n, &Field::with_budget(*p, *e, budgets)?, budgets)
            }
            AlgebraSource::Augmentation { group, p, e } => {
                let g = library::named_group(group, budgets)?;
                NilAlgebra::make_augmentation_ideal(&g, &Field::with_budget(*p, *e, budgets)?, budgets)
            }
            AlgebraSource::ZeroProduct { d, p, e } => {
                NilAlgebra::zero_product(&Field::with_budget(*p, *e, budgets)?, *d, budgets)
            }
        }
    }
}

/// Library 2-groups of order at most `max2` and 3-groups of order at most `max3`.
fn small_library_groups(max2: usize, max3: usize) -> Vec<(&'static str, u32)> {
    library::names()
        .into_iter()
        .filter_map(|name| {
            let pc = library::named_presentation(name).ok()?;
            let order = (pc.p() as usize).pow(pc.generator_count() as u32);
            let keep = match pc.p() {
                2 => order <= max2,
                3 => order <= max3,
                _ => false,
            };
            keep.then_some((name, pc.p()))
        })
        .collect()
}

/// `u_n(F_q)` for `n ≤ 4`, `q ∈ {2, 3, 4, 5}`.
pub fn unitriangular_algebras() -> Vec<CorpusAlgebra> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            out.push(CorpusAlgebra::unitriangular(n, p, e));
        }
    }
    out
}

/// Algebras with `|J| ≤ 2^16` on which orbits are compared with classes.
pub fn duality_algebras() -> Vec<CorpusAlgebra> {
    let mut out = vec![
        CorpusAlgebra::unitriangular(3, 2, 1),
        CorpusAlgebra::unitriangular(3, 3, 1),
        CorpusAlgebra::unitriangular(3, 2, 2),
        CorpusAlgebra::unitriangular(4, 2, 1),
    ];
    for (name, _) in small_library_groups(16, 1) {
        out.push(CorpusAlgebra::augmentation(name, 2, 1));
    }
    out.push(CorpusAlgebra::augmentation("C3", 3, 1));
    out.push(CorpusAlgebra::augmentation("C9", 3, 1));
    out
}

/// Algebras with `J^p = 0` and `|J| ≤ 2^12` whose orbit-method characters are checked.
///
/// Zero-product algebras are taken up to `|J| ≤ 2^8`: their groups are abelian, so the
/// pairwise orthonormality check is cubic in `|J|`.
pub fn character_algebras() -> Vec<CorpusAlgebra> {
    let mut out = vec![
        CorpusAlgebra::unitriangular(3, 3, 1),
        CorpusAlgebra::unitriangular(3, 5, 1),
        CorpusAlgebra::unitriangular(3, 3, 2),
    ];
    for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
        let q = (p as u64).pow(e);
        let mut d = 1;
        while q.pow(d as u32) <= 256 {
            out.push(CorpusAlgebra::zero_product(d, p, e));
            d += 1;
        }
    }
    out.push(CorpusAlgebra::augmentation("C3", 3, 1));
    out
}

/// Groups of order at most 32 with the fields `F_p` of matching characteristic.
pub fn abelianization_groups() -> Vec<(&'static str, u32)> {
    small_library_groups(32, 27)
}

/// Groups for which `|(1 + I_{F_p}[π])_ab|` is found by closure.
pub fn closure_groups() -> Vec<(&'static str, u32)> {
    small_library_groups(16, 9)
}

/// Every library presentation, orders up to 128.
pub fn mq_groups() -> Vec<&'static str> {
    library::names()
}

/// A named zeta product together with the cutoff and mode it is evaluated at.
#[derive(Clone, Debug)]
pub struct ZetaCase {
    pub name: String,
    pub spec: FactorSpec,
    pub cutoff: u64,
    pub mode: SeriesMode,
}

fn factor(lie_type: LieTypeSpec, p: u64, e: u32, mult: u64) -> Factor {
    Factor {
        lie_type,
        q: PrimePower { p, e },
        mult: BigUint::from(mult),
    }
}

/// Zeta products used by the PRG checks.
pub fn zeta_cases() -> Result<Vec<ZetaCase>> {
    let mut cases = vec![
        ZetaCase {
            name: "SL2(F_5^i), i <= 12".into(),
            spec: FactorSpec::sl2_tower(5, 12)?,
            cutoff: 1_000_000,
            mode: SeriesMode::Exact,
        },
        ZetaCase {
            name: "SL2(F_7^i), i <= 8".into(),
            spec: FactorSpec::sl2_tower(7, 8)?,
            cutoff: 100_000,
            mode: SeriesMode::Exact,
        },
        ZetaCase {
            name: "SL2(F_3^i), 2 <= i <= 12".into(),
            spec: FactorSpec::new(FactorSpec::sl2_tower(3, 12)?.factors.split_off(1)),
            cutoff: 100_000,
            mode: SeriesMode::Exact,
        },
        ZetaCase {
            name: "SL2(5)^3 x SL2(7)^2 x SL2(9)".into(),
            spec: FactorSpec::new(vec![
                factor(LieTypeSpec::A1, 5, 1, 3),
                factor(LieTypeSpec::A1, 7, 1, 2),
                factor(LieTypeSpec::A1, 3, 2, 1),
            ]),
            cutoff: 20_000,
            mode: SeriesMode::Exact,
        },
        ZetaCase {
            name: "SL2(11)^12".into(),
            spec: FactorSpec::new(vec![factor(LieTypeSpec::A1, 11, 1, 12)]),
            cutoff: 4096,
            mode: SeriesMode::Exact,
        },
        ZetaCase {
            name: "approximant A2(2)^5 x B2(3)^2 x G2(2) x A1(2^i)".into(),
            spec: FactorSpec::new(
                [
                    factor(LieTypeSpec::from_name("A2")?, 2, 1, 5),
                    factor(LieTypeSpec::B2, 3, 1, 2),
                    factor(LieTypeSpec::G2, 2, 1, 1),
                ]
                .into_iter()
                .chain((1..=16).map(|i| factor(LieTypeSpec::A1, 2, i, 1)))
                .collect(),
            ),
            cutoff: 100_000,
            mode: SeriesMode::Akov,
        },
    ];
    for (c, ty, p) in [
        (Ratio::new(1, 2), LieTypeSpec::G2, 2),
        (Ratio::from_integer(1), LieTypeSpec::B2, 3),
        (Ratio::from_integer(2), LieTypeSpec::A1, 5),
    ] {
        let target = target_abscissa_spec(c, ty, p)?;
        cases.push(ZetaCase {
            name: format!("target c = {c}, rank {} h {}, p = {p}", ty.rank, ty.coxeter),
            spec: target.factor_spec(16)?,
            cutoff: 100_000,
            mode: SeriesMode::Akov,
        });
    }
    Ok(cases)
}
