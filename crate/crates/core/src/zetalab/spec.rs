use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::series::{dirichlet_product, Provenance, TruncatedDirichlet};
use super::sl2_degrees;
use crate::budget::Budgets;
use crate::error::{Error, Result};

/// `q = p^e` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::validation("prime-power exponent must be positive"));
        }
        Ok(PrimePower { p, e })
    }

    /// Factors `q` as a prime power.
    pub fn from_value(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::validation(format!("{q} is not a prime power")));
        }
        let p = (2..=q)
            .take_while(|d| d * d <= q)
            .find(|d| q % d == 0)
            .unwrap_or(q);
        let mut r = q;
        let mut e = 0;
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        if r != 1 {
            return Err(Error::validation(format!("{q} is not a prime power")));
        }
        Ok(PrimePower { p, e })
    }

    /// `p^e`, or `None` if it does not fit in 64 bits.
    pub fn value(&self) -> Option<u64> {
        self.p.checked_pow(self.e)
    }

    pub fn big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.e)
    }

    /// `q^k`, or `None` on overflow.
    pub fn pow(&self, k: u32) -> Option<u64> {
        self.value()?.checked_pow(k)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// A root-system type given by its rank, number of positive roots and Coxeter number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LieTypeSpec {
    pub rank: u32,
    pub pos_roots: u32,
    pub coxeter: u32,
}

impl LieTypeSpec {
    pub const A1: LieTypeSpec = LieTypeSpec {
        rank: 1,
        pos_roots: 1,
        coxeter: 2,
    };
    pub const B2: LieTypeSpec = LieTypeSpec {
        rank: 2,
        pos_roots: 4,
        coxeter: 4,
    };
    pub const G2: LieTypeSpec = LieTypeSpec {
        rank: 2,
        pos_roots: 6,
        coxeter: 6,
    };

    /// Checks `h · rank = 2 |Φ⁺|`.
    pub fn new(rank: u32, pos_roots: u32, coxeter: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::validation("root system rank must be positive"));
        }
        if coxeter as u64 * rank as u64 != 2 * pos_roots as u64 {
            return Err(Error::validation(format!(
                "inconsistent root data: h*rank = {}*{} but 2|Phi+| = {}",
                coxeter,
                rank,
                2 * pos_roots as u64
            )));
        }
        Ok(LieTypeSpec {
            rank,
            pos_roots,
            coxeter,
        })
    }

    /// Parses `A1`, `B3`, `D4`, `G2`, `E8`, ... (an optional `_` after the letter is allowed).
    pub fn from_name(name: &str) -> Result<Self> {
        let bad = || Error::validation(format!("unknown Lie type `{name}`"));
        let name = name.trim();
        let mut chars = name.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: u32 = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| bad())?;
        let (rank, pos, h) = match (letter, n) {
            ('A', n) if n >= 1 => (n, n * (n + 1) / 2, n + 1),
            ('B' | 'C', n) if n >= 2 => (n, n * n, 2 * n),
            ('D', n) if n >= 4 => (n, n * (n - 1), 2 * n - 2),
            ('G', 2) => (2, 6, 6),
            ('F', 4) => (4, 24, 12),
            ('E', 6) => (6, 36, 12),
            ('E', 7) => (7, 63, 18),
            ('E', 8) => (8, 120, 30),
            _ => return Err(bad()),
        };
        LieTypeSpec::new(rank, pos, h)
    }

    pub fn is_a1(&self) -> bool {
        *self == Self::A1
    }

    /// The approximant `1 + a·n^{-s}` with `a = q^rank`, `n = q^{|Φ⁺|}`; returns `(a, n)`.
    pub fn akov_term(&self, q: &PrimePower) -> (BigUint, BigUint) {
        let qb = q.big();
        (qb.pow(self.rank), qb.pow(self.pos_roots))
    }
}

/// One factor `L(q)^mult` of a product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub lie_type: LieTypeSpec,
    pub q: PrimePower,
    pub mult: BigUint,
}

/// A finite list of factors describing `H = Π L_i(q_i)^{mult_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<FactorJson>", into = "Vec<FactorJson>")]
pub struct FactorSpec {
    pub factors: Vec<Factor>,
}

impl FactorSpec {
    pub fn new(factors: Vec<Factor>) -> Self {
        FactorSpec { factors }
    }

    /// `SL_2(F_{p^i})` for `i = 1..=count`, each once.
    pub fn sl2_tower(p: u64, count: u32) -> Result<Self> {
        let factors = (1..=count)
            .map(|i| {
                Ok(Factor {
                    lie_type: LieTypeSpec::A1,
                    q: PrimePower::new(p, i)?,
                    mult: BigUint::one(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(FactorSpec { factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum TypeJson {
    Data {
        rank: u32,
        pos_roots: u32,
        coxeter: u32,
    },
    Name(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum QJson {
    Value(u64),
    Power { p: u64, e: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum MultJson {
    Small(u64),
    Digits(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FactorJson {
    #[serde(rename = "type")]
    lie_type: TypeJson,
    q: QJson,
    #[serde(default = "one_mult")]
    mult: MultJson,
}

fn one_mult() -> MultJson {
    MultJson::Small(1)
}

impl TryFrom<Vec<FactorJson>> for FactorSpec {
    type Error = Error;

    fn try_from(raw: Vec<FactorJson>) -> Result<Self> {
        let factors = raw
            .into_iter()
            .map(|f| {
                let lie_type = match f.lie_type {
                    TypeJson::Data {
                        rank,
                        pos_roots,
                        coxeter,
                    } => LieTypeSpec::new(rank, pos_roots, coxeter)?,
                    TypeJson::Name(n) => LieTypeSpec::from_name(&n)?,
                };
                let q = match f.q {
                    QJson::Value(q) => PrimePower::from_value(q)?,
                    QJson::Power { p, e } => PrimePower::new(p, e)?,
                };
                let mult = match f.mult {
                    MultJson::Small(m) => BigUint::from(m),
                    MultJson::Digits(s) => s.trim().parse::<BigUint>().map_err(|_| {
                        Error::validation(format!("multiplicity `{s}` is not a decimal integer"))
                    })?,
                };
                Ok(Factor { lie_type, q, mult })
            })
            .collect::<Result<_>>()?;
        Ok(FactorSpec { factors })
    }
}

impl From<FactorSpec> for Vec<FactorJson> {
    fn from(spec: FactorSpec) -> Self {
        spec.factors
            .into_iter()
            .map(|f| FactorJson {
                lie_type: TypeJson::Data {
                    rank: f.lie_type.rank,
                    pos_roots: f.lie_type.pos_roots,
                    coxeter: f.lie_type.coxeter,
                },
                q: QJson::Power { p: f.q.p, e: f.q.e },
                mult: match f.mult.to_u64() {
                    Some(m) => MultJson::Small(m),
                    None => MultJson::Digits(f.mult.to_string()),
                },
            })
            .collect()
    }
}

/// Exact `SL_2` degree data, or the two-term Lie-type approximant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesMode {
    Exact,
    Akov,
}

impl std::str::FromStr for SeriesMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact-sl2" => Ok(SeriesMode::Exact),
            "akov" | "akov-approx" => Ok(SeriesMode::Akov),
            _ => Err(Error::validation(format!("unknown series mode `{s}`"))),
        }
    }
}

fn check_exact_factor(f: &Factor) -> Result<()> {
    if !f.lie_type.is_a1() || f.q.p == 2 {
        return Err(Error::domain(format!(
            "unsupported factor in exact mode: type (rank {}, |Phi+| {}, h {}) over q = {}^{}; only A1 with odd q has exact degree data",
            f.lie_type.rank, f.lie_type.pos_roots, f.lie_type.coxeter, f.q.p, f.q.e
        )));
    }
    Ok(())
}

/// Least nontrivial degree of one copy of the factor under `mode`, `None` if beyond 64 bits.
fn factor_min_degree(f: &Factor, mode: SeriesMode) -> Option<u64> {
    match mode {
        SeriesMode::Exact => Some((f.q.value()? - 1) / 2),
        SeriesMode::Akov => f.q.pow(f.lie_type.pos_roots),
    }
}

/// Nontrivial part `ζ - 1` of one factor, truncated at `cutoff`.
fn factor_nontrivial(f: &Factor, mode: SeriesMode, cutoff: u64) -> Result<TruncatedDirichlet> {
    match mode {
        SeriesMode::Exact => {
            let q = f.q.value().expect("min degree below cutoff");
            let mut g = TruncatedDirichlet::zero(cutoff, Provenance::Exact);
            for &(d, m) in sl2_degrees(q)?.entries() {
                if d > 1 {
                    g.add_at(d, &BigUint::from(m));
                }
            }
            Ok(g)
        }
        SeriesMode::Akov => {
            let (a, n) = f.lie_type.akov_term(&f.q);
            let mut g = TruncatedDirichlet::zero(cutoff, Provenance::AkovApprox);
            if let Some(n) = n.to_u64() {
                g.add_at(n, &a);
            }
            Ok(g)
        }
    }
}

/// `(1 + g)^m = Σ_j C(m, j) g^j`, where `g^j` vanishes below `min_degree^j`.
fn binomial_power(
    g: &TruncatedDirichlet,
    mult: &BigUint,
    min_degree: u64,
    cutoff: u64,
) -> Result<TruncatedDirichlet> {
    let mut out = TruncatedDirichlet::one(cutoff).with_provenance(g.provenance());
    let mut power = TruncatedDirichlet::one(cutoff);
    let mut binom = BigUint::one();
    let mut reach: u64 = 1;
    let mut j: u64 = 0;
    loop {
        reach = match reach.checked_mul(min_degree) {
            Some(r) if r <= cutoff => r,
            _ => break,
        };
        if BigUint::from(j) >= *mult {
            break;
        }
        binom = binom * (mult - BigUint::from(j)) / BigUint::from(j + 1);
        j += 1;
        power = dirichlet_product(&power, g, cutoff)?;
        out = out.add(&power.scale(&binom));
    }
    Ok(out)
}

/// Truncated zeta function of `Π L_i(q_i)^{mult_i}`.
///
/// Only factors whose least nontrivial degree is at most `cutoff` are convolved; the rest
/// contribute nothing below the cutoff. In exact mode every factor must be `A1` over odd `q`.
pub fn product_series(
    spec: &FactorSpec,
    cutoff: u64,
    mode: SeriesMode,
    budgets: &Budgets,
) -> Result<TruncatedDirichlet> {
    Budgets::check("series_cutoff", budgets.series_cutoff, cutoff as u128)?;
    if cutoff == 0 {
        return Err(Error::validation("series cutoff must be positive"));
    }
    if mode == SeriesMode::Exact {
        for f in &spec.factors {
            check_exact_factor(f)?;
        }
    }
    let provenance = match mode {
        SeriesMode::Exact => Provenance::Exact,
        SeriesMode::Akov => Provenance::AkovApprox,
    };
    let mut acc = TruncatedDirichlet::one(cutoff).with_provenance(provenance);
    for f in &spec.factors {
        if f.mult.is_zero() {
            continue;
        }
        let Some(min_degree) = factor_min_degree(f, mode) else {
            continue;
        };
        if min_degree > cutoff {
            continue;
        }
        let g = factor_nontrivial(f, mode, cutoff)?;
        let factor = binomial_power(&g, &f.mult, min_degree, cutoff)?;
        acc = dirichlet_product(&acc, &factor, cutoff)?;
    }
    Ok(acc)
}

/// Number of factors (with multiplicity) having a nontrivial irreducible of degree `≤ n`.
///
/// Exact for `SL_2` in exact mode; in approximant mode it is exact for the approximant series.
pub fn l_of_n(spec: &FactorSpec, n: u64, mode: SeriesMode) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for f in &spec.factors {
        if mode == SeriesMode::Exact {
            check_exact_factor(f)?;
        }
        if let Some(d) = factor_min_degree(f, mode) {
            if d <= n && d > 1 {
                total += &f.mult;
            }
        }
    }
    Ok(total)
}

/// Lower bound `χ(1) > d·q^{e·rank}` for nontrivial irreducibles of a group of Lie type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinDegreeBound {
    pub d: f64,
    pub e: f64,
}

impl Default for MinDegreeBound {
    /// `SL_2(F_q)` has least degree `(q-1)/2 > q/3` for `q ≥ 5`, so `d = 1/3`, `e = 1`.
    fn default() -> Self {
        MinDegreeBound { d: 1.0 / 3.0, e: 1.0 }
    }
}

/// Upper bound on `l_H(n)` valid for any type: `A1` over odd `q` uses the exact least
/// degree, other factors are counted unless the bound excludes every degree `≤ n`.
pub fn l_upper_bound(spec: &FactorSpec, n: u64, bound: &MinDegreeBound) -> BigUint {
    let mut total = BigUint::zero();
    for f in &spec.factors {
        let counted = if f.lie_type.is_a1() && f.q.p != 2 && f.q.value().is_some_and(|q| q >= 5)
        {
            factor_min_degree(f, SeriesMode::Exact).is_some_and(|d| d <= n)
        } else {
            let log_floor =
                bound.d.ln() + bound.e * f.lie_type.rank as f64 * f.q.e as f64 * (f.q.p as f64).ln();
            // Excluded when n ≤ d q^{e r}.
            (n as f64).ln() > log_floor
        };
        if counted {
            total += &f.mult;
        }
    }
    total
}

/// Outcome of checking `R_{n²} ≥ l(n)(l(n)-1)/2` on a truncated product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrgWitness {
    pub n: u64,
    #[serde(serialize_with = "ser_big")]
    pub l: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub r_n_squared: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub pairs: BigUint,
    pub holds: bool,
}

pub(crate) fn ser_big<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// Pairs of distinct factors with small nontrivial degrees give distinct tensor products of
/// degree `≤ n²`, so `R_{n²}` must be at least the number of such pairs.
pub fn prg_witness(
    series: &TruncatedDirichlet,
    spec: &FactorSpec,
    n: u64,
    mode: SeriesMode,
) -> Result<PrgWitness> {
    let n2 = n
        .checked_mul(n)
        .filter(|&m| m <= series.cutoff())
        .ok_or_else(|| {
            Error::validation(format!(
                "n^2 for n = {n} exceeds the series cutoff {}",
                series.cutoff()
            ))
        })?;
    let l = l_of_n(spec, n, mode)?;
    let pairs = if l.is_zero() {
        BigUint::zero()
    } else {
        &l * (&l - BigUint::one()) / BigUint::from(2u32)
    };
    let r = series.partial_count(n2);
    Ok(PrgWitness {
        n,
        holds: r >= pairs,
        l,
        r_n_squared: r,
        pairs,
    })
}
