use std::fmt::Write as _;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use orbitlab::bogomod::build_mq;
use orbitlab::coadjoint::{CharacterTable, Coadjoint, OrbitCensus};
use orbitlab::verify::{check_algebra_text, run_suite, CheckResult, SUITES};
use orbitlab::zetalab::{
    abscissa_estimate, akov_partial_sums, geometric_grid, product_series, sl2_degrees,
    target_abscissa_spec, FactorSpec, LieTypeSpec, TruncatedDirichlet,
};
use orbitlab::{AlgebraGroup, Budgets, Error};
use serde_json::{json, Value};

use crate::inputs::{self, InputLog};
use crate::{
    AlgroupCmd, Command, ExportArgs, ExportTarget, FormatArg, GroupCmd, MqCmd, NilalgCmd,
    OrbitsCmd, VerifyArgs, ZetaCmd,
};

/// Result of one command: canonical stdout plus what the manifest needs.
pub struct Outcome {
    pub stdout: String,
    /// 0 on success; 2 when only user-supplied inputs failed a check; 4 when a built-in identity failed.
    pub exit_code: u8,
    pub inputs: Vec<(String, String)>,
}

type Res<T> = Result<T, Error>;

/// Integers that may exceed `u64` are written as decimal strings.
fn big(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn bigint(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn u128_json(v: u128) -> Value {
    big(&BigUint::from(v))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

pub fn dispatch(cmd: &Command, budgets: &Budgets) -> Res<Outcome> {
    let log = InputLog::default();
    let (value, exit_code) = match cmd {
        Command::Grouptab(c) => (grouptab(c, &log, budgets)?, 0),
        Command::Nilalg(NilalgCmd::Info(a)) => (nilalg_info(&a.algebra, &log, budgets)?, 0),
        Command::Algroup(c) => (algroup(c, &log, budgets)?, 0),
        Command::Orbits(c) => with_code(orbits(c, &log, budgets)?),
        Command::Mq(MqCmd::Compute { input, p, e }) => with_code(mq(&input.group, *p, *e, &log, budgets)?),
        Command::Zeta(c) => (zeta(c, &log, budgets)?, 0),
        Command::VerifyCorpus(args) => verify_corpus(args, &log, budgets)?,
        Command::Export(args) => return export(args, log, budgets),
        Command::Budget => (json!(budgets.as_map()), 0),
        Command::Replay { .. } => unreachable!("replay is handled before dispatch"),
    };
    Ok(Outcome {
        stdout: pretty(&value),
        exit_code,
        inputs: log.into_digests(),
    })
}

/// A failed built-in identity is an internal inconsistency.
fn with_code((value, ok): (Value, bool)) -> (Value, u8) {
    (value, if ok { 0 } else { 4 })
}

fn grouptab(cmd: &GroupCmd, log: &InputLog, budgets: &Budgets) -> Res<Value> {
    let (GroupCmd::Classes(input) | GroupCmd::Derived(input)) = cmd;
    let g = inputs::group(&input.group, log, budgets)?;
    let classes = g.conjugacy_classes(budgets)?;
    let derived = g.commutator_subgroup(budgets)?;
    let mut out = json!({
        "order": g.order(),
        "k": classes.count(),
        "class_sizes": classes.sizes,
        "derived_order": derived.len(),
    });
    if matches!(cmd, GroupCmd::Derived(_)) {
        out["abelianization_order"] = json!(g.order() / derived.len());
    }
    Ok(out)
}

fn nilalg_info(spec: &str, log: &InputLog, budgets: &Budgets) -> Res<Value> {
    let alg = inputs::algebra(spec, log, budgets)?;
    Ok(json!({
        "p": alg.field().p(),
        "e": alg.field().e(),
        "dim": alg.dim(),
        "class": alg.class(),
        "derived_dim": alg.derived_lie_subspace().dim(),
        "p_nilpotent": alg.is_p_nilpotent(),
        "power_chain_dims": alg.power_ideal_chain().iter().map(|s| s.dim()).collect::<Vec<_>>(),
    }))
}

fn algroup(cmd: &AlgroupCmd, log: &InputLog, budgets: &Budgets) -> Res<Value> {
    match cmd {
        AlgroupCmd::Classes(a) => {
            let g = AlgebraGroup::new(inputs::algebra(&a.algebra, log, budgets)?);
            let classes = g.conjugacy_classes(budgets)?;
            Ok(json!({
                "group_order": u128_json(g.order()),
                "k": classes.count(),
                "class_sizes": classes.sizes,
            }))
        }
        AlgroupCmd::Abelianization(a) => {
            let g = AlgebraGroup::new(inputs::algebra(&a.algebra, log, budgets)?);
            Ok(json!({
                "group_order": u128_json(g.order()),
                "abelianization_order": g.abelianization_order(budgets)?,
            }))
        }
    }
}

fn census_json(census: &OrbitCensus) -> Value {
    let histogram: serde_json::Map<String, Value> = census
        .sizes_histogram()
        .into_iter()
        .map(|(size, n)| (size.to_string(), json!(n)))
        .collect();
    let degrees: Vec<Value> = census
        .fake_degree_multiset()
        .into_iter()
        .map(|(d, m)| json!([d, m]))
        .collect();
    json!({
        "orbit_count": census.count(),
        "sizes_histogram": histogram,
        "fake_degrees": degrees,
    })
}

/// Values are `{num: [c_0, ..., c_{p-1}], den}` meaning `Σ c_k ζ_p^k / den`.
fn character_table_json(table: &CharacterTable) -> Value {
    let characters: Vec<Value> = table
        .characters
        .iter()
        .map(|chi| {
            let values: Vec<Value> = (0..table.classes.count())
                .map(|c| {
                    let v = chi.value(c);
                    json!({
                        "num": v.coefficients().iter().map(bigint).collect::<Vec<_>>(),
                        "den": bigint(v.denominator()),
                    })
                })
                .collect();
            json!({"orbit": chi.orbit, "degree": chi.degree, "values": values})
        })
        .collect();
    json!({
        "p": table.p,
        "group_order": table.group_order,
        "class_sizes": table.classes.sizes,
        "class_representatives": table.classes.representatives,
        "characters": characters,
    })
}

fn characters(coadjoint: &Coadjoint, budgets: &Budgets) -> Res<(Value, bool)> {
    let census = coadjoint.census(budgets)?;
    let table = coadjoint.characters(&census, budgets)?;
    let orthonormal = table.orthonormality_check();
    let mut induced = true;
    for r in &census.records {
        induced &= coadjoint.verify_induced(&r.representative, &census, &table)?;
    }
    let mut out = character_table_json(&table);
    out["orthonormal"] = json!(orthonormal);
    out["induced_agrees"] = json!(induced);
    Ok((out, orthonormal && induced))
}

fn orbits(cmd: &OrbitsCmd, log: &InputLog, budgets: &Budgets) -> Res<(Value, bool)> {
    match cmd {
        OrbitsCmd::Census(a) => {
            let c = Coadjoint::new(inputs::algebra(&a.algebra, log, budgets)?);
            Ok((census_json(&c.census(budgets)?), true))
        }
        OrbitsCmd::Characters(a) => {
            characters(&Coadjoint::new(inputs::algebra(&a.algebra, log, budgets)?), budgets)
        }
        OrbitsCmd::Probe(a) => {
            let c = Coadjoint::new(inputs::algebra(&a.algebra, log, budgets)?);
            Ok((json!(c.conjecture_probe(budgets)?), true))
        }
    }
}

fn mq(group: &str, p: u32, e: u32, log: &InputLog, budgets: &Budgets) -> Res<(Value, bool)> {
    let g = inputs::group(group, log, budgets)?;
    let m = build_mq(&g, p, e, budgets)?;
    let order = m.order()?;
    let (filtration_ok, layers) = m.verify_filtration()?;
    let equal = order == m.expected_order();
    Ok((
        json!({
            "p": p,
            "e": e,
            "k": m.k,
            "invariant_factors": m.invariant_factors()?.iter().map(big).collect::<Vec<_>>(),
            "order": big(&order),
            "order_equals_q_pow_km1": equal,
            "filtration_matches": filtration_ok,
            "layers": layers,
        }),
        equal && filtration_ok,
    ))
}

fn read_spec(path: &Path, log: &InputLog) -> Res<FactorSpec> {
    let text = log.read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

/// `(n, r_n, R_n)` at the geometric grid points.
fn checkpoints(series: &TruncatedDirichlet) -> Vec<(u64, BigUint, BigUint)> {
    let cumulative = series.cumulative();
    geometric_grid(series.cutoff())
        .into_iter()
        .map(|n| (n, series.coeff(n), cumulative[n as usize].clone()))
        .collect()
}

fn series_json(series: &TruncatedDirichlet) -> Value {
    let points: Vec<Value> = checkpoints(series)
        .iter()
        .map(|(n, r, cum)| json!({"n": n, "r_n": big(r), "R_n": big(cum)}))
        .collect();
    json!({
        "cutoff": series.cutoff(),
        "provenance": series.provenance(),
        "support_size": series.support().len(),
        "total": big(&series.total()),
        "checkpoints": points,
    })
}

fn series_csv(series: &TruncatedDirichlet) -> String {
    let mut out = String::from("n,r_n,R_n\n");
    for (n, r, cum) in checkpoints(series) {
        let _ = writeln!(out, "{n},{r},{cum}");
    }
    out
}

fn parse_ratio(s: &str) -> Res<Ratio<i64>> {
    let bad = || Error::validation(format!("`{s}` is not a rational number"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let whole: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let sign = if int.starts_with('-') { -1 } else { 1 };
        return Ok(Ratio::from_integer(whole) + Ratio::new(sign * f, den));
    }
    s.parse::<Ratio<i64>>().map_err(|_| bad())
}

fn zeta(cmd: &ZetaCmd, log: &InputLog, budgets: &Budgets) -> Res<Value> {
    match cmd {
        ZetaCmd::Sl2 { q } => {
            let d = sl2_degrees(*q)?;
            Ok(json!({
                "q": q,
                "degrees": d.entries(),
                "class_number": u128_json(d.count()),
                "sum_of_squares": u128_json(d.sum_of_squares()),
                "min_nontrivial": d.min_nontrivial(),
            }))
        }
        ZetaCmd::Product { spec, cutoff, mode, emit_plot_data } => {
            let factors = read_spec(spec, log)?;
            let series = product_series(&factors, *cutoff, (*mode).into(), budgets)?;
            if let Some(path) = emit_plot_data {
                let mut cols = String::from("# n r_n R_n\n");
                for (n, r, cum) in checkpoints(&series) {
                    let _ = writeln!(cols, "{n} {r} {cum}");
                }
                write_file(path, &cols)?;
            }
            Ok(series_json(&series))
        }
        ZetaCmd::Abscissa { spec, cutoff, mode, emit_plot_data } => {
            let factors = read_spec(spec, log)?;
            let series = product_series(&factors, *cutoff, (*mode).into(), budgets)?;
            let est = abscissa_estimate(&series)?;
            if let Some(path) = emit_plot_data {
                let mut cols = String::from("# n R_n log(R_n)/log(n)\n");
                for s in &est.path {
                    let _ = writeln!(cols, "{} {} {:.6}", s.n, s.r, s.ratio);
                }
                write_file(path, &cols)?;
            }
            let mut out = json!(est);
            out["provenance"] = json!(series.provenance());
            Ok(out)
        }
        ZetaCmd::Target { c, lie_type, p, factors, terms } => {
            let c = parse_ratio(c)?;
            let ty = LieTypeSpec::from_name(lie_type)?;
            let target = target_abscissa_spec(c, ty, *p)?;
            let cf = *c.numer() as f64 / *c.denom() as f64;
            let spec = target.factor_spec(*factors)?;
            let last = |s: f64| akov_partial_sums(&target, s, *terms).last().copied();
            Ok(json!({
                "c": c.to_string(),
                "type": ty,
                "p": p,
                "n0": target.n0,
                "terms": (1..=*factors).map(|i| target.term(i)).collect::<Vec<_>>(),
                "spec": spec,
                "log10_partial_sum": {
                    "terms": terms,
                    "s_below": cf - 0.1,
                    "below": last(cf - 0.1),
                    "s_above": cf + 0.1,
                    "above": last(cf + 0.1),
                },
            }))
        }
    }
}

fn verify_corpus(args: &VerifyArgs, log: &InputLog, budgets: &Budgets) -> Res<(Value, u8)> {
    let suites: Vec<&str> = match &args.only {
        Some(s) => vec![s.as_str()],
        None => SUITES.to_vec(),
    };
    let mut results: Vec<CheckResult> = Vec::new();
    for suite in suites {
        results.extend(run_suite(suite, budgets)?);
    }
    let builtin_failed = results.iter().any(|r| !r.passed);
    for path in &args.extra_algebras {
        let text = log.read(path)?;
        results.push(check_algebra_text(&path.display().to_string(), &text, budgets));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let code = match (builtin_failed, failed) {
        (true, _) => 4,
        (false, 0) => 0,
        (false, _) => 2,
    };
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0).min(60);
    for r in &results {
        eprintln!(
            "{:<14} {:<width$} {}  {}",
            r.suite,
            r.name,
            if r.passed { "ok  " } else { "FAIL" },
            r.detail
        );
    }
    eprintln!("{} checks, {failed} failed", results.len());
    Ok((json!({"checks": results.len(), "failed": failed, "results": results}), code))
}

fn export(args: &ExportArgs, log: InputLog, budgets: &Budgets) -> Res<Outcome> {
    if args.format == FormatArg::Csv && args.what != ExportTarget::Series {
        return Err(Error::validation("CSV export is only available for series checkpoints"));
    }
    let (text, ok) = match args.what {
        ExportTarget::Census => {
            let c = Coadjoint::new(inputs::algebra(&args.input, &log, budgets)?);
            (pretty(&census_json(&c.census(budgets)?)), true)
        }
        ExportTarget::Characters => {
            let c = Coadjoint::new(inputs::algebra(&args.input, &log, budgets)?);
            let (v, ok) = characters(&c, budgets)?;
            (pretty(&v), ok)
        }
        ExportTarget::Mq => {
            let p = args.p.ok_or_else(|| Error::validation("--p is required for mq export"))?;
            let (v, ok) = mq(&args.input, p, args.e, &log, budgets)?;
            (pretty(&v), ok)
        }
        ExportTarget::Series => {
            let cutoff = args
                .cutoff
                .ok_or_else(|| Error::validation("--N is required for series export"))?;
            let spec = read_spec(Path::new(&args.input), &log)?;
            let series = product_series(&spec, cutoff, args.mode.into(), budgets)?;
            match args.format {
                FormatArg::Json => (pretty(&series_json(&series)), true),
                FormatArg::Csv => (series_csv(&series), true),
            }
        }
    };
    let stdout = match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome {
        stdout,
        exit_code: if ok { 0 } else { 4 },
        inputs: log.into_digests(),
    })
}
