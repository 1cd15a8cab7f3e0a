use std::fs::File;
use std::io::Write;
use std::time::Instant;

use galois_census::bigpoly::MonicPoly;
use galois_census::census::{self, CensusConfig, CensusRow, Counter, DEFAULT_CEILING};
use galois_census::disc::discriminant;
use galois_census::galois::{classify_with_disc, GaloisClass, NonSnReason, SnEvidence};
use galois_census::geometry::{self, count_line, count_surface_with};
use galois_census::sympoly::{
    verify_joint_degree_last_two, verify_leading_in_last, verify_trinomial_specialization,
    LemmaReport, MAX_SYMBOLIC_DEGREE, MIN_SYMBOLIC_DEGREE,
};
use galois_census::Error;
use serde_json::{json, Value};

use crate::args::{
    CensusArgs, ClassifyArgs, Common, FitArgs, Format, LinesArgs, PrefixArgs, SurfaceArgs,
    VerifyArgs,
};
use crate::CliError;

const CEILING_VAR: &str = "GALOIS_CENSUS_CEILING";

type CliResult = Result<(), CliError>;

fn emit(common: &Common, text: &str) -> CliResult {
    match &common.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_json(common: &Common, value: &Value) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    emit(common, &text)
}

fn elapsed(common: &Common, start: Instant) -> u64 {
    if common.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    }
}

fn config(force: bool) -> Result<CensusConfig, CliError> {
    let ceiling = match std::env::var(CEILING_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map_err(|_| CliError::Usage(format!("{CEILING_VAR} must be a nonnegative integer, got `{v}`")))?,
        Err(_) => DEFAULT_CEILING,
    };
    Ok(CensusConfig { ceiling, force })
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn census(a: CensusArgs) -> CliResult {
    let heights: Vec<u64> = match a.h {
        Some(h) => vec![h],
        None => a.h_list.clone(),
    };
    let config = config(a.force)?;
    // Refuse before doing any work if some height is out of range.
    for &h in &heights {
        config.check(census::box_size(a.n, h))?;
    }
    let mut rows: Vec<CensusRow> = Vec::with_capacity(heights.len());
    for &h in &heights {
        let row = census::run_census_with(a.n, h, a.budget, a.partitions, &config)?;
        rows.push(if a.common.timing { row } else { row.without_timing() });
    }
    match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => emit(&a.common, &census::to_csv_string(&rows)?),
        Format::Json => emit_json(&a.common, &json!({ "rows": rows })),
    }
}

fn reason(class: &GaloisClass) -> Value {
    match class {
        GaloisClass::CertifiedSn(SnEvidence::Frobenius(c)) => json!({
            "kind": "frobenius",
            "full_cycle_prime": c.full_cycle,
            "long_cycle_prime": c.long_cycle,
            "transposition_prime": c.transposition,
        }),
        GaloisClass::CertifiedSn(SnEvidence::SmallDegree(g))
        | GaloisClass::CertifiedNonSn(NonSnReason::SmallDegree(g)) => {
            json!({ "kind": "small_degree", "group": g.to_string() })
        }
        GaloisClass::CertifiedNonSn(NonSnReason::DiscZero) => json!({ "kind": "disc_zero" }),
        GaloisClass::CertifiedNonSn(NonSnReason::DiscSquare(r)) => {
            json!({ "kind": "disc_square", "sqrt": r.to_string() })
        }
        GaloisClass::CertifiedNonSn(NonSnReason::Reducible(g)) => {
            json!({ "kind": "reducible", "factor": g.to_string() })
        }
        GaloisClass::Undecided(u) => json!({
            "kind": "undecided",
            "primes_tried": u.primes_tried,
            "cycle_types": u.cycle_types.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "note": u.note,
        }),
    }
}

fn reason_summary(class: &GaloisClass) -> String {
    let r = reason(class);
    let kind = r["kind"].as_str().unwrap_or_default().to_owned();
    match class {
        GaloisClass::CertifiedSn(SnEvidence::SmallDegree(g))
        | GaloisClass::CertifiedNonSn(NonSnReason::SmallDegree(g)) => format!("{kind}:{g}"),
        GaloisClass::CertifiedNonSn(NonSnReason::Reducible(g)) => format!("{kind}:{g}"),
        _ => kind,
    }
}

pub fn classify(a: ClassifyArgs) -> CliResult {
    let start = Instant::now();
    let f: MonicPoly = a.polynomial.parse()?;
    let disc = discriminant(&f)?;
    let class = classify_with_disc(&f, &disc, a.budget);
    let ms = elapsed(&a.common, start);
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            &a.common,
            &json!({
                "polynomial": f.to_string(),
                "degree": f.degree(),
                "verdict": class.label(),
                "reason": reason(&class),
                "disc": disc.value.to_string(),
                "elapsed_ms": ms,
            }),
        ),
        Format::Csv => {
            let mut text = csv_line(&["polynomial", "verdict", "reason", "disc", "elapsed_ms"].map(String::from));
            text += &csv_line(&[
                f.to_string(),
                class.label().to_owned(),
                reason_summary(&class),
                disc.value.to_string(),
                ms.to_string(),
            ]);
            emit(&a.common, &text)
        }
    }
}

fn resolve_prefix(p: &PrefixArgs) -> Vec<i64> {
    match p.seed {
        Some(seed) => geometry::random_prefix(p.n, seed, p.prefix_bound),
        None => p.prefix.clone(),
    }
}

fn prefix_params(p: &PrefixArgs, prefix: &[i64]) -> Value {
    json!({ "n": p.n, "prefix": prefix, "seed": p.seed })
}

pub fn surface(a: SurfaceArgs) -> CliResult {
    let start = Instant::now();
    let prefix = resolve_prefix(&a.prefix);
    let config = config(a.force)?;
    let heights: Vec<u64> = match a.h {
        Some(h) => vec![h],
        None => a.h_list.clone(),
    };
    let mut counts = Vec::with_capacity(heights.len());
    for &h in &heights {
        counts.push(count_surface_with(a.prefix.n, &prefix, h, &config)?);
    }
    let ms = elapsed(&a.common, start);
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut params = prefix_params(&a.prefix, &prefix);
            let value = if let (Some(h), [c]) = (a.h, counts.as_slice()) {
                params["H"] = json!(h);
                json!({
                    "params": params,
                    "points": c.points,
                    "square_pairs": c.square_pairs,
                    "elapsed_ms": ms,
                })
            } else {
                params["H_list"] = json!(heights);
                let fit = galois_census::fit::fit_power_law(
                    counts.iter().map(|c| (c.h as f64, c.points as f64)),
                )
                .ok()
                .map(|f| json!({ "slope": f.slope, "intercept": f.intercept, "residual": f.residual }));
                json!({
                    "params": params,
                    "counts": counts
                        .iter()
                        .map(|c| json!({ "H": c.h, "points": c.points, "square_pairs": c.square_pairs }))
                        .collect::<Vec<_>>(),
                    "fit": fit,
                    "elapsed_ms": ms,
                })
            };
            emit_json(&a.common, &value)
        }
        Format::Csv => {
            let mut text = csv_line(&["n", "prefix", "H", "points", "square_pairs", "elapsed_ms"].map(String::from));
            for c in &counts {
                text += &csv_line(&[
                    c.n.to_string(),
                    join(&c.prefix, ";"),
                    c.h.to_string(),
                    c.points.to_string(),
                    c.square_pairs.to_string(),
                    ms.to_string(),
                ]);
            }
            emit(&a.common, &text)
        }
    }
}

pub fn lines(a: LinesArgs) -> CliResult {
    let start = Instant::now();
    let prefix = resolve_prefix(&a.prefix);
    let (d1, d2, d3) = &a.d;
    let c = count_line(a.prefix.n, &prefix, d1, d2, d3, a.h)?;
    let ms = elapsed(&a.common, start);
    let d = [d1.to_string(), d2.to_string(), d3.to_string()];
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut params = prefix_params(&a.prefix, &prefix);
            params["d"] = json!(d);
            params["H"] = json!(a.h);
            emit_json(
                &a.common,
                &json!({ "params": params, "points": c.points, "elapsed_ms": ms }),
            )
        }
        Format::Csv => {
            let mut text = csv_line(&["n", "prefix", "d1", "d2", "d3", "H", "points", "elapsed_ms"].map(String::from));
            text += &csv_line(&[
                c.n.to_string(),
                join(&c.prefix, ";"),
                d[0].clone(),
                d[1].clone(),
                d[2].clone(),
                c.h.to_string(),
                c.points.to_string(),
                ms.to_string(),
            ]);
            emit(&a.common, &text)
        }
    }
}

pub fn verify_lemmas(a: VerifyArgs) -> CliResult {
    if !(MIN_SYMBOLIC_DEGREE..=MAX_SYMBOLIC_DEGREE).contains(&a.n_max) {
        return Err(CliError::Usage(format!(
            "--n-max must lie in {MIN_SYMBOLIC_DEGREE}..={MAX_SYMBOLIC_DEGREE}, got {}",
            a.n_max
        )));
    }
    let mut reports: Vec<LemmaReport> = Vec::new();
    let verifiers: [fn(usize) -> galois_census::Result<LemmaReport>; 3] = [
        verify_leading_in_last,
        verify_joint_degree_last_two,
        verify_trinomial_specialization,
    ];
    for verify in verifiers {
        for n in MIN_SYMBOLIC_DEGREE..=a.n_max {
            reports.push(verify(n)?);
        }
    }
    let all_passed = reports.iter().all(|r| r.passed);
    match a.common.format {
        None => {
            let mut text = String::new();
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                text += &format!(
                    "{status} {} n={} expected={} found={}\n",
                    r.lemma, r.n, r.expected, r.found
                );
            }
            emit(&a.common, &text)?;
        }
        Some(Format::Json) => {
            emit_json(&a.common, &json!({ "reports": reports, "all_passed": all_passed }))?
        }
        Some(Format::Csv) => {
            let mut text = csv_line(&["lemma", "n", "passed", "expected", "found"].map(String::from));
            for r in &reports {
                text += &csv_line(&[
                    r.lemma.to_owned(),
                    r.n.to_string(),
                    r.passed.to_string(),
                    r.expected.clone(),
                    r.found.clone(),
                ]);
            }
            emit(&a.common, &text)?;
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Invariant("a symbolic identity failed".into()))
    }
}

pub fn fit(a: FitArgs) -> CliResult {
    let counter: Counter = a.counter.parse()?;
    let file = File::open(&a.input).map_err(|e| Error::Io(format!("{}: {e}", a.input.display())))?;
    let rows = census::read_csv(file)?;
    let f = census::fit_exponent(&rows, counter)?;
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            &a.common,
            &json!({
                "counter": a.counter,
                "slope": f.slope,
                "intercept": f.intercept,
                "residual": f.residual,
                "points": f.points,
            }),
        ),
        Format::Csv => {
            let mut text = csv_line(&["counter", "slope", "intercept", "residual"].map(String::from));
            text += &csv_line(&[
                a.counter.clone(),
                f.slope.to_string(),
                f.intercept.to_string(),
                f.residual.to_string(),
            ]);
            emit(&a.common, &text)
        }
    }
}
