use std::fmt::Write as _;

use hurwitz_core::hurwitz::{
    all_cases, oracle_records, order_for_bounds, recursion_records, stable_cases, verify_bm_with,
    BmReport, BmRow,
};
use hurwitz_core::kontsevich::{g_series, times_by_recursion, times_from_curve, y_of_xi};
use hurwitz_core::properties::series_properties;
use hurwitz_core::toprec::required_order;
use hurwitz_core::{
    elsv_consistency, format_rational, HurwitzOracle, HurwitzRecord, QTopRec, Rational,
};
use log::info;
use serde::Serialize;

use crate::cache::CacheFile;
use crate::config::{Format, MethodArg, RunConfig};
use crate::error::CliError;

/// Output text plus whether a mathematical mismatch was found.
pub struct Outcome {
    pub stdout: String,
    pub mismatch: Option<String>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            mismatch: None,
        }
    }
}

/// Builds an engine at the configured order, warmed from the cache if any.
fn with_engine<R>(
    config: &RunConfig,
    default_order: i64,
    body: impl FnOnce(&mut QTopRec) -> Result<R, CliError>,
) -> Result<R, CliError> {
    let order = config.order(default_order)?;
    let mut engine = QTopRec::lambert(order)?;
    let mut cache = config.cache.as_deref().map(CacheFile::load);
    if let Some(c) = &cache {
        c.preload(&mut engine);
    }
    let result = body(&mut engine)?;
    if let (Some(c), Some(path)) = (cache.as_mut(), config.cache.as_deref()) {
        c.absorb(&engine);
        c.save(path)?;
        info!("cache written to {}", path.display());
    }
    Ok(result)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn mu_csv(parts: &[u32]) -> String {
    parts
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct RecordJson {
    g: u32,
    mu: Vec<u32>,
    method: &'static str,
    value: String,
}

fn records_csv(records: &[HurwitzRecord]) -> String {
    let mut out = String::from("g,mu,method,value\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.g,
            mu_csv(r.mu.parts()),
            r.method.as_str(),
            format_rational(&r.value)
        );
    }
    out
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let head: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    for r in std::iter::once(&head).chain(rows) {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

fn emit_records(records: &[HurwitzRecord], format: Format) -> String {
    match format {
        Format::Json => json(
            &records
                .iter()
                .map(|r| RecordJson {
                    g: r.g,
                    mu: r.mu.parts().to_vec(),
                    method: r.method.as_str(),
                    value: format_rational(&r.value),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => records_csv(records),
        Format::Text => aligned(
            &["g", "mu", "value"],
            &records
                .iter()
                .map(|r| vec![r.g.to_string(), r.mu.to_string(), format_rational(&r.value)])
                .collect::<Vec<_>>(),
        ),
    }
}

fn emit_comparison(report: &BmReport, format: Format) -> String {
    match format {
        Format::Json => json(&report.to_json_rows()),
        Format::Text => report.to_text(),
        Format::Csv => {
            let records: Vec<HurwitzRecord> = report
                .rows
                .iter()
                .flat_map(|r| {
                    [
                        (hurwitz_core::Method::Recursion, r.recursion.clone()),
                        (hurwitz_core::Method::Oracle, r.oracle.clone()),
                    ]
                    .map(|(method, value)| HurwitzRecord {
                        g: r.g,
                        mu: r.mu.clone(),
                        method,
                        value,
                    })
                })
                .collect();
            records_csv(&records)
        }
    }
}

fn mismatch_context(row: &BmRow) -> String {
    format!(
        "H_{{{},{}}}: recursion {} != oracle {}",
        row.g,
        row.mu,
        format_rational(&row.recursion),
        format_rational(&row.oracle)
    )
}

pub fn table(config: &RunConfig) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Text);
    let oracle = || HurwitzOracle::new(config.n_max, config.g_max);
    let default_order = order_for_bounds(config.g_max, config.n_max);
    match config.method {
        MethodArg::Oracle => {
            let records = oracle_records(&oracle(), &all_cases(config.g_max, config.n_max))?;
            Ok(Outcome::ok(emit_records(&records, format)))
        }
        MethodArg::Recursion => {
            let records = with_engine(config, default_order, |e| {
                Ok(recursion_records(e, config.g_max, config.n_max)?)
            })?;
            Ok(Outcome::ok(emit_records(&records, format)))
        }
        MethodArg::Both => {
            let recursion = with_engine(config, default_order, |e| {
                Ok(recursion_records(e, config.g_max, config.n_max)?)
            })?;
            let oracle = oracle_records(&oracle(), &stable_cases(config.g_max, config.n_max))?;
            let report = BmReport {
                rows: recursion
                    .into_iter()
                    .zip(oracle)
                    .map(|(r, o)| BmRow {
                        g: r.g,
                        mu: r.mu,
                        recursion: r.value,
                        oracle: o.value,
                    })
                    .collect(),
            };
            Ok(Outcome {
                stdout: emit_comparison(&report, format),
                mismatch: report.first_mismatch().map(mismatch_context),
            })
        }
    }
}

pub fn wkg(config: &RunConfig, g: u32, k: u32) -> Result<Outcome, CliError> {
    hurwitz_core::toprec::validate_stable(g, k)?;
    let form = with_engine(config, required_order(g, k), |e| Ok(e.w(g, k)?))?;
    let out = match config.format_or(Format::Json) {
        Format::Json => json(&form.to_json()),
        Format::Csv => {
            let mut s = String::from("a,c\n");
            for (a, c) in &form.terms {
                let _ = writeln!(s, "{},{}", mu_csv(a), format_rational(c));
            }
            s
        }
        Format::Text => aligned(
            &["a", "c"],
            &form
                .terms
                .iter()
                .map(|(a, c)| vec![format!("{a:?}"), format_rational(c)])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::ok(out))
}

pub fn fg(config: &RunConfig, g: u32) -> Result<Outcome, CliError> {
    if g < 2 {
        return Err(CliError::OutOfRange(format!(
            "F_g is only computed for g >= 2 (got {g})"
        )));
    }
    let value = with_engine(config, required_order(g, 1), |e| Ok(e.f_g(g)?))?;
    let out = match config.format_or(Format::Text) {
        Format::Json => json(&serde_json::json!({"g": g, "F": format_rational(&value)})),
        Format::Csv => format!("g,F\n{g},{}\n", format_rational(&value)),
        Format::Text => format!("{}\n", format_rational(&value)),
    };
    Ok(Outcome::ok(out))
}

pub fn check_bm(config: &RunConfig) -> Result<Outcome, CliError> {
    let oracle = HurwitzOracle::new(config.n_max, config.g_max);
    let report = with_engine(config, order_for_bounds(config.g_max, config.n_max), |e| {
        Ok(verify_bm_with(e, &oracle, config.g_max, config.n_max)?)
    })?;
    Ok(Outcome {
        stdout: emit_comparison(&report, config.format_or(Format::Text)),
        mismatch: report.first_mismatch().map(mismatch_context),
    })
}

pub fn check_elsv(config: &RunConfig) -> Result<Outcome, CliError> {
    let report = elsv_consistency(config.g_max, config.n_max)?;
    let stdout = match config.format_or(Format::Text) {
        Format::Json => json(&report.to_json()),
        Format::Text => report.to_text(),
        Format::Csv => {
            let mut s = String::from("family,g,mu,elsv,oracle,equal\n");
            for f in report.to_json() {
                for r in f.rows {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        f.family,
                        r.g,
                        mu_csv(&r.mu),
                        r.elsv,
                        r.oracle,
                        r.equal
                    );
                }
            }
            s
        }
    };
    let mismatch = report
        .families
        .iter()
        .flat_map(|f| f.rows.iter())
        .find(|r| !r.equal())
        .map(|r| {
            format!(
                "H_{{{},{}}}: elsv {} != oracle {}",
                r.g,
                r.mu,
                format_rational(&r.elsv),
                format_rational(&r.oracle)
            )
        });
    Ok(Outcome { stdout, mismatch })
}

#[derive(Serialize)]
struct Comparison {
    item: String,
    computed: String,
    expected: String,
    equal: bool,
}

fn comparison(item: String, computed: &Rational, expected: &Rational) -> Comparison {
    Comparison {
        item,
        computed: format_rational(computed),
        expected: format_rational(expected),
        equal: computed == expected,
    }
}

fn emit_comparisons(rows: &[Comparison], format: Format) -> String {
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("item,computed,expected,equal\n");
            for r in rows {
                let _ = writeln!(s, "{},{},{},{}", r.item, r.computed, r.expected, r.equal);
            }
            s
        }
        Format::Text => aligned(
            &["item", "computed", "expected", "equal"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.item.clone(),
                        r.computed.clone(),
                        r.expected.clone(),
                        r.equal.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

fn first_unequal(rows: &[Comparison]) -> Option<String> {
    rows.iter()
        .find(|r| !r.equal)
        .map(|r| format!("{}: computed {} != expected {}", r.item, r.computed, r.expected))
}

fn q(n: i64, d: i64) -> Rational {
    hurwitz_core::scalar::rational(n, d)
}

/// Times by recursion against times read off the curve, plus the displayed
/// anchor values of the local expansion.
pub fn check_times(config: &RunConfig) -> Result<Outcome, CliError> {
    const T_MAX: usize = 20;
    let by_recursion = times_by_recursion::<Rational>(T_MAX);
    let from_curve = times_from_curve::<Rational>(T_MAX)?;
    let mut rows: Vec<Comparison> = by_recursion
        .iter()
        .map(|(m, t)| {
            comparison(
                format!("t_{m}"),
                t,
                from_curve.get(m).expect("same length"),
            )
        })
        .collect();
    let y = y_of_xi::<Rational>(6)?;
    let y_expected = [q(1, 1), q(1, 1), q(1, 3), q(1, 36), q(-1, 270), q(1, 4320)];
    for (m, e) in y_expected.iter().enumerate() {
        rows.push(comparison(format!("y[xi^{m}]"), &y.coeff(m as i64)?, e));
    }
    let g = g_series(8)?;
    let g_expected = [
        q(0, 1),
        q(-1, 6),
        q(0, 1),
        q(1, 45),
        q(0, 1),
        q(-8, 315),
        q(0, 1),
        q(8, 105),
        q(0, 1),
    ];
    for (m, e) in g_expected.iter().enumerate() {
        rows.push(comparison(format!("g[z^{m}]"), &g.coeff(m as i64)?, e));
    }
    rows.push(comparison("t_3 anchor".into(), by_recursion.get(3).expect("t_3"), &q(3, 1)));
    rows.push(comparison("t_4 anchor".into(), by_recursion.get(4).expect("t_4"), &q(1, 3)));
    Ok(Outcome {
        mismatch: first_unequal(&rows),
        stdout: emit_comparisons(&rows, config.format_or(Format::Text)),
    })
}

#[derive(Serialize)]
struct PropertyJson {
    property: &'static str,
    cases: usize,
    failures: usize,
}

pub fn check_series(config: &RunConfig) -> Result<Outcome, CliError> {
    let outcomes = series_properties(0, 64);
    let rows: Vec<PropertyJson> = outcomes
        .iter()
        .map(|o| PropertyJson {
            property: o.name,
            cases: o.cases,
            failures: o.failures,
        })
        .collect();
    let stdout = match config.format_or(Format::Text) {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("property,cases,failures\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{}", r.property, r.cases, r.failures);
            }
            s
        }
        Format::Text => aligned(
            &["property", "cases", "failures"],
            &rows
                .iter()
                .map(|r| vec![r.property.to_string(), r.cases.to_string(), r.failures.to_string()])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome {
        stdout,
        mismatch: outcomes
            .iter()
            .find(|o| !o.passed())
            .map(|o| format!("{} failed on {} of {} inputs", o.name, o.failures, o.cases)),
    })
}
