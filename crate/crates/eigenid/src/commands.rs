//! The subcommands. Each returns its output as a string so it can be tested
//! without spawning a process; indices in output are 1-based.

use std::path::Path;
use std::time::Instant;

use eigenid_core::eigensolve::{eigvalsh, residual_norm};
use eigenid_core::identity::{EntryFlag, MagnitudeTable};
use eigenid_core::phase::{self, ComponentFlag};
use eigenid_core::spectral::default_tolerance;
use eigenid_core::verify::{self, CheckReport};
use eigenid_core::{HermitianMatrix, Spectrum};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::matrix_file;
use crate::methods::{self, Method};

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub json: bool,
    pub threads: Option<usize>,
}

/// Runs `f` on a rayon pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Validation("--threads must be at least 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Validation(format!("cannot start thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Fixed-point text rendering: ten decimals, trailing zeros trimmed, `-0`
/// shown as `0`.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() >= 1e10 {
        return format!("{x:.10e}");
    }
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<HermitianMatrix, CliError> {
    matrix_file::load(path)
}

fn spectrum(a: &HermitianMatrix) -> Result<Spectrum, CliError> {
    Ok(eigvalsh(a)?)
}

pub fn cmd_eig(path: &Path, opts: Options) -> Result<String, CliError> {
    let a = load(path)?;
    let s = spectrum(&a)?;
    if opts.json {
        return Ok(json_line(&json!({ "n": a.dim(), "eigenvalues": s.values() })));
    }
    let parts: Vec<String> = s.values().iter().map(|&x| fmt_real(x)).collect();
    Ok(format!("{}\n", parts.join(" ")))
}

fn flag_name(f: EntryFlag) -> &'static str {
    match f {
        EntryFlag::Computed => "computed",
        EntryFlag::ExactZero => "exact_zero",
        EntryFlag::DegenerateGroupMass => "group_mass",
    }
}

fn render_magnitudes(table: &MagnitudeTable, method: Method, json: bool) -> String {
    let n = table.dim();
    let s = table.spectrum().values();
    if json {
        let rows: Vec<Value> = table
            .aggregated_rows()
            .into_iter()
            .map(|(g, values)| {
                json!({
                    "indices": g.indices().map(|i| i + 1).collect::<Vec<_>>(),
                    "eigenvalue": g.representative,
                    "multiplicity": g.len,
                    "values": values,
                    "flags": (0..n).map(|j| flag_name(table.flag(g.start, j))).collect::<Vec<_>>(),
                })
            })
            .collect();
        return json_line(&json!({
            "method": method.name(),
            "n": n,
            "tolerance": table.grouping().tolerance(),
            "eigenvalues": s,
            "rows": rows,
        }));
    }
    let mut rows = vec![{
        let mut h = vec!["i".to_string(), "eigenvalue".to_string()];
        h.extend((1..=n).map(|j| format!("j={j}")));
        h
    }];
    for (g, values) in table.aggregated_rows() {
        let label = if g.is_simple() { format!("{}", g.start + 1) } else { format!("[{}-{} x{}]", g.start + 1, g.end(), g.len) };
        let mut r = vec![label, fmt_real(g.representative)];
        r.extend(values.iter().map(|&v| fmt_real(v)));
        rows.push(r);
    }
    render_table(&rows)
}

fn grouping_tol(s: &Spectrum, tol: Option<f64>) -> Result<f64, CliError> {
    match tol {
        None => Ok(default_tolerance(s)),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(CliError::Validation(format!("--tol must be positive and finite, got {t}"))),
    }
}

pub fn cmd_magnitudes(path: &Path, method: Method, tol: Option<f64>, opts: Options) -> Result<String, CliError> {
    let a = load(path)?;
    let tol = grouping_tol(&spectrum(&a)?, tol)?;
    let table = with_threads(opts.threads, || methods::compute(&a, method, tol))??;
    Ok(render_magnitudes(&table, method, opts.json))
}

fn component_note(flag: ComponentFlag, pivot: bool) -> &'static str {
    match (pivot, flag) {
        (true, _) => "pivot",
        (false, ComponentFlag::Defined) => "",
        (false, ComponentFlag::ExactZero) => "exact zero",
        (false, ComponentFlag::UndefinedPhase) => "phase undefined",
    }
}

/// `index` is 1-based.
pub fn cmd_reconstruct(path: &Path, index: usize, opts: Options) -> Result<String, CliError> {
    let a = load(path)?;
    let n = a.dim();
    if index == 0 || index > n {
        return Err(CliError::Validation(format!("--index must be between 1 and {n}, got {index}")));
    }
    let s = spectrum(&a)?;
    let r = phase::reconstruct_with_spectrum(&a, &s, index - 1)?;
    let lambda = s.values()[index - 1];
    let residual = residual_norm(&a, lambda, &r.components);
    if opts.json {
        let comps: Vec<Value> = r
            .components
            .iter()
            .zip(&r.flags)
            .map(|(z, f)| {
                let flag = match f {
                    ComponentFlag::Defined => "defined",
                    ComponentFlag::ExactZero => "exact_zero",
                    ComponentFlag::UndefinedPhase => "phase_undefined",
                };
                json!({ "re": z.re, "im": z.im, "flag": flag })
            })
            .collect();
        return Ok(json_line(&json!({
            "index": index,
            "eigenvalue": lambda,
            "pivot": r.pivot + 1,
            "components": comps,
            "residual": residual,
        })));
    }
    let mut rows = vec![vec!["j".to_string(), "re".to_string(), "im".to_string(), "note".to_string()]];
    for (k, (z, f)) in r.components.iter().zip(&r.flags).enumerate() {
        rows.push(vec![(k + 1).to_string(), fmt_real(z.re), fmt_real(z.im), component_note(*f, k == r.pivot).to_string()]);
    }
    Ok(format!(
        "eigenvector {index} (eigenvalue {}), pivot component {}\n{}residual {residual:.3e}\n",
        fmt_real(lambda),
        r.pivot + 1,
        render_table(&rows)
    ))
}

pub fn report_json(r: &CheckReport) -> Value {
    json!({
        "check": r.check_name,
        "passed": r.passed,
        "max_abs_deviation": r.max_abs_deviation,
        "tolerance": r.tolerance,
        "witnesses": r.witnesses,
    })
}

/// JSON lines, one per check, and whether every check passed.
pub fn cmd_verify(path: &Path, seed: u64, opts: Options) -> Result<(String, bool), CliError> {
    let a = load(path)?;
    let reports = with_threads(opts.threads, || verify::run_full_suite(&a, seed))??;
    let out: String = reports.iter().map(|r| json_line(&report_json(r))).collect();
    Ok((out, reports.iter().all(|r| r.passed)))
}

/// Timing and deviations of the four computation paths.
#[derive(Clone, Debug)]
pub struct PathRun {
    pub method: Method,
    pub mean_seconds: f64,
    pub values: Result<Vec<Vec<Option<f64>>>, String>,
}

impl PathRun {
    /// Number of entries the path could not evaluate.
    pub fn skipped(&self) -> usize {
        self.values.as_ref().map_or(0, |v| v.iter().flatten().filter(|x| x.is_none()).count())
    }
}

/// Largest difference over entries both paths evaluated. A non-finite
/// value on either side counts as an infinite deviation.
pub fn max_deviation(a: &[Vec<Option<f64>>], b: &[Vec<Option<f64>>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .filter_map(|(x, y)| Some((x.as_ref()? - y.as_ref()?).abs()))
        .map(|d| if d.is_nan() { f64::INFINITY } else { d })
        .fold(0.0, f64::max)
}

pub fn stability_runs(a: &HermitianMatrix, repeat: usize, tol: f64, threads: Option<usize>) -> Result<Vec<PathRun>, CliError> {
    let repeat = repeat.max(1);
    Method::ALL
        .iter()
        .map(|&method| {
            let start = Instant::now();
            let mut values = Err(String::new());
            for _ in 0..repeat {
                values = with_threads(threads, || methods::compute_partial(a, method, tol))?.map_err(|e| e.to_string());
            }
            let mean_seconds = start.elapsed().as_secs_f64() / repeat as f64;
            Ok(PathRun { method, mean_seconds, values })
        })
        .collect()
}

pub fn cmd_stability(path: &Path, repeat: usize, opts: Options) -> Result<String, CliError> {
    let a = load(path)?;
    let tol = default_tolerance(&spectrum(&a)?);
    let runs = stability_runs(&a, repeat, tol, opts.threads)?;
    let mut pairs = Vec::new();
    for (x, rx) in runs.iter().enumerate() {
        for ry in &runs[x + 1..] {
            if let (Ok(vx), Ok(vy)) = (&rx.values, &ry.values) {
                pairs.push((rx.method, ry.method, max_deviation(vx, vy)));
            }
        }
    }
    if opts.json {
        let paths: Vec<Value> = runs
            .iter()
            .map(|r| {
                json!({
                    "method": r.method.name(),
                    "ok": r.values.is_ok(),
                    "mean_seconds": r.mean_seconds,
                    "skipped_entries": r.skipped(),
                    "error": r.values.as_ref().err(),
                })
            })
            .collect();
        let pairs: Vec<Value> =
            pairs.iter().map(|(x, y, d)| json!({ "a": x.name(), "b": y.name(), "max_abs_deviation": d })).collect();
        return Ok(json_line(&json!({ "n": a.dim(), "repeat": repeat.max(1), "paths": paths, "pairs": pairs })));
    }
    let mut rows = vec![vec!["path".to_string(), "mean_ms".to_string(), "skipped".to_string(), "status".to_string()]];
    for r in &runs {
        rows.push(vec![
            r.method.name().to_string(),
            format!("{:.3}", r.mean_seconds * 1e3),
            r.skipped().to_string(),
            r.values.as_ref().err().map_or("ok".to_string(), |e| format!("failed: {e}")),
        ]);
    }
    let mut pair_rows = vec![vec!["pair".to_string(), "max_abs_deviation".to_string()]];
    for (x, y, d) in &pairs {
        pair_rows.push(vec![format!("{}-{}", x.name(), y.name()), format!("{d:.3e}")]);
    }
    Ok(format!("{}\n{}", render_table(&rows), render_table(&pair_rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_real(-1.2e-16), "0");
        assert_eq!(fmt_real(3.0), "3");
        assert_eq!(fmt_real(2.0 / 3.0), "0.6666666667");
        assert_eq!(fmt_real(-0.5), "-0.5");
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&[vec!["a".into(), "bb".into()], vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
    }

    #[test]
    fn deviation_skips_missing_entries() {
        let a = vec![vec![Some(1.0), None]];
        let b = vec![vec![Some(1.5), Some(9.0)]];
        assert_eq!(max_deviation(&a, &b), 0.5);
        assert_eq!(max_deviation(&[vec![Some(f64::NAN)]], &[vec![Some(0.0)]]), f64::INFINITY);
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(matches!(with_threads(Some(0), || 1), Err(CliError::Validation(_))));
        assert_eq!(with_threads(Some(2), || 7).unwrap(), 7);
    }
}
