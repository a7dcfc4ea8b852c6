//! `hardy-verify`: builds the scenarios of `hardy-core`, runs their
//! verifications and prints JSON or CSV reports.
//!
//! Every report carries its own cross-checks (matrix value against closed
//! form, replay of certificates, and so on). Exit codes:
//!
//! * `0`: success, every cross-check within `--tol`,
//! * `2`: usage or validation error,
//! * `3`: a cross-check exceeded `--tol`.

use std::ffi::OsString;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hardy_core::bellhv::{self, BlochVector, ConditionalComparison, MonteCarloCheck};
use hardy_core::gedanken::{self, RelationEntry};
use hardy_core::hardy4::{self, HardyMetrics, HardyParams, SweepRow};
use hardy_core::hvlogic::{self, Certificate, ConstraintSystem, GATE_TOL};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_TOL: f64 = 1e-3;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CERTIFY_ALPHA: f64 = 0.6;
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Column order of Hardy sweep CSV output.
pub const SWEEP_HEADER: [&str; 10] = [
    "alpha",
    "beta",
    "p_D1",
    "p_D2_given_D1",
    "p_U2_given_D1",
    "p_U1_given_D2",
    "p_U1U2",
    "p_D1D2",
    "c_bar",
    "comm_D1U1",
];

#[derive(Debug, Parser)]
#[command(
    name = "hardy-verify",
    version,
    about = "Verification harness for Hardy's paradox"
)]
struct Cli {
    /// Tolerance for internal cross-checks, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Electron-positron interferometer relations and the disturbance test.
    Gedanken,
    /// Parametric two-qubit model.
    Hardy(HardyArgs),
    /// Bell's single-qubit hidden-variables model under conditional measurement.
    Bell(BellArgs),
    /// Local-realism certificate for a scenario.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["alpha", "sweep", "optimize"])))]
struct HardyArgs {
    /// Amplitude α in (0, 1); β = sqrt(1 − α²).
    #[arg(long)]
    alpha: Option<f64>,
    /// Tabulate the model on an inclusive α grid.
    #[arg(long, requires_all = ["alpha_min", "alpha_max", "steps"])]
    sweep: bool,
    #[arg(long, requires = "sweep")]
    alpha_min: Option<f64>,
    #[arg(long, requires = "sweep")]
    alpha_max: Option<f64>,
    #[arg(long, requires = "sweep")]
    steps: Option<usize>,
    /// Maximize the paradox probability ⟨D1 D2⟩ over α.
    #[arg(long)]
    optimize: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["s", "scan"])))]
struct BellArgs {
    /// State direction `x,y,z` (normalized on input).
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true, requires_all = ["m", "n"])]
    s: Option<BlochVector>,
    /// First measurement axis.
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true, requires = "s")]
    m: Option<BlochVector>,
    /// Second measurement axis.
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true, requires = "s")]
    n: Option<BlochVector>,
    /// Number of random (s, m, n) triples.
    #[arg(long)]
    scan: Option<usize>,
    /// Monte Carlo cross-check of the classical conditional with K samples.
    #[arg(long, value_name = "K")]
    mc_samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    Hardy,
    Gedanken,
    TwoStep,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[arg(long, value_enum)]
    scenario: Scenario,
    /// Amplitude α for the hardy and two-step scenarios (default 0.6).
    #[arg(long)]
    alpha: Option<f64>,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if tol > 0.0 && tol <= MAX_TOL {
        Ok(tol)
    } else {
        Err(format!("must lie in (0, {MAX_TOL:e}]"))
    }
}

fn parse_vector(s: &str) -> Result<BlochVector, String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let [x, y, z] = parts[..] else {
        return Err(format!(
            "expected three comma-separated reals, got {}",
            parts.len()
        ));
    };
    BlochVector::normalized(x, y, z).map_err(|e| e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Cross-checks collected while building a report.
#[derive(Debug)]
struct Checks {
    tol: f64,
    entries: Vec<(String, f64)>,
}

impl Checks {
    fn new(tol: f64) -> Self {
        Self {
            tol,
            entries: Vec::new(),
        }
    }

    fn difference(&mut self, name: impl Into<String>, difference: f64) {
        self.entries.push((name.into(), difference));
    }

    /// Records a boolean check as difference 0 or infinity.
    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.difference(name, if ok { 0.0 } else { f64::INFINITY });
    }

    fn passes(&self, difference: f64) -> bool {
        difference <= self.tol
    }

    fn failures(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|(_, d)| !self.passes(*d))
            .map(|(name, d)| {
                format!(
                    "cross-check `{name}` failed: difference {d:e} exceeds {:e}",
                    self.tol
                )
            })
            .collect()
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(name, d)| {
                    json!({
                        "name": name,
                        "difference": if d.is_finite() { json!(d) } else { Value::Null },
                        "passed": self.passes(*d),
                    })
                })
                .collect(),
        )
    }
}

struct Report {
    json: Value,
    csv: Vec<Vec<String>>,
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Plain decimal rendering of [`round_significant`].
pub fn format_number(x: f64) -> String {
    let r = round_significant(x);
    if r == 0.0 {
        "0".to_string()
    } else {
        r.to_string()
    }
}

fn round_json(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .map(round_significant)
            .and_then(serde_json::Number::from_f64)
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect())
        }
        other => other,
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut checks = Checks::new(cli.tol);
    let report = match &cli.command {
        Command::Gedanken => gedanken_report(&mut checks),
        Command::Hardy(args) => hardy_report(args, &mut checks),
        Command::Bell(args) => bell_report(args, cli.seed, &mut checks),
        Command::Certify(args) => certify_report(args, &mut checks),
    };
    let report = match report {
        Ok(r) => r,
        Err(message) => return Outcome::usage(format!("error: {message}\n")),
    };
    let stdout = match cli.format {
        Format::Json => {
            let mut json = report.json;
            if let Value::Object(map) = &mut json {
                map.insert("tol".into(), json!(cli.tol));
                map.insert("cross_checks".into(), checks.to_json());
            }
            let mut text = serde_json::to_string_pretty(&round_json(json)).expect("valid JSON");
            text.push('\n');
            text
        }
        Format::Csv => render_csv(&report.csv),
    };
    let failures = checks.failures();
    let stderr: String = failures.iter().map(|f| format!("{f}\n")).collect();
    Outcome {
        code: if failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_CROSS_CHECK
        },
        stdout,
        stderr,
    }
}

fn render_csv(rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn relation_json(entry: &RelationEntry) -> Value {
    json!({
        "quantum_value": entry.quantum_value,
        "closed_form": entry.closed_form,
        "difference": entry.closed_form_error(),
        "hv_prediction": entry.hv_prediction,
        "discrepancy": entry.discrepancy,
    })
}

fn gedanken_report(checks: &mut Checks) -> Result<Report, String> {
    let report = gedanken::full_report().map_err(|e| e.to_string())?;
    let disturbance = gedanken::electron_disturbance().map_err(|e| e.to_string())?;
    let mut relations = Map::new();
    let mut csv = vec![vec![
        "relation".to_string(),
        "quantum_value".into(),
        "closed_form".into(),
        "difference".into(),
        "hv_prediction".into(),
        "discrepancy".into(),
    ]];
    for (id, entry) in &report.relations {
        checks.difference(id.clone(), entry.closed_form_error());
        relations.insert(id.clone(), relation_json(entry));
        csv.push(vec![
            id.clone(),
            format_number(entry.quantum_value),
            format_number(entry.closed_form),
            format_number(entry.closed_form_error()),
            optional(entry.hv_prediction),
            optional(entry.discrepancy),
        ]);
    }
    let json = json!({
        "command": "gedanken",
        "relations": relations,
        "electron_disturbance": {
            "c": disturbance.c,
            "sigma_f": disturbance.sigma_f,
            "entropic_bound": disturbance.entropic_bound,
        },
    });
    Ok(Report { json, csv })
}

fn metric_pairs(m: &HardyMetrics) -> [(&'static str, f64); 8] {
    let values = m.as_array();
    let mut out = [("", 0.0); 8];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = (SWEEP_HEADER[k + 2], values[k]);
    }
    out
}

fn metrics_json(matrix: &HardyMetrics, closed: &HardyMetrics) -> Value {
    let mut map = Map::new();
    for ((name, m), (_, c)) in metric_pairs(matrix).into_iter().zip(metric_pairs(closed)) {
        map.insert(
            name.to_string(),
            json!({ "matrix": m, "closed_form": c, "difference": (m - c).abs() }),
        );
    }
    Value::Object(map)
}

fn sweep_csv_row(row: &SweepRow) -> Vec<String> {
    [row.alpha, row.beta]
        .into_iter()
        .chain(row.metrics.as_array())
        .map(format_number)
        .collect()
}

fn sweep_header() -> Vec<String> {
    SWEEP_HEADER.iter().map(|s| s.to_string()).collect()
}

fn hardy_report(args: &HardyArgs, checks: &mut Checks) -> Result<Report, String> {
    if let Some(alpha) = args.alpha {
        return hardy_single(alpha, checks);
    }
    if args.optimize {
        return hardy_optimum(checks);
    }
    let (min, max, steps) = match (args.alpha_min, args.alpha_max, args.steps) {
        (Some(a), Some(b), Some(n)) => (a, b, n),
        _ => return Err("--sweep needs --alpha-min, --alpha-max and --steps".into()),
    };
    let rows = hardy4::sweep(min, max, steps).map_err(|e| e.to_string())?;
    let worst = rows.iter().map(SweepRow::max_deviation).fold(0.0, f64::max);
    checks.difference("sweep_matrix_vs_closed_form", worst);
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "alpha": r.alpha,
                "beta": r.beta,
                "values": metrics_json(&r.metrics, &r.closed_form),
                "max_difference": r.max_deviation(),
            })
        })
        .collect();
    let mut csv = vec![sweep_header()];
    csv.extend(rows.iter().map(sweep_csv_row));
    let json = json!({
        "command": "hardy",
        "mode": "sweep",
        "alpha_min": min,
        "alpha_max": max,
        "steps": steps,
        "rows": json_rows,
        "max_difference": worst,
    });
    Ok(Report { json, csv })
}

fn hardy_single(alpha: f64, checks: &mut Checks) -> Result<Report, String> {
    let model = hardy4::build_model(alpha).map_err(|e| e.to_string())?;
    let metrics = hardy4::compute_metrics(&model).map_err(|e| e.to_string())?;
    let closed = HardyMetrics::closed_form(&model.params);
    let contradiction = hardy4::disturbance_contradiction(&model).map_err(|e| e.to_string())?;
    checks.difference("matrix_vs_closed_form", metrics.max_difference(&closed));
    let present = !model.params.is_maximally_entangled() && metrics.p_joint_d1d2 > GATE_TOL;
    let row = SweepRow {
        alpha: model.params.alpha(),
        beta: model.params.beta(),
        metrics,
        closed_form: closed,
    };
    let json = json!({
        "command": "hardy",
        "mode": "single",
        "alpha": row.alpha,
        "beta": row.beta,
        "values": metrics_json(&metrics, &closed),
        "max_difference": metrics.max_difference(&closed),
        "paradox": {
            "status": if present { "present" } else { "absent" },
            "p_D1D2": metrics.p_joint_d1d2,
            "maximally_entangled": model.params.is_maximally_entangled(),
        },
        "disturbance": to_json(&contradiction),
    });
    Ok(Report {
        json,
        csv: vec![sweep_header(), sweep_csv_row(&row)],
    })
}

fn hardy_optimum(checks: &mut Checks) -> Result<Report, String> {
    let opt = hardy4::optimize_paradox().map_err(|e| e.to_string())?;
    let params = HardyParams::new(opt.alpha_star).map_err(|e| e.to_string())?;
    let closed = HardyMetrics::closed_form(&params).p_joint_d1d2;
    checks.difference("p_max_matrix_vs_closed_form", (opt.p_max - closed).abs());
    let json = json!({
        "command": "hardy",
        "mode": "optimize",
        "alpha_star": opt.alpha_star,
        "beta_star": opt.beta_star,
        "p_max": opt.p_max,
        "closed_form": closed,
        "difference": (opt.p_max - closed).abs(),
    });
    let csv = vec![
        vec![
            "alpha_star".to_string(),
            "beta_star".into(),
            "p_max".into(),
            "closed_form".into(),
            "difference".into(),
        ],
        [
            opt.alpha_star,
            opt.beta_star,
            opt.p_max,
            closed,
            (opt.p_max - closed).abs(),
        ]
        .into_iter()
        .map(format_number)
        .collect(),
    ];
    Ok(Report { json, csv })
}

fn comparison_csv(c: &ConditionalComparison) -> Vec<String> {
    c.s.components()
        .into_iter()
        .chain(c.m.components())
        .chain(c.n.components())
        .chain([c.quantum, c.classical, c.discrepancy])
        .map(format_number)
        .collect()
}

const COMPARISON_HEADER: [&str; 12] = [
    "s_x",
    "s_y",
    "s_z",
    "m_x",
    "m_y",
    "m_z",
    "n_x",
    "n_y",
    "n_z",
    "quantum",
    "classical",
    "discrepancy",
];

fn monte_carlo(
    c: &ConditionalComparison,
    samples: Option<usize>,
    seed: u64,
    checks: &mut Checks,
) -> Result<Option<MonteCarloCheck>, String> {
    let Some(samples) = samples else {
        return Ok(None);
    };
    let mc =
        bellhv::monte_carlo_check(&c.s, &c.m, &c.n, samples, seed).map_err(|e| e.to_string())?;
    checks.holds("monte_carlo_within_5_sigma", mc.pass);
    checks.difference(
        "monte_carlo_exact_vs_classical",
        (mc.exact - c.classical).abs(),
    );
    Ok(Some(mc))
}

fn bell_report(args: &BellArgs, seed: u64, checks: &mut Checks) -> Result<Report, String> {
    if let Some(trials) = args.scan {
        let scan = bellhv::scan_discrepancy(trials, seed).map_err(|e| e.to_string())?;
        let c = &scan.max;
        checks.difference(
            "max_quantum_vs_closed_form",
            (c.quantum - (1.0 + c.m.dot(&c.n)) / 2.0).abs(),
        );
        checks.holds(
            "histogram_total",
            scan.histogram.iter().sum::<u64>() as usize + scan.skipped == trials,
        );
        let mc = monte_carlo(c, args.mc_samples, seed, checks)?;
        let json = json!({
            "command": "bell",
            "mode": "scan",
            "seed": seed,
            "trials": scan.trials,
            "skipped": scan.skipped,
            "max": to_json(&scan.max),
            "histogram": scan.histogram,
            "monte_carlo": mc.as_ref().map(to_json),
        });
        let bins = scan.histogram.len();
        let mut csv = vec![vec!["bin_lo".to_string(), "bin_hi".into(), "count".into()]];
        for (k, count) in scan.histogram.iter().enumerate() {
            csv.push(vec![
                format_number(k as f64 / bins as f64),
                format_number((k + 1) as f64 / bins as f64),
                count.to_string(),
            ]);
        }
        return Ok(Report { json, csv });
    }
    let (Some(s), Some(m), Some(n)) = (args.s, args.m, args.n) else {
        return Err("--s, --m and --n must be given together".into());
    };
    let c = bellhv::compare(&s, &m, &n).map_err(|e| e.to_string())?;
    let closed = (1.0 + m.dot(&n)) / 2.0;
    checks.difference("quantum_vs_closed_form", (c.quantum - closed).abs());
    let hv = bellhv::hv_expectation(&s, &m);
    let born = bellhv::born_qubit(&s, &m).map_err(|e| e.to_string())?;
    checks.difference("hv_expectation_vs_born", (hv - born).abs());
    let mc = monte_carlo(&c, args.mc_samples, seed, checks)?;
    let json = json!({
        "command": "bell",
        "mode": "compare",
        "comparison": to_json(&c),
        "quantum_closed_form": closed,
        "quantum_difference": (c.quantum - closed).abs(),
        "single_measurement": { "hv_expectation": hv, "born": born, "difference": (hv - born).abs() },
        "monte_carlo": mc.as_ref().map(to_json),
    });
    let csv = vec![
        COMPARISON_HEADER.iter().map(|s| s.to_string()).collect(),
        comparison_csv(&c),
    ];
    Ok(Report { json, csv })
}

fn certificate_json(
    system: &ConstraintSystem,
    cert: &Certificate,
    checks: &mut Checks,
) -> Result<Map<String, Value>, String> {
    let replay = hvlogic::replay(system, cert);
    let gray = hvlogic::verdict_gray_code(system).map_err(|e| e.to_string())?;
    checks.holds("replay", replay.is_ok());
    checks.holds("gray_code_agrees", gray == cert.status);
    let mut map = Map::new();
    map.insert("system".into(), to_json(system));
    map.insert("certificate".into(), to_json(cert));
    map.insert(
        "violated_rendered".into(),
        json!(cert.violated.as_deref().and_then(|id| system.describe(id))),
    );
    map.insert(
        "replay".into(),
        json!({
            "accepted": replay.is_ok(),
            "error": replay.err().map(|e| e.to_string()),
        }),
    );
    map.insert(
        "gray_code".into(),
        json!({ "status": to_json(&gray), "agrees": gray == cert.status }),
    );
    Ok(map)
}

fn chain_csv(system: &ConstraintSystem, cert: &Certificate) -> Vec<Vec<String>> {
    let mut rows = vec![vec![
        "step".to_string(),
        "literal".into(),
        "constraint".into(),
        "rendered".into(),
    ]];
    for (k, step) in cert.forced_chain.iter().enumerate() {
        rows.push(vec![
            k.to_string(),
            step.literal.to_string(),
            step.constraint.clone(),
            step.rendered.clone(),
        ]);
    }
    if let Some(id) = &cert.violated {
        rows.push(vec![
            "violated".to_string(),
            String::new(),
            id.clone(),
            system.describe(id).unwrap_or_default(),
        ]);
    }
    rows
}

fn certify_report(args: &CertifyArgs, checks: &mut Checks) -> Result<Report, String> {
    if args.scenario == Scenario::Gedanken && args.alpha.is_some() {
        return Err("--alpha does not apply to the gedanken scenario".into());
    }
    let alpha = args.alpha.unwrap_or(DEFAULT_CERTIFY_ALPHA);
    let (mut map, system, cert) = match args.scenario {
        Scenario::Gedanken => {
            let system = hvlogic::gedanken_system().map_err(|e| e.to_string())?;
            let cert = hvlogic::check(&system).map_err(|e| e.to_string())?;
            (certificate_json(&system, &cert, checks)?, system, cert)
        }
        Scenario::Hardy => {
            let system = hvlogic::hardy_system(alpha).map_err(|e| e.to_string())?;
            let cert = hvlogic::check(&system).map_err(|e| e.to_string())?;
            let mut map = certificate_json(&system, &cert, checks)?;
            map.insert("alpha".into(), json!(alpha));
            (map, system, cert)
        }
        Scenario::TwoStep => {
            let analysis = hvlogic::two_step_analysis(alpha).map_err(|e| e.to_string())?;
            let mut map = certificate_json(&analysis.system, &analysis.certificate, checks)?;
            let c_bar =
                HardyMetrics::closed_form(&HardyParams::new(alpha).map_err(|e| e.to_string())?)
                    .c_bar;
            checks.difference(
                "c_bar_matrix_vs_closed_form",
                (analysis.quantum_value - c_bar).abs(),
            );
            map.insert("alpha".into(), json!(alpha));
            map.insert(
                "two_step".into(),
                json!({
                    "derived": to_json(&analysis.derived),
                    "hv_prediction": analysis.hv_prediction,
                    "quantum_value": analysis.quantum_value,
                    "closed_form": c_bar,
                    "discrepancy": analysis.discrepancy,
                }),
            );
            (map, analysis.system, analysis.certificate)
        }
    };
    let scenario = match args.scenario {
        Scenario::Hardy => "hardy",
        Scenario::Gedanken => "gedanken",
        Scenario::TwoStep => "two-step",
    };
    map.insert("command".into(), json!("certify"));
    map.insert("scenario".into(), json!(scenario));
    map.insert("status".into(), to_json(&cert.status));
    Ok(Report {
        json: Value::Object(map),
        csv: chain_csv(&system, &cert),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(
            round_significant(0.123_456_789_012_345_67),
            0.123_456_789_012_346
        );
        assert_eq!(round_significant(0.5), 0.5);
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333333");
        assert_eq!(format_number(0.0), "0");
    }

    #[test]
    fn failing_checks_are_reported() {
        let mut checks = Checks::new(1e-10);
        checks.difference("ok", 1e-12);
        checks.difference("bad", 1e-6);
        checks.holds("flag", false);
        assert_eq!(checks.failures().len(), 2);
        assert_eq!(checks.to_json()[2]["difference"], Value::Null);
    }

    #[test]
    fn vectors_are_normalized_or_rejected() {
        let v = parse_vector("0,0,2").unwrap();
        assert_eq!(v.components(), [0.0, 0.0, 1.0]);
        assert!(parse_vector("0,0,1e-9").is_err());
        assert!(parse_vector("1,2").is_err());
        assert!(parse_vector("a,b,c").is_err());
    }

    #[test]
    fn tolerance_range() {
        assert!(parse_tol("1e-3").is_ok());
        assert!(parse_tol("0").is_err());
        assert!(parse_tol("0.01").is_err());
    }
}
