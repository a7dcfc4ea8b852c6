//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use hardy_core::bellhv::{self, trial_rng, BlochVector};
use hardy_core::gedanken::{self, ids};
use hardy_core::hardy4;
use hardy_core::hvlogic::{self, Certificate, ConstraintSystem, Status};
use hardy_core::qcore::commutator_norm;
use rand::Rng;
use serde_json::Value;

const EXACT: f64 = 1e-12;
const SEED: u64 = 42;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy-verify"))
        .args(args)
        .output()
        .expect("hardy-verify runs")
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = cli(args);
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

/// Hand-rolled complex arithmetic on the particle sector of the
/// interferometer. `PSI[p][e]` is the amplitude of positron path `p` and
/// electron path `e` (0 = u, 1 = v).
mod interferometer {
    pub type C = (f64, f64);

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;
    pub const PSI: [[C; 2]; 2] = [[(0.0, 0.0), (0.0, 0.5)], [(0.0, 0.5), (0.5, 0.0)]];
    pub const C_INF: [C; 2] = [(1.0, 0.0), (0.0, 0.0)];
    pub const D_INF: [C; 2] = [(0.0, 0.0), (1.0, 0.0)];
    pub const D_0: [C; 2] = [(0.0, -H), (H, 0.0)];

    fn mul(a: C, b: C) -> C {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn conj(a: C) -> C {
        (a.0, -a.1)
    }

    fn norm_sqr(a: C) -> f64 {
        a.0 * a.0 + a.1 * a.1
    }

    /// `|⟨pos ⊗ el|ψ⟩|²`.
    pub fn joint(pos: [C; 2], el: [C; 2]) -> f64 {
        let mut amp = (0.0, 0.0);
        for (p, row) in PSI.iter().enumerate() {
            for (e, &z) in row.iter().enumerate() {
                let t = mul(mul(conj(pos[p]), conj(el[e])), z);
                amp = (amp.0 + t.0, amp.1 + t.1);
            }
        }
        norm_sqr(amp)
    }

    /// Marginal of a positron detector: sum over an electron basis.
    pub fn positron(pos: [C; 2]) -> f64 {
        joint(pos, C_INF) + joint(pos, D_INF)
    }

    pub fn electron(el: [C; 2]) -> f64 {
        joint(C_INF, el) + joint(D_INF, el)
    }
}

fn criterion_1() -> Verdict {
    let (entry, elapsed) = timed(gedanken::disturbance_test_direct);
    let Ok(entry) = entry else {
        return verdict(false, "disturbance test errored");
    };
    let ok = close(entry.quantum_value, 0.5, EXACT)
        && entry.hv_prediction == Some(1.0)
        && entry.discrepancy.is_some_and(|d| close(d, 0.5, EXACT))
        && elapsed < Duration::from_millis(1);
    verdict(
        ok,
        format!(
            "P(D-inf|D-0) = {:.15}, hv {:?}, discrepancy {:?}, {:?}",
            entry.quantum_value, entry.hv_prediction, entry.discrepancy, elapsed
        ),
    )
}

fn criterion_2() -> Verdict {
    use interferometer::*;
    let Ok(report) = gedanken::full_report() else {
        return verdict(false, "report errored");
    };
    let value = |id: &str| report.get(id).map_or(f64::NAN, |e| e.quantum_value);
    let d0 = D_0;
    let oracle = [
        (
            ids::COND_DM_INF_GIVEN_CP_INF,
            joint(C_INF, D_INF) / positron(C_INF),
        ),
        (
            ids::COND_DP_INF_GIVEN_CM_INF,
            joint(D_INF, C_INF) / electron(C_INF),
        ),
        (ids::COND_CP_INF_GIVEN_DM_0, joint(C_INF, d0) / electron(d0)),
        (ids::COND_CM_INF_GIVEN_DP_0, joint(d0, C_INF) / positron(d0)),
        (ids::JOINT_CP_INF_CM_INF, joint(C_INF, C_INF)),
        (ids::JOINT_DP_INF_DM_INF, joint(D_INF, D_INF)),
    ];
    let expected = [1.0, 1.0, 1.0, 1.0, 0.0, 0.25];
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for ((id, o), e) in oracle.iter().zip(expected) {
        let v = value(id);
        ok &= close(v, e, EXACT) && close(*o, e, EXACT);
        worst = worst.max((v - e).abs()).max((o - e).abs());
    }
    verdict(
        ok,
        format!(
            "four conditionals = 1, <C+C-> = {:.15}, <D+D-> = {:.15}, worst deviation {worst:e}",
            value(ids::JOINT_CP_INF_CM_INF),
            value(ids::JOINT_DP_INF_DM_INF)
        ),
    )
}

fn criterion_3() -> Verdict {
    let Ok(test) = gedanken::disturbance_test_complement() else {
        return verdict(false, "complement test errored");
    };
    let e = test.electron_sector.quantum_value;
    let f = test.full_space.quantum_value;
    let ok = close(e, 0.5, EXACT)
        && close(f, 0.75, EXACT)
        && !close(e, 1.0, EXACT)
        && !close(f, 1.0, EXACT)
        && test.full_space.hv_prediction == Some(1.0);
    verdict(
        ok,
        format!("electron trace {e:.15}, full-space conditional {f:.15}, hv 1"),
    )
}

fn criterion_4() -> Verdict {
    let mut rng = trial_rng(SEED, 4);
    let alphas: Vec<f64> = (0..100).map(|_| rng.gen_range(0.05..0.95)).collect();
    let (worst, elapsed) = timed(|| {
        let mut worst: f64 = 0.0;
        for &a in &alphas {
            let b = (1.0 - a * a).sqrt();
            let Ok(model) = hardy4::build_model(a) else {
                return f64::INFINITY;
            };
            let Ok(m) = hardy4::compute_metrics(&model) else {
                return f64::INFINITY;
            };
            let t = a * b;
            let gap = (b - a) * (b - a);
            let q = gap / (gap + b * a);
            let pairs = [
                (m.p_d1, t * t / (1.0 - t)),
                (m.p_cond_d2_given_d1, q),
                (m.p_cond_u2_given_d1, 1.0),
                (m.p_cond_u1_given_d2, 1.0),
                (m.p_joint_u1u2, 0.0),
                (m.c_bar, 1.0 - q),
            ];
            for (x, y) in pairs {
                worst = worst.max((x - y).abs());
            }
        }
        worst
    });
    let ok = worst <= 1e-10 && elapsed < Duration::from_millis(100);
    verdict(
        ok,
        format!("100 alphas, worst deviation {worst:e}, {elapsed:?}"),
    )
}

fn criterion_5() -> Verdict {
    let Ok(opt) = hardy4::optimize_paradox() else {
        return verdict(false, "optimizer errored");
    };
    let n = 1_000_000;
    let grid = (1..=n)
        .map(|k| {
            let t = 0.5 * k as f64 / n as f64;
            t * t * (1.0 - 2.0 * t) / ((1.0 - t) * (1.0 - t))
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let ok = close(opt.p_max, grid, 1e-7);
    verdict(
        ok,
        format!(
            "p_max {:.12} at alpha {:.10}, grid oracle {grid:.12}",
            opt.p_max, opt.alpha_star
        ),
    )
}

fn criterion_6() -> Verdict {
    let Ok(model) = hardy4::build_model(FRAC_1_SQRT_2) else {
        return verdict(false, "model errored");
    };
    let comm = commutator_norm(&model.d1, &model.u1).unwrap_or(f64::INFINITY);
    let joint = hardy4::paradox_probability(FRAC_1_SQRT_2).unwrap_or(f64::INFINITY);
    let status = cli_json(&[
        "certify",
        "--scenario",
        "hardy",
        "--alpha",
        "0.7071067811865476",
    ])
    .map(|j| j["status"].clone());
    let satisfiable = matches!(&status, Ok(Value::String(s)) if s == "satisfiable");
    let ok = comm <= EXACT && joint <= EXACT && satisfiable;
    verdict(
        ok,
        format!("||[D1,U1]|| = {comm:e}, <D1D2> = {joint:e}, certify status {status:?}"),
    )
}

fn criterion_7() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let mut rng = trial_rng(SEED, 7_000 + i);
        let s = BlochVector::random(&mut rng);
        let m = BlochVector::random(&mut rng);
        let born = bellhv::born_qubit(&s, &m).unwrap_or(f64::NAN);
        let d = (bellhv::hv_expectation(&s, &m) - born).abs();
        worst = if d.is_nan() {
            f64::INFINITY
        } else {
            worst.max(d)
        };
    }
    verdict(
        worst <= EXACT,
        format!("1000 pairs, worst |hv - Born| {worst:e}"),
    )
}

fn criterion_8() -> Verdict {
    let Ok(c) = bellhv::compare(&BlochVector::Z, &BlochVector::X, &BlochVector::Z) else {
        return verdict(false, "compare errored");
    };
    let Ok(scan) = bellhv::scan_discrepancy(10_000, SEED) else {
        return verdict(false, "scan errored");
    };
    let ok = close(c.quantum, 0.5, EXACT)
        && close(c.classical, 1.0, EXACT)
        && close(c.discrepancy, 0.5, EXACT)
        && scan.max.discrepancy >= 0.49;
    verdict(
        ok,
        format!(
            "quantum {:.15}, classical {:.15}, discrepancy {:.15}; scan max {:.6}",
            c.quantum, c.classical, c.discrepancy, scan.max.discrepancy
        ),
    )
}

fn criterion_9() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for i in 0..100 {
        let mut rng = trial_rng(SEED, 9_000 + i);
        let s = BlochVector::random(&mut rng);
        let m = BlochVector::random(&mut rng);
        for n in [m, m.neg()] {
            if let Ok(c) = bellhv::compare(&s, &m, &n) {
                worst = worst.max(c.discrepancy);
                compared += 1;
            }
        }
    }
    verdict(
        worst <= EXACT && compared > 0,
        format!("{compared} nondegenerate comparisons, worst discrepancy {worst:e}"),
    )
}

fn criterion_10() -> Verdict {
    let mut triples = Vec::new();
    let mut i = 0;
    while triples.len() < 10 {
        let mut rng = trial_rng(SEED, 10_000 + i);
        i += 1;
        let t = (
            BlochVector::random(&mut rng),
            BlochVector::random(&mut rng),
            BlochVector::random(&mut rng),
        );
        if bellhv::classical_conditional(&t.0, &t.1, &t.2).is_ok() {
            triples.push(t);
        }
    }
    let (results, elapsed) = timed(|| {
        triples
            .iter()
            .enumerate()
            .map(|(k, (s, m, n))| bellhv::monte_carlo_check(s, m, n, 100_000, SEED + k as u64))
            .collect::<Vec<_>>()
    });
    let mut worst_z: f64 = 0.0;
    let mut ok = elapsed < Duration::from_secs(1);
    for r in &results {
        match r {
            Ok(mc) => {
                ok &= mc.pass;
                worst_z = worst_z.max(mc.z_score.abs());
            }
            Err(_) => ok = false,
        }
    }
    verdict(
        ok,
        format!("10 triples, worst |z| {worst_z:.3}, {elapsed:?}"),
    )
}

fn replayable(args: &[&str]) -> Result<String, String> {
    let json = cli_json(args)?;
    let system: ConstraintSystem =
        serde_json::from_value(json["system"].clone()).map_err(|e| e.to_string())?;
    let cert: Certificate =
        serde_json::from_value(json["certificate"].clone()).map_err(|e| e.to_string())?;
    if cert.status != Status::Paradox || cert.forced_chain.is_empty() {
        return Err(format!("{args:?}: expected a paradox with a forced chain"));
    }
    hvlogic::replay(&system, &cert).map_err(|e| e.to_string())?;
    let gray = hvlogic::verdict_gray_code(&system).map_err(|e| e.to_string())?;
    if gray != cert.status || json["gray_code"]["agrees"] != Value::Bool(true) {
        return Err("Gray-code enumeration disagrees".into());
    }
    if json["replay"]["accepted"] != Value::Bool(true) {
        return Err("tool-side replay rejected".into());
    }
    Ok(format!(
        "{} steps, violates {}",
        cert.forced_chain.len(),
        cert.violated.unwrap_or_default()
    ))
}

fn criterion_11() -> Verdict {
    let hardy = replayable(&["certify", "--scenario", "hardy", "--alpha", "0.6"]);
    let gedanken = replayable(&["certify", "--scenario", "gedanken"]);
    let ok = hardy.is_ok() && gedanken.is_ok();
    verdict(ok, format!("hardy: {hardy:?}; gedanken: {gedanken:?}"))
}

const COMMANDS: &[&[&str]] = &[
    &["gedanken"],
    &["gedanken", "--format", "csv"],
    &["hardy", "--alpha", "0.6"],
    &["hardy", "--alpha", "0.7071067811865476"],
    &[
        "hardy",
        "--sweep",
        "--alpha-min",
        "0.05",
        "--alpha-max",
        "0.95",
        "--steps",
        "50",
    ],
    &[
        "hardy",
        "--sweep",
        "--alpha-min",
        "0.05",
        "--alpha-max",
        "0.95",
        "--steps",
        "50",
        "--format",
        "csv",
    ],
    &["hardy", "--optimize"],
    &[
        "bell",
        "--s",
        "0,0,1",
        "--m",
        "1,0,0",
        "--n",
        "0,0,1",
        "--mc-samples",
        "10000",
    ],
    &[
        "bell",
        "--scan",
        "2000",
        "--seed",
        "7",
        "--mc-samples",
        "1000",
    ],
    &["bell", "--scan", "2000", "--format", "csv"],
    &["certify", "--scenario", "hardy"],
    &["certify", "--scenario", "gedanken"],
    &["certify", "--scenario", "two-step", "--alpha", "0.3"],
];

fn criterion_12() -> Verdict {
    let mut differing = Vec::new();
    for args in COMMANDS {
        let first = cli(args);
        let second = cli(args);
        let same = first.status.success()
            && first.status == second.status
            && first.stdout == second.stdout
            && first.stderr == second.stderr;
        if !same {
            differing.push(args.join(" "));
        }
    }
    let ok = differing.is_empty();
    verdict(
        ok,
        if ok {
            format!("{} commands byte-identical across two runs", COMMANDS.len())
        } else {
            format!("differing or failing: {differing:?}")
        },
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("gedanken disturbance", criterion_1),
        ("gedanken chain", criterion_2),
        ("complement test", criterion_3),
        ("Hardy closed forms", criterion_4),
        ("paradox optimum", criterion_5),
        ("maximal-entanglement resolution", criterion_6),
        ("Bell model reproduction", criterion_7),
        ("Bayes-rule failure", criterion_8),
        ("commuting agreement", criterion_9),
        ("Monte Carlo cross-check", criterion_10),
        ("certificates", criterion_11),
        ("determinism", criterion_12),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        let mark = if v.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark} {name}: {}", k + 1, v.detail);
        failed += usize::from(!v.ok);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
