//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use casimir_core::balance::solve_tau;
use casimir_core::hole::{HoleSampling, HoleScenario};
use casimir_core::pressures::{hole_pressure_constant, isorefractive_surface_pressure, MaterialFactor};
use casimir_core::shell::{BounceKind, ShellScenario};
use casimir_core::units::{casimir_constant_geometric, mass_to_geometric, CASIMIR_SHELL_COEFFICIENT, HBAR_C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 0x0C45_1A1F;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn casimir(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_summary(file: &str) -> Value {
    let path = scenarios_dir().join(file);
    let out = casimir(&["run", "--scenario", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("summary is JSON")
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| hi * (lo / hi).powf(k as f64 / (n - 1) as f64)).collect()
}

fn random_hole(rng: &mut ChaCha8Rng) -> HoleScenario {
    let a = 10f64.powf(rng.gen_range(-5.0..-2.0));
    let p = 10f64.powf(rng.gen_range(-3.0..5.0));
    let rho = 10f64.powf(rng.gen_range(2.0..4.3));
    let c = CASIMIR_SHELL_COEFFICIENT * HBAR_C * rng.gen_range(0.01..1.0);
    HoleScenario::new(a, p, rho, c).unwrap()
}

fn tau_sigma_balance() -> Outcome {
    let start = Instant::now();
    let s = solve_tau(0.073, 0.01).unwrap();
    let first = start.elapsed();
    let reps = 1000;
    let start = Instant::now();
    for _ in 0..reps {
        std::hint::black_box(solve_tau(std::hint::black_box(0.073), 0.01).unwrap());
    }
    let mean = start.elapsed() / reps;
    let pass = (2.0e-19..=3.0e-19).contains(&s.tau)
        && (0.5e-10..=1.0e-10).contains(&s.tau_c)
        && s.route_disagreement() < 1e-10
        && first < Duration::from_millis(1)
        && mean < Duration::from_millis(1);
    outcome(
        pass,
        format!(
            "tau = {:.4e} s, tau*c = {:.4} A, route disagreement {:.1e}, first call {first:?}, mean {mean:?}",
            s.tau,
            s.tau_c * 1e10,
            s.route_disagreement()
        ),
    )
}

fn sigma_scaling() -> Outcome {
    let lib_slope = {
        let (lo, hi) = (solve_tau(1e-3, 0.01).unwrap().tau, solve_tau(1.0, 0.01).unwrap().tau);
        (hi.ln() - lo.ln()) / (1.0f64.ln() - 1e-3f64.ln())
    };
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("tau.csv");
    let scen = scenarios_dir().join("tau_sigma_sweep.json");
    let out = casimir(&[
        "sweep",
        "--scenario",
        scen.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    let csv = std::fs::read_to_string(&csv_path).unwrap_or_default();
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().parse().unwrap())
        })
        .collect();
    let (s0, t0) = rows[0];
    let (s1, t1) = rows[rows.len() - 1];
    let cli_slope = (t1.ln() - t0.ln()) / (s1.ln() - s0.ln());
    let pass = out.status.success()
        && (lib_slope + 1.0 / 3.0).abs() < 1e-6
        && (cli_slope + 1.0 / 3.0).abs() < 1e-6
        && s0 == 1e-3
        && s1 == 1.0;
    outcome(
        pass,
        format!(
            "slope {lib_slope:.12} (library), {cli_slope:.12} (sweep CSV, {} rows)",
            rows.len()
        ),
    )
}

fn reciprocal_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let mu: f64 = rng.gen_range(0.1..10.0);
        let r = 10f64.powf(rng.gen_range(-12.0..0.0));
        let p = isorefractive_surface_pressure(mu, r).unwrap();
        let q = isorefractive_surface_pressure(1.0 / mu, r).unwrap();
        if p.to_bits() != q.to_bits() {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{mismatches} of 1000 random mu differ from 1/mu"),
    )
}

fn casimir_constant() -> Outcome {
    let c = hole_pressure_constant(MaterialFactor::Unity).unwrap();
    outcome(
        rel(c, 2.9e-27) < 0.01 && rel(c, 2.92e-27) < 0.01,
        format!("C = {c:.6e} J m, {:.3}% from 2.9e-27", 100.0 * rel(c, 2.9e-27)),
    )
}

fn analytic_numeric_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = random_hole(&mut rng);
        let rb = s.bounce_radius_exact().unwrap();
        let radii = log_grid(1.001 * rb, 0.999 * s.a(), 100);
        let num = s.vsq_numeric(&radii, 1e-13).unwrap();
        for (r, v) in radii.iter().zip(&num) {
            worst = worst.max(rel(*v, s.vsq(*r).unwrap()));
        }
    }
    let el = start.elapsed();
    outcome(
        worst < 1e-8 && el < Duration::from_secs(5),
        format!("worst relative error {worst:.2e} over 20 x 100 radii in {el:?}"),
    )
}

fn energy_invariant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut scenarios: Vec<HoleScenario> = (0..20).map(|_| random_hole(&mut rng)).collect();
    scenarios.push(HoleScenario::new(1e-3, 1e-3, 1000.0, 2.92e-27).unwrap());
    scenarios.push(HoleScenario::new(1e-2, 1e5, 998.0, 0.0).unwrap());
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for s in &scenarios {
        let traj = s.simulate(&HoleSampling::default()).unwrap();
        let e0 = s.initial_energy();
        for x in &traj.samples {
            worst = worst.max(rel(s.energy(x.r, x.v * x.v), e0));
            samples += 1;
        }
    }
    outcome(
        worst < 1e-8,
        format!(
            "worst drift {worst:.2e} over {samples} samples, {} trajectories",
            scenarios.len()
        ),
    )
}

fn bounce_radius() -> Outcome {
    let s = HoleScenario::new(1e-3, 1e-3, 1000.0, 2.92e-27).unwrap();
    let exact = s.bounce_radius_exact().unwrap();
    let asym = s.bounce_radius_asymptotic().unwrap();
    let summary = run_summary("hole_reference.json");
    let notes = summary["notes"].as_array().cloned().unwrap_or_default();
    let note = notes.iter().filter_map(Value::as_str).any(|n| n.contains("3 Angstrom"));
    let cli_asym = summary["results"]["R_min_asymptotic"].as_f64().unwrap_or(f64::NAN);
    let pass = rel(exact, asym) < 0.01
        && rel(exact, 3.49e-16) < 0.005
        && rel(asym, 3.49e-16) < 0.005
        && cli_asym == asym
        && note;
    outcome(
        pass,
        format!("exact {exact:.6e} m, asymptotic {asym:.6e} m, discrepancy note present: {note}"),
    )
}

fn rayleigh_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (a, p, rho) in [(1.0, 1.0, 1.0), (1e-3, 1e-3, 1000.0), (0.05, 1e5, 998.0)] {
        let s = HoleScenario::new(a, p, rho, 0.0).unwrap();
        let t = s.fill_time(0.0).unwrap() * (p / rho).sqrt() / a;
        worst = worst.max((t - 0.914681).abs());
    }
    let el = start.elapsed();
    outcome(
        worst < 1e-4 && el < Duration::from_secs(1),
        format!("|t* - 0.914681| <= {worst:.2e}, {el:?}"),
    )
}

fn shell_collapse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut worst_i: f64 = 0.0;
    for _ in 0..1000 {
        let m = 10f64.powf(rng.gen_range(-3.0..3.0));
        let r = m * 10f64.powf(rng.gen_range(-3.0..3.0));
        let s = ShellScenario::new(m, 0.0, 2.0 * r).unwrap();
        worst_i = worst_i.max(rel(s.rdot_sq(r).unwrap(), m / r + m * m / (4.0 * r * r)));
    }
    let pass_i = worst_i <= 4.0 * f64::EPSILON;

    let mut worst_ii: f64 = 0.0;
    for k in 0..200 {
        let ratio = 1.01 * (1e3f64 / 1.01).powf(k as f64 / 199.0);
        let m = 10f64.powf(rng.gen_range(-2.0..2.0));
        let c = ratio * m * m;
        let s = ShellScenario::new(m, c, 1.0 + 10.0 * c / m).unwrap();
        let class = s.classify_bounce().unwrap();
        let closed = c * c / (2.0 * m * (c - m * m));
        let found = class.r_critical_root_found.unwrap_or(f64::NAN);
        worst_ii = worst_ii.max(rel(found, closed));
        if class.kind != BounceKind::TurningPoint {
            worst_ii = f64::INFINITY;
        }
    }
    let pass_ii = worst_ii < 1e-12;

    let m = mass_to_geometric(1.98892e30).unwrap();
    let c = casimir_constant_geometric();
    let class = ShellScenario::new(m, c, 1e4).unwrap().classify_bounce().unwrap();
    let summary = run_summary("shell_solar.json");
    let cli_kind = summary["results"]["classification"].as_str().unwrap_or("");
    let cli_rc = summary["results"]["R_critical"].as_f64().unwrap_or(f64::NAN);
    let cli_approx = summary["results"]["R_min_C_over_2M"].as_f64().unwrap_or(f64::NAN);
    let pass_iii = class.kind == BounceKind::SingularApproach
        && rel(class.r_critical, c / (2.0 * m)) < 1e-10
        && rel(class.r_critical, 8.2e-75) < 0.01
        && cli_kind == "singular_approach"
        && rel(cli_rc, c / (2.0 * m)) < 1e-10
        && cli_approx == cli_rc;
    outcome(
        pass_i && pass_ii && pass_iii,
        format!(
            "(i) C = 0 worst {worst_i:.1e} [{}]; (ii) turning radius worst {worst_ii:.1e} [{}]; \
             (iii) solar {} at {:.4e} m [{}]",
            verdict(pass_i),
            verdict(pass_ii),
            class.kind.as_str(),
            class.r_critical,
            verdict(pass_iii)
        ),
    )
}

fn full_suite_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(scenarios_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut outputs = Vec::new();
    for f in &files {
        let stem = f.file_stem().unwrap().to_str().unwrap().to_string();
        let text = std::fs::read_to_string(f).unwrap();
        let run_dir = dir.join(&stem);
        let out = casimir(&[
            "run",
            "--scenario",
            f.to_str().unwrap(),
            "--out",
            run_dir.to_str().unwrap(),
        ]);
        outputs.push((format!("{stem}/stdout"), out.stdout));
        for name in ["summary.json", "trajectory.csv"] {
            if let Ok(bytes) = std::fs::read(run_dir.join(name)) {
                outputs.push((format!("{stem}/{name}"), bytes));
            }
        }
        if text.contains("\"sweep\"") {
            let csv = dir.join(format!("{stem}.csv"));
            casimir(&[
                "sweep",
                "--scenario",
                f.to_str().unwrap(),
                "--out",
                csv.to_str().unwrap(),
            ]);
            outputs.push((format!("{stem}.csv"), std::fs::read(&csv).unwrap_or_default()));
        }
    }
    outputs
}

fn determinism() -> Outcome {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = full_suite_outputs(d1.path());
    let second = full_suite_outputs(d2.path());
    let differing: Vec<&str> = first
        .iter()
        .zip(&second)
        .filter(|(a, b)| a != b)
        .map(|(a, _)| a.0.as_str())
        .collect();
    let bytes: usize = first.iter().map(|(_, b)| b.len()).sum();
    outcome(
        first.len() == second.len() && differing.is_empty() && bytes > 0,
        format!("{} output files, {bytes} bytes, differing: {differing:?}", first.len()),
    )
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("tau-sigma balance", tau_sigma_balance),
        ("sigma scaling", sigma_scaling),
        ("reciprocal symmetry", reciprocal_symmetry),
        ("Casimir constant", casimir_constant),
        ("analytic/numeric equivalence", analytic_numeric_equivalence),
        ("energy invariant", energy_invariant),
        ("bounce radius", bounce_radius),
        ("Rayleigh oracle", rayleigh_oracle),
        ("shell collapse", shell_collapse),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<30} {}  {}",
            i + 1,
            name,
            verdict(result.pass),
            result.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
