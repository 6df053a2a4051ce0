//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use bellbound::bounds::{classical_max, local_max, nonlocal_max, seesaw_from, OptimizerConfig};
use bellbound::linalg::{hermitian_eigen, ComplexMatrix};
use bellbound::random::{
    gaussian_hermitian, random_density_matrix, random_observable_matrix, random_pure_state, seeded,
};
use bellbound::scenario::{bell_operator, classify, correlation_table, evaluate, swap_assumption_delta, Regime};
use bellbound::simulator::{chsh_estimate, enumerate_deterministic_lhv, run_lhv, AngleSettings, LhvModel};
use bellbound::{BellScenario, QuantumState, ValueRange};
use rand::Rng;

const TSIRELSON: f64 = 2.0 * SQRT_2;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn cli(line: &str) -> (i32, String, Duration) {
    let argv = std::iter::once("bellbound").chain(line.split_whitespace());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let t = Instant::now();
    let code = bellbound_cli::run_from_args(argv, &mut out, &mut err);
    let elapsed = t.elapsed();
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text, elapsed)
}

/// Column `name` of the first data row of a CSV block.
fn csv_field(text: &str, name: &str) -> f64 {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    let row: Vec<&str> = lines.next().expect("row").split(',').collect();
    let k = header.iter().position(|h| *h == name).expect("column");
    row[k].parse().expect("number")
}

fn classical_limit() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for (range, flag) in [(ValueRange::symmetric(), "-1,1"), (ValueRange::unit(), "0,1")] {
        let t = Instant::now();
        let r = classical_max(range).expect("classical enumeration");
        let elapsed = t.elapsed();
        let (code, out, _) = cli(&format!("bound --regime classical --value-range {flag} --csv"));
        let achieved = csv_field(&out, "achieved");
        let ok = code == 0
            && r.best_value == 2.0
            && achieved == 2.0
            && r.iterations_total == 16
            && elapsed < Duration::from_millis(1);
        pass &= ok;
        notes.push(format!("[{flag}] value {achieved} in {elapsed:?}"));
    }
    verdict(pass, notes.join(", "))
}

fn tsirelson_limit() -> Verdict {
    let (code, out, elapsed) = cli("bound --regime local --dim 2 --restarts 8 --seed 42 --csv");
    let achieved = csv_field(&out, "achieved");
    let norm = hermitian_eigen(&bell_operator(&BellScenario::optimal_chsh()))
        .expect("eigen")
        .max();
    let pass = code == 0
        && (achieved - TSIRELSON).abs() <= 1e-6
        && elapsed <= Duration::from_secs(5)
        && (norm - TSIRELSON).abs() <= 1e-9;
    verdict(
        pass,
        format!("achieved {achieved:.10} in {elapsed:?}, optimal-scenario norm {norm:.12}"),
    )
}

fn nonlocal_limit() -> Verdict {
    let target = 2.0 * 3f64.sqrt();
    let (code, out, elapsed) = cli("bound --regime nonlocal --dim 2 --restarts 100 --seed 42 --csv");
    let achieved = csv_field(&out, "achieved");
    let reaches = (achieved - target).abs() <= 1e-3;
    let capped = achieved <= target + 1e-3;
    let fast = elapsed <= Duration::from_secs(60);
    verdict(
        code == 0 && reaches && capped && fast,
        format!("achieved {achieved:.10} vs {target:.7} (reaches: {reaches}, never exceeds: {capped}) in {elapsed:?}"),
    )
}

fn random_scenario(rng: &mut impl Rng, shared: bool, range: ValueRange) -> BellScenario {
    if shared {
        let d = rng.gen_range(2..=4);
        let ops = std::array::from_fn(|_| random_observable_matrix(rng, d, range).unwrap());
        BellScenario::shared(ops, range).unwrap()
    } else {
        let (da, db) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
        let a = std::array::from_fn(|_| random_observable_matrix(rng, da, range).unwrap());
        let b = std::array::from_fn(|_| random_observable_matrix(rng, db, range).unwrap());
        BellScenario::tensor(a, b, range).unwrap()
    }
}

fn naive_ceiling() -> Verdict {
    let mut rng = seeded(2718);
    let (mut max_mag, mut worst_slack) = (0.0f64, f64::NEG_INFINITY);
    let mut pass = true;
    for i in 0..10_000 {
        let range = if i % 4 == 3 {
            ValueRange::unit()
        } else {
            ValueRange::symmetric()
        };
        let s = random_scenario(&mut rng, i % 2 == 0, range);
        let state: QuantumState = if i % 3 == 0 {
            random_density_matrix(&mut rng, s.dim()).unwrap()
        } else {
            random_pure_state(&mut rng, s.dim()).unwrap()
        };
        let e = evaluate(&s, &state).unwrap();
        pass &= e.magnitude <= 4.0 + 1e-9 && e.expectation <= e.magnitude + 1e-9;
        max_mag = max_mag.max(e.magnitude);
        worst_slack = worst_slack.max(e.expectation - e.magnitude);
    }
    verdict(
        pass,
        format!("max sqrt<B+B> {max_mag:.6}, max <B> - sqrt<B+B> {worst_slack:.3e} over 10^4 draws"),
    )
}

fn quantum_violation() -> Verdict {
    let (code, out, elapsed) = cli("simulate --model quantum --shots 1000000 --angles 0,45,22.5,-22.5");
    let s = csv_field(&out, "S");
    let sigma = csv_field(&out, "sigma");
    let pass = code == 0
        && (s - TSIRELSON).abs() <= 3.0 * sigma
        && (0.001..=0.003).contains(&sigma)
        && elapsed <= Duration::from_secs(10);
    verdict(
        pass,
        format!(
            "S {s:.6} sigma {sigma:.6} ({:.2} sigma from 2sqrt2) in {elapsed:?}",
            (s - TSIRELSON) / sigma
        ),
    )
}

fn lhv_respects_two() -> Verdict {
    let settings = AngleSettings::from_degrees(0.0, 45.0, 22.5, -22.5).unwrap();
    let mut pass = true;
    let mut notes = Vec::new();
    for model in LhvModel::built_in() {
        let est = chsh_estimate(&run_lhv(&model, &settings, 1_000_000, 42).unwrap()).unwrap();
        pass &= est.s <= 2.0 + 3.0 * est.sigma;
        notes.push(format!("{} S {:.6} sigma {:.6}", model.name, est.s, est.sigma));
    }
    let exact = enumerate_deterministic_lhv(&settings, 1);
    pass &= (exact - 2.0).abs() <= 1e-12;
    notes.push(format!("exact deterministic {exact}"));
    verdict(pass, notes.join(", "))
}

fn regime_classification() -> Verdict {
    let d = |v: &[f64]| ComplexMatrix::from_diagonal(v).unwrap();
    let diagonal = BellScenario::tensor(
        [d(&[1.0, -1.0]), d(&[-1.0, 0.5])],
        [d(&[1.0, 1.0]), d(&[0.3, -1.0])],
        ValueRange::symmetric(),
    )
    .unwrap();
    let per_site = BellScenario::tensor(
        [ComplexMatrix::pauli_z(), ComplexMatrix::pauli_x()],
        [ComplexMatrix::pauli_z(), ComplexMatrix::pauli_x()],
        ValueRange::symmetric(),
    )
    .unwrap();
    let shared = BellScenario::shared(
        [
            ComplexMatrix::pauli_z(),
            ComplexMatrix::pauli_x(),
            ComplexMatrix::pauli_y(),
            ComplexMatrix::bloch(1.0, 0.4),
        ],
        ValueRange::symmetric(),
    )
    .unwrap();
    let expected = [
        (Regime::Classical, 2.0),
        (Regime::LocalHiddenVariable, 2.0 * SQRT_2),
        (Regime::Nonlocal, 2.0 * 3f64.sqrt()),
    ];
    let got: Vec<_> = [&diagonal, &per_site, &shared].iter().map(|s| classify(s)).collect();
    let pass = got
        .iter()
        .zip(expected)
        .all(|(c, (r, b))| c.regime == r && c.expected_bound == b);
    let names: Vec<String> = got
        .iter()
        .map(|c| format!("{} ({})", c.regime, c.expected_bound))
        .collect();
    verdict(pass, names.join(", "))
}

fn swap_falsification() -> Verdict {
    let table = correlation_table(&BellScenario::optimal_chsh(), &QuantumState::phi_plus()).unwrap();
    let delta = table.swap_delta().unwrap();
    let mut rng = seeded(31);
    let constant_zero = (0..1000).all(|_| {
        let c: f64 = rng.gen_range(-1.0..=1.0);
        swap_assumption_delta(c, c, c, c).unwrap() == 0.0
    });
    verdict(
        (delta - TSIRELSON).abs() <= 1e-9 && constant_zero,
        format!("quantum delta {delta:.12}, setting-independent tables give 0: {constant_zero}"),
    )
}

fn property_suites() -> Verdict {
    let mut notes = Vec::new();

    let mut monotone = true;
    let cfg = OptimizerConfig::local();
    for seed in 0..20 {
        let mut rng = seeded(seed);
        let d = 2 + (seed as usize % 2);
        let start = std::array::from_fn(|_| random_observable_matrix(&mut rng, d, cfg.value_range).unwrap());
        let run = seesaw_from(start, &cfg).unwrap();
        monotone &= run.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    }
    notes.push(format!("seesaw monotone {monotone}"));

    let classical = classical_max(ValueRange::symmetric()).unwrap().best_value;
    let local = local_max(&OptimizerConfig::local()).unwrap();
    let nonlocal = nonlocal_max(&OptimizerConfig::nonlocal().with_restarts(20)).unwrap();
    let nested = classical <= local.best_value + 1e-9
        && local.best_value <= nonlocal.best_value + 1e-6
        && nonlocal.best_value <= 4.0 + 1e-9;
    notes.push(format!(
        "nesting {classical} <= {:.7} <= {:.7} <= 4: {nested}",
        local.best_value, nonlocal.best_value
    ));

    let identical = local == local_max(&OptimizerConfig::local()).unwrap()
        && nonlocal == nonlocal_max(&OptimizerConfig::nonlocal().with_restarts(20)).unwrap()
        && cli("simulate --model malus --shots 100000 --seed 9").1
            == cli("simulate --model malus --shots 100000 --seed 9").1;
    notes.push(format!("bit-identical reruns {identical}"));

    let mut rng = seeded(1000);
    let (mut recon, mut unitary) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let dim = rng.gen_range(2..=16);
        let m = gaussian_hermitian(&mut rng, dim).unwrap();
        let s = hermitian_eigen(&m).unwrap();
        recon = recon.max(s.reconstruction_residual(&m));
        unitary = unitary.max(s.unitarity_residual());
    }
    let eigen = recon <= 1e-8;
    notes.push(format!("eigen residual {recon:.2e} (unitarity {unitary:.2e})"));

    verdict(monotone && nested && identical && eigen, notes.join(", "))
}

fn main() {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check); 9] = [
        ("classical limit", classical_limit),
        ("tsirelson limit", tsirelson_limit),
        ("nonlocal limit", nonlocal_limit),
        ("naive ceiling", naive_ceiling),
        ("quantum violation", quantum_violation),
        ("lhv respects 2", lhv_respects_two),
        ("regime classification", regime_classification),
        ("swap assumption", swap_falsification),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {} {}: {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
