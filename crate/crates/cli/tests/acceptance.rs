//! Runs every acceptance check and prints one PASS/FAIL line per check.
//! Exits nonzero if any check fails or exceeds its time budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use plovkit_core::abelian::PositivityConfig;
use plovkit_core::report::{Record, Report, Status};
use plovkit_core::suite;

const SEED: u64 = 20240607;

struct Check {
    label: &'static str,
    budget: Option<Duration>,
    run: Box<dyn Fn() -> Record>,
}

fn check(label: &'static str, budget: Option<u64>, run: impl Fn() -> Record + 'static) -> Check {
    Check { label, budget: budget.map(Duration::from_secs), run: Box::new(run) }
}

fn plovkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_plovkit")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

/// Identical seeded invocations give identical JSON, and that JSON
/// re-serializes byte for byte.
fn cli_reports_are_reproducible() -> Record {
    let mut ok = true;
    let mut notes = Vec::new();
    for args in [
        &["bounds", "--jordan", "1,3,1", "--seed", "7", "--format", "json"][..],
        &["lefschetz", "verify", "--k", "4", "--d", "3", "--format", "json"][..],
        &["plov", "--jordan", "1,4,1", "--format", "json"][..],
    ] {
        let (c1, a) = plovkit(args);
        let (c2, b) = plovkit(args);
        let round_trip = Report::from_json(&a).map(|r| r.to_json() == a).unwrap_or(false);
        if c1 != 0 || c2 != 0 || a != b || !round_trip {
            ok = false;
            notes.push(args.join(" "));
        }
    }
    Record::check("cli_reproducible", "seeded CLI reports are identical and round-trip", ok).with("failures", notes)
}

fn main() -> ExitCode {
    let positivity = PositivityConfig { samples: 8, seed: SEED };
    let checks = vec![
        check(
            "displayed matrices A_{4,3,6}, A_{4,3,7}: exact, rank 4, invertible product",
            Some(1),
            suite::displayed_matrices,
        ),
        check("rank case split and window invertibility for dk <= 24", Some(180), || suite::full_rank_sweep(24)),
        check("sl2 lowering operator = A^T, weights, bracket relations for dk <= 16", None, || {
            suite::sl2_consistency(16)
        }),
        check("symmetric-function Lefschetz matrix = A^T for dk <= 12", None, || suite::symfun_consistency(12)),
        check("unimodality with turn at dk/2 for dk <= 24", None, || suite::unimodality(24)),
        check("midpoint equality on the listed couples, failure for (2, even d)", None, suite::midpoint_equality),
        check("plov(J_{1,r0} + J_{1,d0}^m0) = m0 d0^2 + r0^2 for d <= 5", Some(60), || suite::plov_values(5)),
        check("k = 2 d0 - 2, and k <= 2d - 2 on 100 conjugates per d <= 4", None, move || {
            suite::jordan_exponent(4, 100, SEED)
        }),
        check("v_lambda = 0 above dk/2 for Jordan models with d <= 4", None, || suite::monomial_vanishing(4)),
        check("positivity sequence for Jordan models with d <= 4", None, move || {
            suite::positivity_sequences(4, positivity)
        }),
        check("degree growth: deg_1 ~ n^k, exponent caps for all i", None, move || suite::degree_growth(4, 10, SEED)),
        check("property suites and seeded determinism", None, move || {
            let lib = suite::property_suites(60, SEED);
            let cli = cli_reports_are_reproducible();
            let ok = lib.status == Status::Pass && cli.status == Status::Pass;
            Record::check("properties", "library and CLI properties", ok)
                .with("library", serde_json::to_value(&lib.values).unwrap())
                .with("cli", serde_json::to_value(&cli.values).unwrap())
        }),
    ];

    let mut failed = 0;
    for (i, c) in checks.iter().enumerate() {
        let start = Instant::now();
        let record = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = c.budget.is_none_or(|b| elapsed <= b);
        let pass = record.status == Status::Pass && in_budget;
        if !pass {
            failed += 1;
        }
        let budget = c.budget.map(|b| format!(" (budget {} s)", b.as_secs())).unwrap_or_default();
        println!(
            "{:>2}. {} {} [{:.3} s{}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            c.label,
            elapsed.as_secs_f64(),
            budget
        );
        if !pass {
            println!("    {}", serde_json::to_string(&record.values).unwrap());
        }
    }
    println!("acceptance: {} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
