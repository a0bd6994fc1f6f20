//! One PASS/FAIL line per acceptance criterion, with its runtime limit.
//!
//! A criterion listed in `KNOWN_FAILURES` is printed as FAIL and does not
//! fail the target; if it starts passing the target fails so the list is
//! revisited.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use valext::implicit::compute_h;
use valext::jets::Jet;
use valext::properties::{run_properties, Suite};
use valext::report::{Report, Status};
use valext::runner::{run_scenario, RunOptions};
use valext::scenario::{Scenario, ScenarioConfig, ScenarioName};
use valext::valgroup::{GroupElement, IsolatedLevel};
use valext::valuation::ValueResult;

/// The worked blowup claims `H = (0)` for the source ring, but
/// `y - x·σ(z)` (σ the inverse series of `Σ c_i t^i`) lies in `H' ∩ R̂`.
const KNOWN_FAILURES: &[usize] = &[2];

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    fn checks(&mut self, report: &Report, names: &[&str]) {
        for n in names {
            match report.checks.iter().find(|c| c.name == *n) {
                Some(c) => self.require(c.status == Status::Pass, format!("{n}: {}", c.summary)),
                None => self.require(false, format!("{n}: missing")),
            }
        }
    }
}

fn scenario_report(name: ScenarioName, truncation: u32, bound: &str, samples: usize) -> Report {
    let opts = RunOptions {
        config: ScenarioConfig {
            truncation: Some(truncation),
            value_bound: Some(GroupElement::parse(bound).unwrap()),
            ..ScenarioConfig::default()
        },
        samples,
        timings: false,
    };
    run_scenario(name, &opts).unwrap()
}

fn criterion1() -> Outcome {
    let mut o = Outcome::new();
    let r = scenario_report(ScenarioName::Example22, 12, "lex:10", 100);
    o.checks(&r, &["values", "p_beta R", "implicit H", "graded iso"]);
    let s = Scenario::new(ScenarioName::Example22, &ScenarioConfig::default()).unwrap();
    let ring = s.primary();
    let h = compute_h(ring, IsolatedLevel(0), 12, Some(&GroupElement::lex(&[10]))).unwrap();
    o.require(
        h.generators.generators == vec![ring.w(12).unwrap()],
        "H is not (u - Σ_{i<12} c_i v^i)",
    );
    o
}

fn criterion2() -> Outcome {
    let mut o = Outcome::new();
    let s = Scenario::new(ScenarioName::Example29, &ScenarioConfig::default()).unwrap();
    let rp = s.ring("R'").unwrap();
    let val = |t: &str| rp.value(&rp.element(t, 4).unwrap()).unwrap();
    o.require(
        val("x'") == ValueResult::Finite(GroupElement::quad_int(0, 1)),
        "ν'(x') != √2",
    );
    o.require(
        val("y'") == ValueResult::Finite(GroupElement::quad_int(1, 0)),
        "ν'(y') != 1",
    );
    let r = scenario_report(ScenarioName::Example29, 4, "quad:3,0", 100);
    o.checks(
        &r,
        &[
            "values",
            "implicit H'",
            "kernel is zero",
            "heights",
            "contraction p_beta",
        ],
    );
    o
}

fn criterion3() -> Outcome {
    let mut o = Outcome::new();
    let r = scenario_report(ScenarioName::Example41, 10, "lex:10,10", 100);
    o.checks(
        &r,
        &[
            "values",
            "nu_hat",
            "implicit H_1",
            "implicit H_3",
            "even H_2",
            "chain",
        ],
    );
    o
}

fn criterion4() -> Outcome {
    let mut o = Outcome::new();
    let r = scenario_report(ScenarioName::Example42, 12, "lex:12,12", 100);
    o.checks(
        &r,
        &[
            "branch coefficients",
            "f*g vanishes",
            "implicit H*",
            "primality H*",
            "consistency H_1",
            "values",
        ],
    );
    let s = Scenario::new(ScenarioName::Example42, &ScenarioConfig::default()).unwrap();
    let ring = s.primary();
    for b in 3..=5 {
        let v = ring.value(&ring.branch_factor(b, true)).unwrap();
        o.require(
            v == ValueResult::Finite(GroupElement::lex(&[0, b as i64])),
            format!("ν(f_{b}) = {v}"),
        );
    }
    let sp = ring.jet_space(12);
    let fg = Jet::from_poly(&sp, &ring.branch_factor(12, true))
        .unwrap()
        .mul(&Jet::from_poly(&sp, &ring.branch_factor(12, false)).unwrap())
        .unwrap();
    o.require(fg.is_zero(), "f·g is not zero mod m^12");
    o
}

fn criterion5() -> Outcome {
    let mut o = Outcome::new();
    let opts = RunOptions {
        samples: 200,
        ..RunOptions::default()
    };
    for suite in Suite::ALL {
        let r = run_properties(suite, &opts).unwrap();
        for c in &r.checks {
            o.require(
                c.status == Status::Pass,
                format!("{suite}/{}: {}", c.name, c.summary),
            );
        }
    }
    o
}

type Criterion = (usize, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 5] = [
        (
            1,
            "Example 2.2 reproduction",
            Duration::from_secs(10),
            criterion1,
        ),
        (
            2,
            "Example 2.9 reproduction",
            Duration::from_secs(30),
            criterion2,
        ),
        (
            3,
            "Example 4.1 reproduction",
            Duration::from_secs(20),
            criterion3,
        ),
        (
            4,
            "Example 4.2 reproduction",
            Duration::from_secs(30),
            criterion4,
        ),
        (5, "property suites", Duration::from_secs(120), criterion5),
    ];
    let mut unexpected = false;
    for (k, title, limit, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        out.require(
            elapsed < limit,
            format!(
                "took {:.1}s, limit {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
        );
        let status = if out.ok { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {k}: {title} ({:.2}s, limit {}s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        for n in &out.notes {
            println!("    {n}");
        }
        let known = KNOWN_FAILURES.contains(&k);
        if out.ok == known {
            unexpected = true;
            if known {
                println!("    criterion {k} was expected to fail; update KNOWN_FAILURES");
            }
        }
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
