//! Full-size acceptance run: one test per criterion.
//!
//! With `--nocapture` each test also prints a PASS/FAIL line with counts
//! and timing.

use std::time::Instant;

use hierarchy_lab::oracle::{run_suite, SuiteConfig, SuiteReport};

struct Criterion {
    id: u8,
    suite: &'static str,
    label: &'static str,
    /// Required minimum for `checked`.
    min_checked: u64,
    max_size: Option<usize>,
    samples: Option<usize>,
    /// Extra condition on the report beyond zero failures.
    extra: fn(&SuiteReport) -> Result<(), String>,
}

fn none(_: &SuiteReport) -> Result<(), String> {
    Ok(())
}

fn all_parts_exercised(r: &SuiteReport) -> Result<(), String> {
    match r.parts.iter().find(|p| p.checked == 0) {
        Some(p) => Err(format!("part {} never exercised", p.name)),
        None => Ok(()),
    }
}

fn witness_counts(r: &SuiteReport) -> Result<(), String> {
    all_parts_exercised(r)?;
    match r.parts.iter().find(|p| p.checked < 1000) {
        Some(p) => Err(format!("{} checked only {} times", p.name, p.checked)),
        None => Ok(()),
    }
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        suite: "class-equalities",
        label: "class equalities R=U+, J=E+, R'=U+, J'=E+, B+=F+ (k=1..3, size<=9)",
        min_checked: 1,
        max_size: Some(9),
        samples: None,
        extra: all_parts_exercised,
    },
    Criterion {
        id: 2,
        suite: "qf-dollar-lemma",
        label: "quantifier-free dollar lemma, exact (size<=8, x in 0..3)",
        min_checked: 1,
        max_size: Some(8),
        samples: None,
        extra: all_parts_exercised,
    },
    Criterion {
        id: 3,
        suite: "translation-agreement",
        label: "dollar/A-translation vs f \\/ $ on 500 closed Pi1/Sigma1/Pi2/Sigma2",
        min_checked: 500,
        max_size: None,
        samples: Some(500),
        extra: all_parts_exercised,
    },
    Criterion {
        id: 4,
        suite: "fv-preservation",
        label: "free variables preserved by translations and witnesses (10000)",
        min_checked: 10_000,
        max_size: None,
        samples: Some(10_000),
        extra: all_parts_exercised,
    },
    Criterion {
        id: 5,
        suite: "a-collapse",
        label: "A-translation collapses at $ := bot (10000)",
        min_checked: 10_000,
        max_size: None,
        samples: Some(10_000),
        extra: none,
    },
    Criterion {
        id: 6,
        suite: "witness-directions",
        label: "witness contracts, 1000 instances per constructor",
        min_checked: 6_000,
        max_size: None,
        samples: Some(1000),
        extra: witness_counts,
    },
    Criterion {
        id: 7,
        suite: "prenex-contracts",
        label: "prenex_in_class strict and equivalent (1000, k<=2)",
        min_checked: 1000,
        max_size: None,
        samples: Some(1000),
        extra: all_parts_exercised,
    },
    Criterion {
        id: 8,
        suite: "dual-involution",
        label: "dual swaps Sigma_k/Pi_k and is an involution (size<=8)",
        min_checked: 1,
        max_size: Some(8),
        samples: None,
        extra: all_parts_exercised,
    },
    Criterion {
        id: 9,
        suite: "round-trip",
        label: "parse(render(f)) = f (size<=8)",
        min_checked: 1,
        max_size: Some(8),
        samples: None,
        extra: none,
    },
];

fn check(id: u8) {
    let c = CRITERIA
        .iter()
        .find(|c| c.id == id)
        .expect("known criterion");
    let cfg = SuiteConfig {
        max_size: c.max_size,
        samples: c.samples,
        ..SuiteConfig::default()
    };
    let start = Instant::now();
    let report = run_suite(c.suite, &cfg).expect("registered suite");
    let secs = start.elapsed().as_secs_f64();
    let mut problems = Vec::new();
    if !report.failures.is_empty() {
        problems.push(format!(
            "{} failures, first: {} ({})",
            report.failures.len(),
            report.failures[0].formula,
            report.failures[0].reason
        ));
    }
    if report.checked < c.min_checked {
        problems.push(format!("only {} checked", report.checked));
    }
    if let Err(e) = (c.extra)(&report) {
        problems.push(e);
    }
    // criterion 1 has a five-minute budget
    if c.id == 1 && secs >= 300.0 {
        problems.push(format!("took {secs:.0}s"));
    }
    let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {} {verdict}: {} [checked {}, inconclusive {}, {secs:.1}s]{}",
        c.id,
        c.label,
        report.checked,
        report.inconclusive,
        if problems.is_empty() {
            String::new()
        } else {
            format!(" {}", problems.join("; "))
        }
    );
    assert!(problems.is_empty(), "criterion {} failed", c.id);
}

#[test]
fn criterion_1_class_equalities() {
    check(1);
}

#[test]
fn criterion_2_qf_dollar_exact() {
    check(2);
}

#[test]
fn criterion_3_translation_agreement() {
    check(3);
}

#[test]
fn criterion_4_free_variables() {
    check(4);
}

#[test]
fn criterion_5_a_collapse() {
    check(5);
}

#[test]
fn criterion_6_witness_contracts() {
    check(6);
}

#[test]
fn criterion_7_prenex_contracts() {
    check(7);
}

#[test]
fn criterion_8_dual_laws() {
    check(8);
}

#[test]
fn criterion_9_round_trip() {
    check(9);
}
