//! Named check suites with JSON-serializable reports.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::check::{check_equiv, check_valid, Counterexample, OracleConfig, Status, DEFAULT_SEED};
use super::enumerate::{EnumConfig, Enumerator};
use super::eval::{eval_under, Assignment, Interpretation, Table};
use super::exec::{filter_map_range, map_slice, ExecMode};
use super::generate::{random_formula, random_prenex, GenConfig};
use crate::ast::{parse, Formula, Quantifier};
use crate::error::{Error, Result};
use crate::hierarchy::{in_class, is_pi, is_sigma, ClassId, Family};
use crate::normalize::{
    b_decompose, e_neg_witness_epi, e_witness_esigma, prenex_classical, prenex_in_class,
    u_neg_witness_esigma, u_witness_epi, witness_sigma, Polarity, WitnessResult,
};
use crate::translate::{a_translate, dollar_translate, dual, kuroda_translate, simplify_or_bot};

pub const SUITES: [&str; 9] = [
    "fv-preservation",
    "qf-dollar-lemma",
    "translation-agreement",
    "a-collapse",
    "class-equalities",
    "witness-directions",
    "dual-involution",
    "prenex-contracts",
    "round-trip",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Enumeration size for enumeration-based suites; suite default if unset.
    pub max_size: Option<usize>,
    /// Instance count for sampled suites; suite default if unset.
    pub samples: Option<usize>,
    pub seed: u64,
    pub oracle: OracleConfig,
    pub mode: ExecMode,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_size: None,
            samples: None,
            seed: DEFAULT_SEED,
            oracle: OracleConfig::default(),
            mode: ExecMode::default(),
        }
    }
}

impl SuiteConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.oracle.seed = seed;
        self
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub formula: String,
    pub assignment: Option<Assignment>,
    pub bound: Option<u64>,
    pub reason: String,
}

impl Failure {
    fn new(formula: &Formula, reason: impl Into<String>) -> Self {
        Failure {
            formula: formula.to_string(),
            assignment: None,
            bound: None,
            reason: reason.into(),
        }
    }

    fn refuted(formula: &Formula, cx: Option<Counterexample>, reason: impl Into<String>) -> Self {
        let (assignment, bound) = cx.map_or((None, None), |c| (Some(c.assignment), c.bound));
        Failure {
            formula: formula.to_string(),
            assignment,
            bound,
            reason: reason.into(),
        }
    }
}

/// Per-check tally inside a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: u64,
    pub failures: Vec<Failure>,
    /// Checks with failures at isolated bounds only.
    pub inconclusive: u64,
    pub parts: Vec<Part>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of the checks on one item.
#[derive(Default)]
struct Outcome {
    failures: Vec<(usize, Failure)>,
    checks: Vec<usize>,
    inconclusive: u64,
}

impl Outcome {
    fn tick(&mut self, part: usize) {
        self.checks.push(part);
    }

    fn fail(&mut self, part: usize, f: Failure) {
        self.failures.push((part, f));
    }

    /// Records an oracle verdict for `part`.
    fn verdict(
        &mut self,
        part: usize,
        formula: &Formula,
        v: Result<super::check::Verdict>,
        what: &str,
    ) {
        self.tick(part);
        match v {
            Ok(v) if v.status == Status::Refuted => {
                self.fail(part, Failure::refuted(formula, v.counterexample, what))
            }
            Ok(v) if v.status == Status::Inconclusive => self.inconclusive += 1,
            Ok(_) => {}
            Err(e) => self.fail(part, Failure::new(formula, format!("{what}: {e}"))),
        }
    }
}

fn assemble(suite: &str, names: &[String], checked: u64, outcomes: Vec<Outcome>) -> SuiteReport {
    let mut parts: Vec<Part> = names
        .iter()
        .map(|n| Part {
            name: n.clone(),
            checked: 0,
            failures: 0,
        })
        .collect();
    let mut failures = Vec::new();
    let mut inconclusive = 0;
    for o in outcomes {
        for p in o.checks {
            parts[p].checked += 1;
        }
        for (p, f) in o.failures {
            parts[p].failures += 1;
            failures.push(f);
        }
        inconclusive += o.inconclusive;
    }
    SuiteReport {
        suite: suite.to_string(),
        checked,
        failures,
        inconclusive,
        parts,
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Runs an enumeration sweep: `check` is applied to every formula.
fn sweep(
    suite: &str,
    part_names: Vec<String>,
    cfg: &EnumConfig,
    mode: ExecMode,
    check: impl Fn(&Formula, &mut Outcome) + Sync + Send,
) -> SuiteReport {
    let e = Enumerator::new(cfg.clone());
    let outcomes = filter_map_range(mode, e.total(), |i| {
        let f = e.nth_overall(i);
        let mut o = Outcome::default();
        check(&f, &mut o);
        Some(o)
    });
    assemble(suite, &part_names, e.total(), outcomes)
}

/// Same as [`sweep`] but keeps only tallies for items with no failures, so
/// memory stays flat on large enumerations.
fn sweep_tallies(
    suite: &str,
    part_names: Vec<String>,
    cfg: &EnumConfig,
    mode: ExecMode,
    check: impl Fn(&Formula, &mut Outcome) + Sync + Send,
) -> SuiteReport {
    let e = Enumerator::new(cfg.clone());
    let nparts = part_names.len();
    let chunk = 1 << 14;
    let nchunks = e.total().div_ceil(chunk);
    let outcomes = filter_map_range(mode, nchunks, |c| {
        let mut agg = Outcome::default();
        let mut counts = vec![0u64; nparts];
        for i in c * chunk..((c + 1) * chunk).min(e.total()) {
            let f = e.nth_overall(i);
            let mut o = Outcome::default();
            check(&f, &mut o);
            for p in o.checks {
                counts[p] += 1;
            }
            agg.failures.extend(o.failures);
            agg.inconclusive += o.inconclusive;
        }
        Some((agg, counts))
    });
    let mut report = assemble(suite, &part_names, e.total(), Vec::new());
    for (o, counts) in outcomes {
        for (p, c) in counts.into_iter().enumerate() {
            report.parts[p].checked += c;
        }
        for (p, f) in o.failures {
            report.parts[p].failures += 1;
            report.failures.push(f);
        }
        report.inconclusive += o.inconclusive;
    }
    report
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "class-equalities" => Ok(class_equalities(cfg)),
        "qf-dollar-lemma" => Ok(qf_dollar_lemma(cfg)),
        "translation-agreement" => Ok(translation_agreement(cfg)),
        "fv-preservation" => Ok(fv_preservation(cfg)),
        "a-collapse" => Ok(a_collapse(cfg)),
        "witness-directions" => Ok(witness_directions(cfg)),
        "prenex-contracts" => Ok(prenex_contracts(cfg)),
        "dual-involution" => Ok(dual_involution(cfg)),
        "round-trip" => Ok(round_trip(cfg)),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

const EQUALITY_PAIRS: [(Family, Family); 5] = [
    (Family::R, Family::UPlus),
    (Family::J, Family::EPlus),
    (Family::RPrime, Family::UPlus),
    (Family::JPrime, Family::EPlus),
    (Family::BPlus, Family::FPlus),
];

/// `R_k = UPlus_k`, `J_k = EPlus_k`, the primed variants, and
/// `BPlus_k = FPlus_k` for `k` in 1..=3.
pub fn class_equalities(cfg: &SuiteConfig) -> SuiteReport {
    let pairs: Vec<(ClassId, ClassId)> = (1..=3)
        .flat_map(|k| {
            EQUALITY_PAIRS
                .iter()
                .map(move |(a, b)| (ClassId::new(*a, k), ClassId::new(*b, k)))
        })
        .collect();
    let part_names = pairs.iter().map(|(a, b)| format!("{a}={b}")).collect();
    let ecfg = EnumConfig::standard(cfg.max_size.unwrap_or(9));
    sweep_tallies("class-equalities", part_names, &ecfg, cfg.mode, |f, o| {
        for (i, (a, b)) in pairs.iter().enumerate() {
            o.tick(i);
            if in_class(f, *a) != in_class(f, *b) {
                o.fail(i, Failure::new(f, format!("{a} and {b} disagree")));
            }
        }
    })
}

/// `dollar(f) <-> f \/ $` on quantifier-free formulas, exactly: every
/// assignment of `x` over `{0..3}`, every table for `p` and for `q` on
/// `{0..3}`, both placeholder values.
pub fn qf_dollar_lemma(cfg: &SuiteConfig) -> SuiteReport {
    const DOMAIN: u64 = 3;
    let ecfg = EnumConfig::standard(cfg.max_size.unwrap_or(8));
    let mut configs = Vec::new();
    for p in [false, true] {
        for mask in 0u32..1 << (DOMAIN + 1) {
            let q = Table::new(
                1,
                (0..=DOMAIN).filter(|i| mask >> i & 1 == 1).map(|i| vec![i]),
            );
            let p = Table::new(0, p.then(Vec::new));
            for ph in [false, true] {
                let mut tables = BTreeMap::new();
                tables.insert("p".to_string(), p.clone());
                tables.insert("q".to_string(), q.clone());
                configs.push(Interpretation {
                    bound: DOMAIN,
                    ph,
                    tables,
                });
            }
        }
    }
    sweep(
        "qf-dollar-lemma",
        names(&["dollar-qf"]),
        &ecfg,
        cfg.mode,
        |f, o| {
            if !f.is_quantifier_free() {
                return;
            }
            o.tick(0);
            let lhs = dollar_translate(f).expect("placeholder-free");
            let rhs = Formula::or(f.clone(), Formula::Placeholder);
            for it in &configs {
                for x in 0..=DOMAIN {
                    let env = Assignment::from([("x".to_string(), x)]);
                    let (a, b) = (eval_under(&lhs, it, &env), eval_under(&rhs, it, &env));
                    if a != b {
                        o.fail(
                            0,
                            Failure {
                                formula: f.to_string(),
                                assignment: Some(env),
                                bound: Some(DOMAIN),
                                reason: format!("ph={} gives {a:?} vs {b:?}", it.ph),
                            },
                        );
                        return;
                    }
                }
            }
        },
    )
}

fn neg_dollar(f: Formula) -> Formula {
    Formula::implies(f, Formula::Placeholder)
}

/// Closed prenex instances cycling through `Pi_1, Sigma_1, Pi_2, Sigma_2`.
fn prenex_instances(cfg: &SuiteConfig, n: usize, stream: u64) -> Vec<Formula> {
    let mut rng = cfg.rng(stream);
    (0..n)
        .map(|i| {
            let start = if i % 2 == 0 {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            random_prenex(&mut rng, start, 1 + (i / 2) % 2, 3)
        })
        .collect()
}

/// `dollar(f) <-> f \/ $`, `a(f) <-> f \/ $` and `~$~$dollar(f) <-> dollar(f)`
/// on closed prenex formulas of rank at most 2.
pub fn translation_agreement(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.samples.unwrap_or(500);
    let items = prenex_instances(cfg, n, 1);
    let part_names = names(&["dollar", "a", "dollar-stable"]);
    let outcomes = map_slice(cfg.mode, &items, |f| {
        let mut o = Outcome::default();
        let or_ph = Formula::or(f.clone(), Formula::Placeholder);
        let d = dollar_translate(f).expect("placeholder-free");
        let a = a_translate(f).expect("placeholder-free");
        let nn = neg_dollar(neg_dollar(d.clone()));
        o.verdict(
            0,
            f,
            check_equiv(&d, &or_ph, &cfg.oracle),
            "dollar(f) <-> f \\/ $",
        );
        o.verdict(
            1,
            f,
            check_equiv(&a, &or_ph, &cfg.oracle),
            "a(f) <-> f \\/ $",
        );
        o.verdict(
            2,
            f,
            check_equiv(&nn, &d, &cfg.oracle),
            "~$~$dollar(f) <-> dollar(f)",
        );
        o
    });
    assemble("translation-agreement", &part_names, n as u64, outcomes)
}

/// Half enumerated (evenly strided over the size-7 enumeration), half
/// random open formulas.
fn mixed_instances(cfg: &SuiteConfig, n: usize, stream: u64) -> Vec<Formula> {
    let e = Enumerator::new(EnumConfig::standard(cfg.max_size.unwrap_or(7)));
    let half = n / 2;
    let total = e.total();
    let mut out: Vec<Formula> = (0..half as u64)
        .map(|i| e.nth_overall(i * total / half.max(1) as u64))
        .collect();
    let mut rng = cfg.rng(stream);
    let gen = GenConfig {
        open: true,
        ..GenConfig::default()
    };
    out.extend((half..n).map(|_| random_formula(&mut rng, &gen)));
    out
}

/// Smallest `k <= cap` with `f` in `family_k`.
fn min_rank(f: &Formula, family: Family, cap: i32) -> Option<usize> {
    (0..=cap)
        .find(|&k| in_class(f, ClassId::new(family, k)))
        .map(|k| k as usize)
}

const FV_PARTS: [&str; 13] = [
    "dollar",
    "a",
    "kuroda",
    "dual",
    "prenex_classical",
    "prenex_in_class",
    "u_witness_epi",
    "e_neg_witness_epi",
    "u_neg_witness_esigma",
    "e_witness_esigma",
    "witness_sigma_pos",
    "witness_sigma_neg",
    "b_decompose",
];

pub fn fv_preservation(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.samples.unwrap_or(10_000);
    let items = mixed_instances(cfg, n, 2);
    let outcomes = map_slice(cfg.mode, &items, |f| {
        let mut o = Outcome::default();
        let fv = f.free_vars();
        let expect = |o: &mut Outcome, part: usize, r: Result<Vec<Formula>>| {
            o.tick(part);
            match r {
                Ok(gs) => {
                    for g in gs {
                        if g.free_vars() != fv {
                            o.fail(part, Failure::new(f, format!("{}: {g}", FV_PARTS[part])));
                        }
                    }
                }
                Err(e) => o.fail(part, Failure::new(f, format!("{}: {e}", FV_PARTS[part]))),
            }
        };
        let w = |r: Result<WitnessResult>| r.map(|w| vec![w.witness]);
        expect(&mut o, 0, dollar_translate(f).map(|g| vec![g]));
        expect(&mut o, 1, a_translate(f).map(|g| vec![g]));
        expect(&mut o, 2, Ok(vec![kuroda_translate(f)]));
        if f.is_prenex() {
            expect(&mut o, 3, dual(f).map(|g| vec![g]));
        }
        expect(&mut o, 4, Ok(vec![prenex_classical(f)]));
        let cap = 8;
        let e = min_rank(f, Family::EPlus, cap);
        let u = min_rank(f, Family::UPlus, cap);
        let k = match (e, u) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(k) = k {
            expect(&mut o, 5, w(prenex_in_class(f, k)));
        }
        if let Some(u) = u {
            let k = u.saturating_sub(1);
            expect(&mut o, 6, w(u_witness_epi(f, k)));
            expect(&mut o, 8, w(u_neg_witness_esigma(f, k)));
            expect(&mut o, 11, w(witness_sigma(f, k, Polarity::Neg)));
        }
        if let Some(e) = e {
            let k = e.saturating_sub(1);
            expect(&mut o, 7, w(e_neg_witness_epi(f, k)));
            expect(&mut o, 9, w(e_witness_esigma(f, k)));
            expect(&mut o, 10, w(witness_sigma(f, k, Polarity::Pos)));
        }
        if let Some(k) = min_rank(f, Family::BPlus, cap) {
            expect(&mut o, 12, b_decompose(f, k).map(|d| vec![d.pos, d.neg]));
        }
        o
    });
    assemble("fv-preservation", &names(&FV_PARTS), n as u64, outcomes)
}

pub fn a_collapse(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.samples.unwrap_or(10_000);
    let items = mixed_instances(cfg, n, 3);
    let outcomes = map_slice(cfg.mode, &items, |f| {
        let mut o = Outcome::default();
        o.tick(0);
        let back = a_translate(f)
            .and_then(|a| Ok(a.substitute_placeholder(&Formula::Bot)?))
            .map(|g| simplify_or_bot(&g));
        match back {
            Ok(g) if g == *f => {}
            Ok(g) => o.fail(0, Failure::new(f, format!("collapsed to {g}"))),
            Err(e) => o.fail(0, Failure::new(f, e.to_string())),
        }
        o
    });
    assemble("a-collapse", &names(&["a-collapse"]), n as u64, outcomes)
}

const WITNESS_PARTS: [&str; 6] = [
    "u_witness_epi",
    "e_neg_witness_epi",
    "u_neg_witness_esigma",
    "e_witness_esigma",
    "witness_sigma",
    "b_decompose",
];

/// Closed random formulas in `family_{k}` for `k` cycling through `ranks`.
fn class_instances(
    cfg: &SuiteConfig,
    n: usize,
    stream: u64,
    family: Family,
    ranks: &[usize],
) -> Vec<(Formula, usize)> {
    let mut rng = cfg.rng(stream);
    let gen = GenConfig::default();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let k = ranks[out.len() % ranks.len()];
        let f = random_formula(&mut rng, &gen);
        if f.is_quantifier_free() && k > 0 {
            continue;
        }
        if in_class(&f, ClassId::new(family, k as i32)) {
            out.push((f, k));
        }
    }
    out
}

fn check_witness(
    o: &mut Outcome,
    part: usize,
    f: &Formula,
    r: Result<WitnessResult>,
    negated: bool,
    oracle: &OracleConfig,
) {
    let w = match r {
        Ok(w) => w,
        Err(e) => {
            o.tick(part);
            o.fail(
                part,
                Failure::new(f, format!("{}: {e}", WITNESS_PARTS[part])),
            );
            return;
        }
    };
    o.tick(part);
    if !in_class(&w.witness, w.target_class) {
        o.fail(
            part,
            Failure::new(
                f,
                format!("witness {} not in {}", w.witness, w.target_class),
            ),
        );
    }
    let goal = if negated {
        Formula::not(f.clone())
    } else {
        f.clone()
    };
    let forward = Formula::implies(w.witness.clone(), goal.clone());
    o.verdict(part, f, check_valid(&forward, oracle), "witness -> goal");
    let backward = Formula::implies(goal, w.witness);
    o.verdict(
        part,
        f,
        check_valid(&backward, oracle),
        "goal -> witness (classical)",
    );
}

/// Class membership of every witness, and classical truth of both
/// directions between witness and goal.
pub fn witness_directions(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.samples.unwrap_or(1000);
    let ranks = [1, 2];
    let mut items: Vec<(usize, Formula, usize)> = Vec::new();
    let add = |items: &mut Vec<_>, part: usize, fam: Family| {
        for (f, k) in class_instances(cfg, n, 10 + part as u64, fam, &ranks) {
            items.push((part, f, k));
        }
    };
    add(&mut items, 0, Family::UPlus);
    add(&mut items, 1, Family::EPlus);
    add(&mut items, 2, Family::UPlus);
    add(&mut items, 3, Family::EPlus);
    add(&mut items, 4, Family::FPlus);
    add(&mut items, 5, Family::BPlus);
    let oracle = &cfg.oracle;
    let outcomes = map_slice(cfg.mode, &items, |(part, f, k)| {
        let mut o = Outcome::default();
        let km = k - 1;
        match part {
            0 => check_witness(&mut o, 0, f, u_witness_epi(f, km), false, oracle),
            1 => check_witness(&mut o, 1, f, e_neg_witness_epi(f, km), true, oracle),
            2 => check_witness(&mut o, 2, f, u_neg_witness_esigma(f, km), true, oracle),
            3 => check_witness(&mut o, 3, f, e_witness_esigma(f, km), false, oracle),
            4 => {
                let side_e = in_class(f, ClassId::new(Family::EPlus, *k as i32));
                let side_u = in_class(f, ClassId::new(Family::UPlus, *k as i32));
                if side_e {
                    check_witness(
                        &mut o,
                        4,
                        f,
                        witness_sigma(f, km, Polarity::Pos),
                        false,
                        oracle,
                    );
                }
                if side_u {
                    check_witness(
                        &mut o,
                        4,
                        f,
                        witness_sigma(f, km, Polarity::Neg),
                        true,
                        oracle,
                    );
                }
            }
            _ => match b_decompose(f, *k) {
                Ok(d) => {
                    o.tick(5);
                    let not_f = Formula::not(f.clone());
                    let checks = [
                        (Formula::implies(d.pos.clone(), f.clone()), "pos -> f"),
                        (Formula::implies(d.neg.clone(), not_f.clone()), "neg -> ~f"),
                        (
                            Formula::implies(f.clone(), d.pos.clone()),
                            "f -> pos (classical)",
                        ),
                        (
                            Formula::implies(not_f, d.neg.clone()),
                            "~f -> neg (classical)",
                        ),
                        (Formula::or(d.pos, d.neg), "pos \\/ neg"),
                    ];
                    for (g, what) in checks {
                        o.verdict(5, f, check_valid(&g, oracle), what);
                    }
                }
                Err(e) => {
                    o.tick(5);
                    o.fail(5, Failure::new(f, format!("b_decompose: {e}")));
                }
            },
        }
        o
    });
    assemble(
        "witness-directions",
        &names(&WITNESS_PARTS),
        items.len() as u64,
        outcomes,
    )
}

/// Random `EPlus_k` / `UPlus_k` inputs with `k <= 2`: output is strict
/// `Sigma_k` / `Pi_k` and classically equivalent to the input.
pub fn prenex_contracts(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.samples.unwrap_or(1000);
    let mut rng = cfg.rng(4);
    let gen = GenConfig::default();
    let mut items = Vec::with_capacity(n);
    while items.len() < n {
        let f = random_formula(&mut rng, &gen);
        let e = min_rank(&f, Family::EPlus, 2);
        let u = min_rank(&f, Family::UPlus, 2);
        let k = match (e, u) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => continue,
        };
        // also exercise padding up to rank 2
        let k = if items.len() % 3 == 2 { 2 } else { k };
        items.push((f, k));
    }
    let outcomes = map_slice(cfg.mode, &items, |(f, k)| {
        let mut o = Outcome::default();
        match prenex_in_class(f, *k) {
            Ok(w) => {
                let strict = match w.target_class.family {
                    Family::Sigma => is_sigma(&w.witness, *k as i32),
                    _ => is_pi(&w.witness, *k as i32),
                };
                o.tick(0);
                if !strict {
                    o.fail(
                        0,
                        Failure::new(f, format!("{} not strict {}", w.witness, w.target_class)),
                    );
                }
                o.verdict(
                    1,
                    f,
                    check_equiv(f, &w.witness, &cfg.oracle),
                    "prenex equivalence",
                );
            }
            Err(e) => {
                o.tick(0);
                o.fail(0, Failure::new(f, e.to_string()));
            }
        }
        o
    });
    assemble(
        "prenex-contracts",
        &names(&["strict-class", "equivalence"]),
        n as u64,
        outcomes,
    )
}

/// On every enumerated prenex formula: `Sigma_k(f) <=> Pi_k(dual f)`,
/// `Pi_k(f) <=> Sigma_k(dual f)`, and `dual(dual f) <-> f`.
pub fn dual_involution(cfg: &SuiteConfig) -> SuiteReport {
    let ecfg = EnumConfig::standard(cfg.max_size.unwrap_or(8));
    let max_rank = ecfg.max_size as i32;
    sweep_tallies(
        "dual-involution",
        names(&["sigma-to-pi", "pi-to-sigma", "involution"]),
        &ecfg,
        cfg.mode,
        |f, o| {
            if !f.is_prenex() {
                return;
            }
            let d = dual(f).expect("prenex");
            o.tick(0);
            o.tick(1);
            for k in 0..=max_rank {
                if is_sigma(f, k) != is_pi(&d, k) {
                    o.fail(0, Failure::new(f, format!("Sigma_{k} vs dual in Pi_{k}")));
                }
                if is_pi(f, k) != is_sigma(&d, k) {
                    o.fail(1, Failure::new(f, format!("Pi_{k} vs dual in Sigma_{k}")));
                }
            }
            let dd = dual(&d).expect("prenex");
            o.verdict(2, f, check_equiv(&dd, f, &cfg.oracle), "dual(dual f) <-> f");
        },
    )
}

/// `parse(render(f)) == f` over the enumeration.
pub fn round_trip(cfg: &SuiteConfig) -> SuiteReport {
    let ecfg = EnumConfig::standard(cfg.max_size.unwrap_or(8));
    sweep_tallies(
        "round-trip",
        names(&["round-trip"]),
        &ecfg,
        cfg.mode,
        |f, o| {
            o.tick(0);
            let s = f.to_string();
            match parse(&s) {
                Ok(g) if g == *f => {}
                Ok(g) => o.fail(0, Failure::new(f, format!("reparsed as {g:?}"))),
                Err(e) => o.fail(0, Failure::new(f, e.to_string())),
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            samples: Some(40),
            max_size: Some(5),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_small() {
        for name in SUITES {
            let r = run_suite(name, &small()).unwrap();
            assert!(
                r.passed(),
                "{name}: {:?}",
                &r.failures[..r.failures.len().min(3)]
            );
            assert!(r.checked > 0, "{name}");
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &SuiteConfig::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn report_shape() {
        let r = run_suite("a-collapse", &small()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["suite"], "a-collapse");
        assert_eq!(v["checked"], 40);
        assert!(v["failures"].as_array().unwrap().is_empty());
    }

    #[test]
    fn modes_agree() {
        let seq = SuiteConfig {
            mode: ExecMode::Sequential,
            ..small()
        };
        let par = SuiteConfig {
            mode: ExecMode::Parallel,
            ..small()
        };
        for name in ["class-equalities", "fv-preservation"] {
            assert_eq!(
                run_suite(name, &seq).unwrap(),
                run_suite(name, &par).unwrap()
            );
        }
    }
}
