//! Falsification checks built on bounded evaluation.
//!
//! A check is refuted only when the same predicate tables and placeholder
//! value give a failure at two consecutive bounds. A failure at isolated
//! bounds is reported as inconclusive.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::enumerate::{EnumConfig, Enumerator};
use super::eval::{eval_under, Assignment, Interpretation, Table};
use super::exec::{filter_map_range, ExecMode};
use crate::ast::{Formula, EQ, LE};
use crate::error::{Error, Result};
use crate::hierarchy::{in_class, ClassId};

/// Default RNG seed for sampled predicate tables and generated instances.
pub const DEFAULT_SEED: u64 = 0x5eed_1ab5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Increasing quantifier bounds.
    pub bounds: Vec<u64>,
    pub seed: u64,
    /// Tables are defined on `{0..table_domain}`.
    pub table_domain: u64,
    /// Number of sampled table assignments when exhaustive is too large.
    pub random_tables: usize,
    /// Largest number of table assignments enumerated exhaustively.
    pub exhaustive_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            bounds: vec![3, 5, 8],
            seed: DEFAULT_SEED,
            table_domain: 2,
            random_tables: 64,
            exhaustive_limit: 512,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub formula: String,
    pub assignment: Assignment,
    pub bound: Option<u64>,
    pub ph: Option<bool>,
    pub tables: BTreeMap<String, Table>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            status: Status::Pass,
            counterexample: None,
        }
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }
}

/// Uninterpreted predicates of `f`, i.e. all but the built-in `=` and `<=`.
pub fn uninterpreted(f: &Formula) -> BTreeSet<(String, usize)> {
    f.predicates()
        .into_iter()
        .filter(|(n, a)| !(*a == 2 && (n == EQ || n == LE)))
        .collect()
}

fn all_tuples(arity: usize, domain: u64) -> Vec<Vec<u64>> {
    (0..arity).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (0..=domain).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect()
    })
}

/// Table assignments for `preds`: every combination when there are at most
/// `exhaustive_limit` of them and all arities are at most one, otherwise
/// `random_tables` seeded samples.
pub fn table_configs(
    preds: &BTreeSet<(String, usize)>,
    cfg: &OracleConfig,
) -> Vec<BTreeMap<String, Table>> {
    let per_pred: Vec<(String, usize, Vec<Vec<u64>>)> = preds
        .iter()
        .map(|(n, a)| (n.clone(), *a, all_tuples(*a, cfg.table_domain)))
        .collect();
    let total = per_pred.iter().try_fold(1usize, |acc, (_, _, rows)| {
        1usize
            .checked_shl(rows.len() as u32)
            .and_then(|c| acc.checked_mul(c))
    });
    let exhaustive = per_pred.iter().all(|(_, a, _)| *a <= 1)
        && total.is_some_and(|t| t <= cfg.exhaustive_limit);
    if exhaustive {
        let mut out = vec![BTreeMap::new()];
        for (name, arity, rows) in &per_pred {
            let mut next = Vec::new();
            for base in &out {
                for mask in 0u64..(1 << rows.len()) {
                    let chosen = rows
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, r)| r.clone());
                    let mut m: BTreeMap<String, Table> = base.clone();
                    m.insert(name.clone(), Table::new(*arity, chosen));
                    next.push(m);
                }
            }
            out = next;
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.random_tables)
            .map(|_| {
                per_pred
                    .iter()
                    .map(|(name, arity, rows)| {
                        let chosen: Vec<Vec<u64>> =
                            rows.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
                        (name.clone(), Table::new(*arity, chosen))
                    })
                    .collect()
            })
            .collect()
    }
}

fn assignments(vars: &[String], bound: u64) -> impl Iterator<Item = Assignment> + '_ {
    let n = vars.len() as u32;
    let total = (bound + 1).pow(n);
    (0..total).map(move |mut i| {
        vars.iter()
            .map(|v| {
                let x = i % (bound + 1);
                i /= bound + 1;
                (v.clone(), x)
            })
            .collect()
    })
}

/// First assignment of the free variables over `{0..bound}` falsifying `f`.
fn falsify(f: &Formula, vars: &[String], it: &Interpretation) -> Result<Option<Assignment>> {
    for env in assignments(vars, it.bound) {
        if !eval_under(f, it, &env)? {
            return Ok(Some(env));
        }
    }
    Ok(None)
}

/// Checks that `f` holds for all values of its free variables, all table
/// configurations, both placeholder values (when `$` occurs) and all bounds.
pub fn check_valid(f: &Formula, cfg: &OracleConfig) -> Result<Verdict> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    let phs: &[bool] = if f.contains_placeholder() {
        &[false, true]
    } else {
        &[false]
    };
    let mut unstable: Option<Counterexample> = None;
    for tables in table_configs(&uninterpreted(f), cfg) {
        for &ph in phs {
            let mut prev_failed = false;
            for &bound in &cfg.bounds {
                let it = Interpretation {
                    bound,
                    ph,
                    tables: tables.clone(),
                };
                let failed = falsify(f, &vars, &it)?;
                if let Some(assignment) = &failed {
                    let cx = Counterexample {
                        formula: f.to_string(),
                        assignment: assignment.clone(),
                        bound: Some(bound),
                        ph: Some(ph),
                        tables: tables.clone(),
                    };
                    if prev_failed {
                        return Ok(Verdict {
                            status: Status::Refuted,
                            counterexample: Some(cx),
                        });
                    }
                    unstable.get_or_insert(cx);
                }
                prev_failed = failed.is_some();
            }
        }
    }
    Ok(match unstable {
        None => Verdict::pass(),
        Some(cx) => Verdict {
            status: Status::Inconclusive,
            counterexample: Some(cx),
        },
    })
}

/// `(f -> g) /\ (g -> f)`.
pub fn iff(f: &Formula, g: &Formula) -> Formula {
    Formula::and(
        Formula::implies(f.clone(), g.clone()),
        Formula::implies(g.clone(), f.clone()),
    )
}

/// Checks that `f` and `g`, which must have the same free variables, agree
/// under every configuration [`check_valid`] explores.
pub fn check_equiv(f: &Formula, g: &Formula, cfg: &OracleConfig) -> Result<Verdict> {
    let (a, b) = (f.free_vars(), g.free_vars());
    if a != b {
        return Err(Error::FreeVarMismatch {
            left: a.into_iter().collect(),
            right: b.into_iter().collect(),
        });
    }
    check_valid(&iff(f, g), cfg)
}

/// Compares two deciders over an enumeration; refuted with the first
/// formula (in enumeration order) on which they disagree.
pub fn check_class_equality(a: ClassId, b: ClassId, cfg: &EnumConfig, mode: ExecMode) -> Verdict {
    let e = Enumerator::new(cfg.clone());
    let first = filter_map_range(mode, e.total(), |i| {
        let f = e.nth_overall(i);
        (in_class(&f, a) != in_class(&f, b)).then_some(f)
    })
    .into_iter()
    .next();
    match first {
        None => Verdict::pass(),
        Some(f) => Verdict {
            status: Status::Refuted,
            counterexample: Some(Counterexample {
                formula: f.to_string(),
                assignment: Assignment::new(),
                bound: None,
                ph: None,
                tables: BTreeMap::new(),
            }),
        },
    }
}
