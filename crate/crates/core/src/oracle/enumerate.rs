//! Exhaustive, duplicate-free formula enumeration by size.
//!
//! Formulas of each size are counted once and then produced by unranking,
//! so any index range of the stream can be generated independently.
//! Order within a size: atoms, then `exists`/`forall` over each variable,
//! then `/\`, `\/`, `->` by left-operand size.

use serde::{Deserialize, Serialize};

use crate::ast::{Formula, Quantifier, Term, EQ, LE};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    /// Maximum AST node count.
    pub max_size: usize,
    /// Leaves of the enumeration.
    pub atoms: Vec<Formula>,
    /// Variables available to quantifiers.
    pub variables: Vec<String>,
}

impl EnumConfig {
    /// Atoms `bot, p, q(x)` and variables `x, y`.
    pub fn standard(max_size: usize) -> Self {
        EnumConfig {
            max_size,
            atoms: vec![
                Formula::Bot,
                Formula::atom("p"),
                Formula::prime("q", vec![Term::var("x")]),
            ],
            variables: vec!["x".into(), "y".into()],
        }
    }

    /// Atoms built from pools: each predicate applied to every tuple of
    /// variables, plus `bot`, optionally `$`, and optionally `v = 0` and
    /// `v <= w`.
    pub fn from_pools(
        max_size: usize,
        predicates: &[(String, usize)],
        variables: &[String],
        allow_placeholder: bool,
        allow_arithmetic: bool,
    ) -> Self {
        let mut atoms = vec![Formula::Bot];
        if allow_placeholder {
            atoms.push(Formula::Placeholder);
        }
        for (name, arity) in predicates {
            for args in tuples(variables, *arity) {
                atoms.push(Formula::prime(name.clone(), args));
            }
        }
        if allow_arithmetic {
            for v in variables {
                atoms.push(Formula::prime(EQ, vec![Term::var(v.clone()), Term::zero()]));
            }
            for args in tuples(variables, 2) {
                atoms.push(Formula::prime(LE, args));
            }
        }
        EnumConfig {
            max_size,
            atoms,
            variables: variables.to_vec(),
        }
    }
}

fn tuples(vars: &[String], n: usize) -> Vec<Vec<Term>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                vars.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(Term::var(v.clone()));
                    t
                })
            })
            .collect()
    })
}

#[derive(Clone, Copy)]
enum Binary {
    And,
    Or,
    Implies,
}

const BINARY: [Binary; 3] = [Binary::And, Binary::Or, Binary::Implies];
const QUANTIFIERS: [Quantifier; 2] = [Quantifier::Exists, Quantifier::Forall];

#[derive(Clone, Debug)]
pub struct Enumerator {
    cfg: EnumConfig,
    counts: Vec<u64>,
}

impl Enumerator {
    /// Panics if some count exceeds `u64`.
    pub fn new(cfg: EnumConfig) -> Self {
        let mut counts = vec![0u64; cfg.max_size + 1];
        let nq = (QUANTIFIERS.len() * cfg.variables.len()) as u64;
        for n in 1..=cfg.max_size {
            counts[n] = if n == 1 {
                cfg.atoms.len() as u64
            } else {
                let mut c = nq.checked_mul(counts[n - 1]).expect("count overflow");
                for l in 1..n - 1 {
                    let pairs = counts[l]
                        .checked_mul(counts[n - 1 - l])
                        .and_then(|x| x.checked_mul(BINARY.len() as u64))
                        .expect("count overflow");
                    c = c.checked_add(pairs).expect("count overflow");
                }
                c
            };
        }
        Enumerator { cfg, counts }
    }

    pub fn config(&self) -> &EnumConfig {
        &self.cfg
    }

    /// Number of formulas of exactly `size` nodes.
    pub fn count(&self, size: usize) -> u64 {
        self.counts.get(size).copied().unwrap_or(0)
    }

    /// Number of formulas of size at most `max_size`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The `idx`-th formula of exactly `size` nodes.
    pub fn nth(&self, size: usize, mut idx: u64) -> Formula {
        assert!(
            idx < self.count(size),
            "index {idx} out of range for size {size}"
        );
        if size == 1 {
            return self.cfg.atoms[idx as usize].clone();
        }
        let sub = self.counts[size - 1];
        for q in QUANTIFIERS {
            for v in &self.cfg.variables {
                if idx < sub {
                    return q.bind(v.clone(), self.nth(size - 1, idx));
                }
                idx -= sub;
            }
        }
        for op in BINARY {
            for l in 1..size - 1 {
                let (cl, cr) = (self.counts[l], self.counts[size - 1 - l]);
                let block = cl * cr;
                if idx < block {
                    let left = self.nth(l, idx / cr);
                    let right = self.nth(size - 1 - l, idx % cr);
                    return match op {
                        Binary::And => Formula::and(left, right),
                        Binary::Or => Formula::or(left, right),
                        Binary::Implies => Formula::implies(left, right),
                    };
                }
                idx -= block;
            }
        }
        unreachable!("index within count")
    }

    /// The `idx`-th formula of the whole stream (all sizes in order).
    pub fn nth_overall(&self, mut idx: u64) -> Formula {
        for size in 1..=self.cfg.max_size {
            let c = self.counts[size];
            if idx < c {
                return self.nth(size, idx);
            }
            idx -= c;
        }
        panic!("index out of range")
    }

    /// All formulas up to `max_size`, by size.
    pub fn iter(&self) -> impl Iterator<Item = Formula> + '_ {
        (1..=self.cfg.max_size).flat_map(move |n| (0..self.count(n)).map(move |i| self.nth(n, i)))
    }
}

/// Convenience for [`Enumerator::iter`].
pub fn enumerate_formulas(cfg: EnumConfig) -> Vec<Formula> {
    Enumerator::new(cfg).iter().collect()
}
