//! Seeded random formulas for sampled checks.
//!
//! Atoms only mention variables bound at their position, so generated
//! formulas are closed unless `open` is set. Uninterpreted predicates are
//! `p` (0-ary) and `q` (unary); binary relations use `=` and `<=`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ast::{Formula, Quantifier, Term};

pub const VARIABLES: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Maximum connective depth.
    pub depth: usize,
    /// Variables quantifiers may bind.
    pub variables: Vec<String>,
    /// Atoms may mention any variable of the pool, not only bound ones.
    pub open: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            depth: 4,
            variables: VARIABLES[..3].iter().map(|s| s.to_string()).collect(),
            open: false,
        }
    }
}

fn small_term<R: Rng>(rng: &mut R, scope: &[String]) -> Term {
    if scope.is_empty() || rng.gen_bool(0.15) {
        return Term::numeral(rng.gen_range(0..2));
    }
    let v = Term::var(scope.choose(rng).expect("nonempty scope").clone());
    if rng.gen_bool(0.2) {
        Term::succ(v)
    } else {
        v
    }
}

/// A random prime formula over the variables in `scope`.
pub fn random_atom<R: Rng>(rng: &mut R, scope: &[String]) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::Bot,
        1 | 2 => Formula::atom("p"),
        3..=5 => Formula::prime("q", vec![small_term(rng, scope)]),
        6 | 7 => Formula::eq(small_term(rng, scope), small_term(rng, scope)),
        _ => Formula::le(small_term(rng, scope), small_term(rng, scope)),
    }
}

/// A random quantifier-free formula of connective depth at most `depth`.
pub fn random_qf<R: Rng>(rng: &mut R, depth: usize, scope: &[String]) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_atom(rng, scope);
    }
    let l = random_qf(rng, depth - 1, scope);
    match rng.gen_range(0..4) {
        0 => Formula::and(l, random_qf(rng, depth - 1, scope)),
        1 => Formula::or(l, random_qf(rng, depth - 1, scope)),
        2 => Formula::implies(l, random_qf(rng, depth - 1, scope)),
        _ => Formula::not(l),
    }
}

/// A random formula with quantifiers anywhere.
pub fn random_formula<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Formula {
    let mut scope = if cfg.open {
        cfg.variables.clone()
    } else {
        Vec::new()
    };
    formula(rng, cfg, cfg.depth, &mut scope)
}

fn formula<R: Rng>(rng: &mut R, cfg: &GenConfig, depth: usize, scope: &mut Vec<String>) -> Formula {
    if depth == 0 || rng.gen_bool(0.15) {
        return random_atom(rng, scope);
    }
    match rng.gen_range(0..9) {
        0 | 1 => {
            let q = if rng.gen_bool(0.5) {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            let v = cfg.variables.choose(rng).expect("variables").clone();
            scope.push(v.clone());
            let body = formula(rng, cfg, depth - 1, scope);
            scope.pop();
            q.bind(v, body)
        }
        2 => Formula::not(formula(rng, cfg, depth - 1, scope)),
        k => {
            let l = formula(rng, cfg, depth - 1, scope);
            let r = formula(rng, cfg, depth - 1, scope);
            match k {
                3 | 4 => Formula::and(l, r),
                5 | 6 => Formula::or(l, r),
                _ => Formula::implies(l, r),
            }
        }
    }
}

/// A closed prenex formula with exactly `blocks` nonempty alternating
/// blocks starting with `start`, each of one or two variables.
pub fn random_prenex<R: Rng>(
    rng: &mut R,
    start: Quantifier,
    blocks: usize,
    matrix_depth: usize,
) -> Formula {
    let mut prefix = Vec::new();
    let mut q = start;
    let mut next = 0;
    for _ in 0..blocks {
        for _ in 0..rng.gen_range(1..=2) {
            let v = format!("x{next}");
            next += 1;
            prefix.push((q, v));
        }
        q = q.flip();
    }
    let scope: Vec<String> = prefix.iter().map(|(_, v)| v.clone()).collect();
    let matrix = random_qf(rng, matrix_depth, &scope);
    prefix
        .into_iter()
        .rev()
        .fold(matrix, |acc, (q, v)| q.bind(v, acc))
}
