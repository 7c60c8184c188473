//! Classical evaluation with quantifiers bounded to `{0..bound}`.
//!
//! Terms are evaluated over the naturals with checked arithmetic. A
//! quantifier whose variable does not occur free in its body is evaluated
//! once, which is exact because the domain is nonempty.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ast::{Formula, Term, EQ, LE};
use crate::error::{Error, Result};

pub type Assignment = BTreeMap<String, u64>;

/// Finite extension of an uninterpreted predicate: the tuples where it holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Table {
    pub arity: usize,
    pub rows: BTreeSet<Vec<u64>>,
}

impl Table {
    pub fn new(arity: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Self {
        Table {
            arity,
            rows: rows.into_iter().collect(),
        }
    }

    pub fn holds(&self, args: &[u64]) -> bool {
        self.rows.contains(args)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretation {
    pub bound: u64,
    pub ph: bool,
    pub tables: BTreeMap<String, Table>,
}

impl Interpretation {
    pub fn new(bound: u64, ph: bool) -> Self {
        Interpretation {
            bound,
            ph,
            tables: BTreeMap::new(),
        }
    }

    pub fn with_table(mut self, name: impl Into<String>, table: Table) -> Self {
        self.tables.insert(name.into(), table);
        self
    }
}

/// Truth value of the closed formula `f`.
pub fn bounded_eval(f: &Formula, it: &Interpretation) -> Result<bool> {
    eval_under(f, it, &Assignment::new())
}

/// Truth value of `f` with its free variables taken from `env`.
pub fn eval_under(f: &Formula, it: &Interpretation, env: &Assignment) -> Result<bool> {
    let mut stack: Vec<(&str, u64)> = env.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    eval(f, it, &mut stack)
}

fn lookup(stack: &[(&str, u64)], v: &str) -> Result<u64> {
    stack
        .iter()
        .rev()
        .find(|(n, _)| *n == v)
        .map(|(_, x)| *x)
        .ok_or_else(|| Error::UnassignedVariable(v.to_string()))
}

fn term(t: &Term, stack: &[(&str, u64)]) -> Result<u64> {
    match t {
        Term::Var { name } => lookup(stack, name),
        Term::Zero => Ok(0),
        Term::Succ { arg } => term(arg, stack)?.checked_add(1).ok_or(Error::Overflow),
        Term::Plus { l, r } => term(l, stack)?
            .checked_add(term(r, stack)?)
            .ok_or(Error::Overflow),
        Term::Times { l, r } => term(l, stack)?
            .checked_mul(term(r, stack)?)
            .ok_or(Error::Overflow),
    }
}

fn eval<'a>(f: &'a Formula, it: &Interpretation, stack: &mut Vec<(&'a str, u64)>) -> Result<bool> {
    Ok(match f {
        Formula::Bot => false,
        Formula::Placeholder => it.ph,
        Formula::Prime { pred, args } => {
            let vals = args
                .iter()
                .map(|a| term(a, stack))
                .collect::<Result<Vec<_>>>()?;
            match (pred.as_str(), vals.as_slice()) {
                (EQ, [a, b]) => a == b,
                (LE, [a, b]) => a <= b,
                _ => match it.tables.get(pred) {
                    Some(t) if t.arity == vals.len() => t.holds(&vals),
                    _ => {
                        return Err(Error::UnassignedPredicate {
                            name: pred.clone(),
                            arity: vals.len(),
                        })
                    }
                },
            }
        }
        Formula::And { l, r } => eval(l, it, stack)? && eval(r, it, stack)?,
        Formula::Or { l, r } => eval(l, it, stack)? || eval(r, it, stack)?,
        Formula::Implies { l, r } => !eval(l, it, stack)? || eval(r, it, stack)?,
        Formula::Forall { var, body } | Formula::Exists { var, body } => {
            let universal = matches!(f, Formula::Forall { .. });
            if !body.has_free(var) {
                return eval(body, it, stack);
            }
            for x in 0..=it.bound {
                stack.push((var.as_str(), x));
                let v = eval(body, it, stack);
                stack.pop();
                if v? != universal {
                    return Ok(!universal);
                }
            }
            universal
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse;

    fn at(src: &str, bound: u64) -> bool {
        bounded_eval(&parse(src).unwrap(), &Interpretation::new(bound, false)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert!(at("exists x. x + x = S(S(0))", 4));
        assert!(at("forall x. x <= S(x)", 8));
        assert!(!at("$", 3));
        assert!(at("exists x. forall y. x <= y", 3));
        assert!(!at("forall x. exists y. S(x) <= y", 3));
    }

    #[test]
    fn tables_and_errors() {
        let it = Interpretation::new(3, true).with_table("q", Table::new(1, [vec![0]]));
        let ev = |s: &str| bounded_eval(&parse(s).unwrap(), &it);
        assert_eq!(ev("exists x. q(x)"), Ok(true));
        assert_eq!(ev("forall x. q(x)"), Ok(false));
        assert_eq!(ev("$"), Ok(true));
        assert!(matches!(ev("r(0)"), Err(Error::UnassignedPredicate { .. })));
        assert!(matches!(ev("q(x)"), Err(Error::UnassignedVariable(_))));
        let big = (0..6).fold(Term::numeral(2), |t, _| Term::times(t.clone(), t));
        let f = Formula::eq(big, Term::zero());
        assert_eq!(bounded_eval(&f, &it), Err(Error::Overflow));
    }

    #[test]
    fn shadowing_and_vacuous_binders() {
        assert!(at("forall x. exists x. x = S(S(S(0)))", 3));
        assert!(!at("exists x. forall x. x = S(S(S(0)))", 3));
        let env = Assignment::from([("x".to_string(), 2)]);
        let f = parse("(forall y. x <= S(S(x))) /\\ x = S(S(0))").unwrap();
        assert_eq!(
            eval_under(&f, &Interpretation::new(5, false), &env),
            Ok(true)
        );
    }
}
