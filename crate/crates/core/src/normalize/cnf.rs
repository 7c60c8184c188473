//! Conjunctive normal form over caller-chosen atoms.

use crate::ast::Formula;
use crate::error::{Error, Result};

/// Default node limit for [`cnf_over_atoms`].
pub const DEFAULT_CNF_LIMIT: usize = 10_000;

type Clause = Vec<Formula>;

fn is_clause(f: &Formula, atom: &impl Fn(&Formula) -> bool) -> bool {
    atom(f) || matches!(f, Formula::Or { l, r } if is_clause(l, atom) && is_clause(r, atom))
}

fn is_cnf(f: &Formula, atom: &impl Fn(&Formula) -> bool) -> bool {
    is_clause(f, atom) || matches!(f, Formula::And { l, r } if is_cnf(l, atom) && is_cnf(r, atom))
}

fn clause_size(c: &Clause) -> usize {
    c.iter().map(Formula::size).sum::<usize>() + c.len() - 1
}

fn cnf_size(cs: &[Clause]) -> usize {
    cs.iter().map(clause_size).sum::<usize>() + cs.len().saturating_sub(1)
}

fn clauses(f: &Formula, atom: &impl Fn(&Formula) -> bool, limit: usize) -> Result<Vec<Clause>> {
    if atom(f) {
        return Ok(vec![vec![f.clone()]]);
    }
    let out = match f {
        Formula::And { l, r } => {
            let mut a = clauses(l, atom, limit)?;
            a.extend(clauses(r, atom, limit)?);
            a
        }
        Formula::Or { l, r } => {
            let a = clauses(l, atom, limit)?;
            let b = clauses(r, atom, limit)?;
            let mut out = Vec::with_capacity(a.len() * b.len());
            let mut size = 0;
            for x in &a {
                for y in &b {
                    let c: Clause = x.iter().chain(y).cloned().collect();
                    size += clause_size(&c) + 1;
                    if size > limit + 1 {
                        return Err(Error::CnfTooLarge { limit });
                    }
                    out.push(c);
                }
            }
            out
        }
        _ => return Err(Error::NotAnAtom(f.to_string())),
    };
    if cnf_size(&out) > limit {
        return Err(Error::CnfTooLarge { limit });
    }
    Ok(out)
}

fn join(items: Vec<Formula>, op: fn(Formula, Formula) -> Formula) -> Formula {
    items.into_iter().reduce(op).expect("nonempty")
}

/// Conjunction of disjunctions of subformulas accepted by `atom`. A node
/// accepted by `atom` is never split. Input already in this shape is
/// returned unchanged.
pub fn cnf_over_atoms(f: &Formula, atom: impl Fn(&Formula) -> bool) -> Result<Formula> {
    cnf_over_atoms_with_limit(f, atom, DEFAULT_CNF_LIMIT)
}

pub fn cnf_over_atoms_with_limit(
    f: &Formula,
    atom: impl Fn(&Formula) -> bool,
    limit: usize,
) -> Result<Formula> {
    let cs = clauses(f, &atom, limit)?;
    if is_cnf(f, &atom) {
        return Ok(f.clone());
    }
    Ok(join(
        cs.into_iter().map(|c| join(c, Formula::or)).collect(),
        Formula::and,
    ))
}
