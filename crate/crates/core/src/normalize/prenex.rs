//! Classical prenexation by quantifier-block alignment.
//!
//! A formula is aligned against a target shape `(start, len)`: `len` blocks
//! whose quantifiers alternate starting with `start`. Each subformula
//! contributes its quantifiers to the matching block, possibly empty. The
//! input must be freshened so that pulling binders outward cannot capture.

use serde::Serialize;

use super::Principle;
use crate::ast::{Formula, Quantifier};
use crate::error::{Error, Result};
use crate::hierarchy::{self, in_class, pad_to, ClassId, Family};

type Blocks = Vec<Vec<String>>;

fn quantifier_at(start: Quantifier, i: usize) -> Quantifier {
    if i.is_multiple_of(2) {
        start
    } else {
        start.flip()
    }
}

fn zip(mut a: Blocks, b: Blocks) -> Blocks {
    for (x, y) in a.iter_mut().zip(b) {
        x.extend(y);
    }
    a
}

fn align(f: &Formula, start: Quantifier, len: usize) -> Option<(Blocks, Formula)> {
    match f {
        Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => {
            Some((vec![Vec::new(); len], f.clone()))
        }
        Formula::And { l, r } | Formula::Or { l, r } => {
            let (bl, ml) = align(l, start, len)?;
            let (br, mr) = align(r, start, len)?;
            let m = match f {
                Formula::And { .. } => Formula::and(ml, mr),
                _ => Formula::or(ml, mr),
            };
            Some((zip(bl, br), m))
        }
        Formula::Implies { l, r } => {
            let (bl, ml) = align(l, start.flip(), len)?;
            let (br, mr) = align(r, start, len)?;
            Some((zip(bl, br), Formula::implies(ml, mr)))
        }
        Formula::Forall { .. } | Formula::Exists { .. } => {
            let (q, var, body) = f.as_quantified().expect("quantifier node");
            if len == 0 {
                None
            } else if q == start {
                let (mut bs, m) = align(body, start, len)?;
                bs[0].insert(0, var.to_string());
                Some((bs, m))
            } else {
                if len < 2 {
                    return None;
                }
                let (bs, m) = align(f, q, len - 1)?;
                let mut out = vec![Vec::new()];
                out.extend(bs);
                Some((out, m))
            }
        }
    }
}

fn build(start: Quantifier, blocks: &Blocks, matrix: Formula) -> Formula {
    blocks
        .iter()
        .enumerate()
        .rev()
        .fold(matrix, |acc, (i, vs)| {
            let q = quantifier_at(start, i);
            vs.iter().rev().fold(acc, |acc, v| q.bind(v.clone(), acc))
        })
}

/// Prenex form of `f` with at most `len` alternating blocks starting with
/// `start`, if the alternation paths of `f` allow it.
pub(crate) fn prenex_aligned(f: &Formula, start: Quantifier, len: usize) -> Option<Formula> {
    let g = f.freshen();
    let (blocks, matrix) = align(&g, start, len)?;
    Some(build(start, &blocks, matrix))
}

/// Whether a prenex formula can be padded into strict `Pi_m`.
pub(crate) fn fits_pi(f: &Formula, m: usize) -> bool {
    if !f.is_prenex() {
        return false;
    }
    let (bs, _) = hierarchy::blocks(f);
    match bs.first() {
        None => true,
        Some((Quantifier::Forall, _)) => bs.len() <= m,
        Some((Quantifier::Exists, _)) => bs.len() < m,
    }
}

/// A classically equivalent prenex formula with as few blocks as the
/// alternation paths of `f` allow.
pub fn prenex_classical(f: &Formula) -> Formula {
    let d = hierarchy::degree(f);
    let k = d as i32;
    if in_class(f, ClassId::new(Family::E, k)) {
        prenex_aligned(f, Quantifier::Exists, d).expect("E_d aligns to (exists, d)")
    } else if in_class(f, ClassId::new(Family::U, k)) {
        prenex_aligned(f, Quantifier::Forall, d).expect("U_d aligns to (forall, d)")
    } else {
        prenex_aligned(f, Quantifier::Exists, d + 1).expect("every F_d aligns to d + 1 blocks")
    }
}

/// Target side: existential (`Sigma_k`) or universal (`Pi_k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `EPlus_k` input, `Sigma_k` output.
    E,
    /// `UPlus_k` input, `Pi_k` output.
    U,
}

/// A witness formula with its target class and the principles over which
/// it implies (`forward_over`) and is implied by (`backward_over`) its goal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    pub witness: Formula,
    pub target_class: ClassId,
    pub forward_over: Principle,
    pub backward_over: Principle,
}

/// Prenex form in strict `Sigma_k` for `EPlus_k` input, else strict `Pi_k`
/// for `UPlus_k` input.
pub fn prenex_in_class(f: &Formula, k: usize) -> Result<WitnessResult> {
    let side = if in_class(f, ClassId::new(Family::EPlus, k as i32)) {
        Side::E
    } else {
        Side::U
    };
    prenex_in_class_as(f, k, side)
}

pub fn prenex_in_class_as(f: &Formula, k: usize, side: Side) -> Result<WitnessResult> {
    let rank = k as i32;
    let (source, target, start, principle) = match side {
        Side::E => (
            Family::EPlus,
            Family::Sigma,
            Quantifier::Exists,
            Principle::SigmaDneUDns(k),
        ),
        Side::U => (
            Family::UPlus,
            Family::Pi,
            Quantifier::Forall,
            Principle::PiOrPiDne(k),
        ),
    };
    let target = ClassId::new(target, rank);
    if !in_class(f, ClassId::new(source, rank)) {
        return Err(Error::NotInClass {
            formula: f.to_string(),
            class: ClassId::new(source, rank),
        });
    }
    if in_class(f, target) {
        return Ok(WitnessResult {
            witness: f.clone(),
            target_class: target,
            forward_over: Principle::None,
            backward_over: Principle::None,
        });
    }
    let p = prenex_aligned(f, start, k).expect("one-sided class aligns to its rank");
    Ok(WitnessResult {
        witness: pad_to(&p, target)?,
        target_class: target,
        forward_over: principle,
        backward_over: principle,
    })
}
