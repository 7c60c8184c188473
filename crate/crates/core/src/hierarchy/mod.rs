//! Alternation paths, degree, class deciders and padding into prenex classes.

mod alt;
mod classes;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use alt::{alt_paths, degree, AltPath, AltSet, Sign, MAX_PATH_LEN};
pub use classes::{in_class, ClassId, Family};
pub(crate) use classes::{is_epi, is_esigma, is_pi, is_sigma};

use crate::ast::{Formula, Quantifier};
use crate::error::{Error, Result};

/// Default rank cap for [`classify_report`].
pub const DEFAULT_RANK_CAP: i32 = 4;

/// Quantifier blocks of a prenex formula, outermost first, and its matrix.
pub(crate) fn blocks(f: &Formula) -> (Vec<(Quantifier, Vec<String>)>, &Formula) {
    let (prefix, matrix) = f.split_prefix();
    let mut out: Vec<(Quantifier, Vec<String>)> = Vec::new();
    for (q, v) in prefix {
        match out.last_mut() {
            Some((q2, vs)) if *q2 == q => vs.push(v.to_string()),
            _ => out.push((q, vec![v.to_string()])),
        }
    }
    (out, matrix)
}

pub(crate) fn rebuild(blocks: &[(Quantifier, Vec<String>)], matrix: Formula) -> Formula {
    blocks.iter().rev().fold(matrix, |acc, (q, vs)| {
        vs.iter().rev().fold(acc, |acc, v| q.bind(v.clone(), acc))
    })
}

/// Yields `z1, z2, ...` skipping names in `avoid`, which is updated.
pub(crate) fn next_pad_name(avoid: &mut BTreeSet<String>) -> String {
    let name = (1u64..)
        .map(|i| format!("z{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded name search");
    avoid.insert(name.clone());
    name
}

/// Inserts vacuous quantifier blocks over fresh variables so that a prenex
/// formula of rank at most `c.rank` lands in strict `Sigma`/`Pi` at `c.rank`.
pub fn pad_to(f: &Formula, c: ClassId) -> Result<Formula> {
    let target = match c.family {
        Family::Sigma => Quantifier::Exists,
        Family::Pi => Quantifier::Forall,
        _ => return Err(Error::NotPrenexClass(c)),
    };
    let fail = || Error::PadDoesNotFit {
        formula: f.to_string(),
        class: c,
    };
    if c.rank < 0 || !f.is_prenex() {
        return Err(fail());
    }
    let n = c.rank as usize;
    let (mut bs, matrix) = blocks(f);
    let mut avoid = f.all_vars();
    let mut fresh_block = |q| (q, vec![next_pad_name(&mut avoid)]);
    if n == 0 {
        return if bs.is_empty() {
            Ok(f.clone())
        } else {
            Err(fail())
        };
    }
    if bs.first().is_none_or(|(q, _)| *q != target) {
        if bs.len() + 1 > n {
            return Err(fail());
        }
        bs.insert(0, fresh_block(target));
    }
    if bs.len() > n {
        return Err(fail());
    }
    while bs.len() < n {
        let q = bs
            .last()
            .map(|(q, _)| q.flip())
            .expect("at least one block");
        bs.push(fresh_block(q));
    }
    Ok(rebuild(&bs, matrix.clone()))
}

/// Minimal ranks per family, alternation paths and degree of a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub degree: usize,
    pub alt: AltSet,
    pub classes: BTreeMap<&'static str, Option<i32>>,
}

/// For each family, the least rank `k <= cap` with `f` in the class.
pub fn classify_report(f: &Formula, cap: i32) -> ClassReport {
    let alt = alt_paths(f);
    let classes = Family::ALL
        .into_iter()
        .map(|fam| {
            let k = (0..=cap).find(|&k| in_class(f, ClassId::new(fam, k)));
            (fam.name(), k)
        })
        .collect();
    ClassReport {
        degree: alt.degree(),
        alt,
        classes,
    }
}
