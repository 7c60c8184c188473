//! Strict syntactic deciders for every class family.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::alt::{alt_paths, AltSet, Sign};
use crate::ast::{Formula, Quantifier};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Sigma,
    Pi,
    E,
    U,
    F,
    EPlus,
    UPlus,
    FPlus,
    R,
    J,
    RPrime,
    JPrime,
    RDoublePrime,
    JDoublePrime,
    Q,
    V,
    EPi,
    ESigma,
    VeePi,
    BPlus,
}

impl Family {
    pub const ALL: [Family; 20] = [
        Family::Sigma,
        Family::Pi,
        Family::E,
        Family::U,
        Family::F,
        Family::EPlus,
        Family::UPlus,
        Family::FPlus,
        Family::R,
        Family::J,
        Family::RPrime,
        Family::JPrime,
        Family::RDoublePrime,
        Family::JDoublePrime,
        Family::Q,
        Family::V,
        Family::EPi,
        Family::ESigma,
        Family::VeePi,
        Family::BPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sigma => "Sigma",
            Family::Pi => "Pi",
            Family::E => "E",
            Family::U => "U",
            Family::F => "F",
            Family::EPlus => "EPlus",
            Family::UPlus => "UPlus",
            Family::FPlus => "FPlus",
            Family::R => "R",
            Family::J => "J",
            Family::RPrime => "RPrime",
            Family::JPrime => "JPrime",
            Family::RDoublePrime => "RDoublePrime",
            Family::JDoublePrime => "JDoublePrime",
            Family::Q => "Q",
            Family::V => "V",
            Family::EPi => "EPi",
            Family::ESigma => "ESigma",
            Family::VeePi => "VeePi",
            Family::BPlus => "BPlus",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A class family at a rank. Negative ranks denote the empty class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassId {
    pub family: Family,
    pub rank: i32,
}

impl ClassId {
    pub fn new(family: Family, rank: i32) -> Self {
        ClassId { family, rank }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.rank)
    }
}

pub fn in_class(f: &Formula, c: ClassId) -> bool {
    let k = c.rank;
    if k < 0 {
        return false;
    }
    match c.family {
        Family::Sigma => is_sigma(f, k),
        Family::Pi => is_pi(f, k),
        Family::E => one_sided(&alt_paths(f), k, Sign::Plus, false),
        Family::U => one_sided(&alt_paths(f), k, Sign::Minus, false),
        Family::F => alt_paths(f).degree() == k as usize,
        Family::EPlus => one_sided(&alt_paths(f), k, Sign::Plus, true),
        Family::UPlus => one_sided(&alt_paths(f), k, Sign::Minus, true),
        Family::FPlus => alt_paths(f).degree() <= k as usize,
        Family::R => is_r(f, k, Base::Degree),
        Family::J => is_j(f, k, Base::Degree),
        Family::RPrime => is_r(f, k, Base::OneSided),
        Family::JPrime => is_j(f, k, Base::OneSided),
        Family::RDoublePrime => is_r(f, k, Base::Prenex),
        Family::JDoublePrime => is_j(f, k, Base::Prenex),
        Family::Q => is_q(f, k),
        Family::V => is_v(f, k),
        Family::EPi => is_epi(f, k),
        Family::ESigma => is_esigma(f, k),
        Family::VeePi => is_veepi(f, k),
        Family::BPlus => is_bplus(f, k),
    }
}

// E_k / U_k (cumulative = false) and E_k^+ / U_k^+ (cumulative = true).
fn one_sided(alt: &AltSet, k: i32, start: Sign, cumulative: bool) -> bool {
    let d = alt.degree();
    let k = k as usize;
    if d < k {
        return cumulative;
    }
    d == k && (k == 0 || !alt.has(start.flip(), k))
}

/// Leading block of `q` quantifiers: returns the body after at least one of them.
fn strip_block(f: &Formula, q: Quantifier) -> Option<&Formula> {
    let mut cur = f;
    let mut n = 0;
    while let Some((q2, _, body)) = cur.as_quantified() {
        if q2 != q {
            break;
        }
        cur = body;
        n += 1;
    }
    (n > 0).then_some(cur)
}

pub(crate) fn is_sigma(f: &Formula, k: i32) -> bool {
    match k {
        k if k < 0 => false,
        0 => f.is_quantifier_free(),
        _ => strip_block(f, Quantifier::Exists).is_some_and(|b| is_pi(b, k - 1)),
    }
}

pub(crate) fn is_pi(f: &Formula, k: i32) -> bool {
    match k {
        k if k < 0 => false,
        0 => f.is_quantifier_free(),
        _ => strip_block(f, Quantifier::Forall).is_some_and(|b| is_sigma(b, k - 1)),
    }
}

#[derive(Clone, Copy)]
enum Base {
    /// F_k^+
    Degree,
    /// E_k^+ for R, U_k^+ for J
    OneSided,
    /// Sigma_k for R, Pi_k for J
    Prenex,
}

fn r_base(f: &Formula, k: i32, base: Base) -> bool {
    match base {
        Base::Degree => alt_paths(f).degree() <= k as usize,
        Base::OneSided => one_sided(&alt_paths(f), k, Sign::Plus, true),
        Base::Prenex => is_sigma(f, k),
    }
}

fn j_base(f: &Formula, k: i32, base: Base) -> bool {
    match base {
        Base::Degree => alt_paths(f).degree() <= k as usize,
        Base::OneSided => one_sided(&alt_paths(f), k, Sign::Minus, true),
        Base::Prenex => is_pi(f, k),
    }
}

fn is_r(f: &Formula, k: i32, base: Base) -> bool {
    if k == 0 {
        return f.is_quantifier_free();
    }
    if r_base(f, k - 1, base) {
        return true;
    }
    match f {
        Formula::And { l, r } | Formula::Or { l, r } => is_r(l, k, base) && is_r(r, k, base),
        Formula::Forall { body, .. } => is_r(body, k, base),
        Formula::Implies { l, r } => is_j(l, k, base) && is_r(r, k, base),
        _ => false,
    }
}

fn is_j(f: &Formula, k: i32, base: Base) -> bool {
    if k == 0 {
        return f.is_quantifier_free();
    }
    if j_base(f, k - 1, base) {
        return true;
    }
    match f {
        Formula::And { l, r } | Formula::Or { l, r } => is_j(l, k, base) && is_j(r, k, base),
        Formula::Exists { body, .. } => is_j(body, k, base),
        Formula::Implies { l, r } => is_r(l, k, base) && is_j(r, k, base),
        _ => false,
    }
}

fn is_q(f: &Formula, k: i32) -> bool {
    if k == 0 {
        return f.is_quantifier_free();
    }
    match f {
        Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => true,
        Formula::And { l, r } | Formula::Or { l, r } => is_q(l, k) && is_q(r, k),
        Formula::Forall { body, .. } | Formula::Exists { body, .. } => is_q(body, k),
        Formula::Implies { l, r } => is_j(l, k, Base::Degree) && is_q(r, k),
    }
}

fn is_v(f: &Formula, k: i32) -> bool {
    if k == 0 {
        return f.is_quantifier_free();
    }
    if is_j(f, k, Base::Degree) {
        return true;
    }
    match f {
        Formula::And { l, r } => is_v(l, k) && is_v(r, k),
        Formula::Forall { body, .. } => is_v(body, k),
        _ => false,
    }
}

pub(crate) fn is_epi(f: &Formula, k: i32) -> bool {
    match k {
        k if k < 0 => return false,
        0 => return f.is_quantifier_free(),
        _ => {}
    }
    if is_pi(f, k) {
        return true;
    }
    match f {
        Formula::Or { l, r } => is_epi(l, k) && is_epi(r, k),
        Formula::Forall { body, .. } => is_epi(body, k),
        _ => false,
    }
}

pub(crate) fn is_esigma(f: &Formula, k: i32) -> bool {
    match k {
        k if k < 0 => false,
        0 => f.is_quantifier_free(),
        _ => {
            let mut cur = f;
            loop {
                if is_epi(cur, k - 1) {
                    return true;
                }
                match cur {
                    Formula::Exists { body, .. } => cur = body,
                    _ => return false,
                }
            }
        }
    }
}

fn is_veepi(f: &Formula, k: i32) -> bool {
    if is_pi(f, k) {
        return true;
    }
    match f {
        Formula::Or { l, r } => is_veepi(l, k) && is_veepi(r, k),
        _ => false,
    }
}

fn is_bplus(f: &Formula, k: i32) -> bool {
    let alt = alt_paths(f);
    if one_sided(&alt, k, Sign::Plus, true) || one_sided(&alt, k, Sign::Minus, true) {
        return true;
    }
    match f {
        Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
            is_bplus(l, k) && is_bplus(r, k)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse;

    fn member(src: &str, fam: Family, k: i32) -> bool {
        in_class(&parse(src).unwrap(), ClassId::new(fam, k))
    }

    #[test]
    fn decider_examples() {
        assert!(member("exists x. x = 0", Family::Sigma, 1));
        assert!(!member("exists x. forall y. p", Family::U, 2));
        assert!(member("exists x. forall y. p", Family::E, 2));
        assert!(member("(exists x. p) -> forall y. q", Family::R, 1));
        assert!(!member("exists x. p", Family::R, 1));
    }

    #[test]
    fn strict_prenex_blocks() {
        assert!(member("exists x y. forall z. p", Family::Sigma, 2));
        assert!(!member("forall z. p", Family::Sigma, 2));
        assert!(!member("exists x. p", Family::Sigma, 2));
        assert!(member("p", Family::Sigma, 0));
        assert!(!member("p", Family::Sigma, 1));
        assert!(!member("p", Family::Pi, -1));
    }

    #[test]
    fn rank_zero_is_quantifier_free() {
        for fam in Family::ALL {
            assert!(member("p /\\ q(x) -> bot", fam, 0), "{fam}");
            assert!(!member("forall x. q(x)", fam, 0), "{fam}");
        }
    }

    #[test]
    fn cumulative_variants() {
        assert!(member("p", Family::UPlus, 2));
        assert!(member("exists x. p", Family::UPlus, 2));
        assert!(!member("exists x. p", Family::UPlus, 1));
        assert!(member("exists x. forall y. p", Family::EPlus, 2));
        assert!(!member("exists x. forall y. p", Family::UPlus, 2));
        assert!(member("(forall x. p) \\/ exists y. q", Family::F, 1));
        assert!(!member("(forall x. p) \\/ exists y. q", Family::E, 1));
    }

    #[test]
    fn extended_classes() {
        assert!(member(
            "(forall x. p) \\/ forall y. forall z. q",
            Family::VeePi,
            1
        ));
        assert!(!member(
            "forall x. ((forall y. p) \\/ forall w. q)",
            Family::VeePi,
            1
        ));
        assert!(member(
            "forall x. ((forall y. p) \\/ forall w. q)",
            Family::EPi,
            1
        ));
        assert!(!member("forall x. ((forall y. p) \\/ q)", Family::EPi, 1));
        assert!(member(
            "exists x. forall x. ((forall y. p) \\/ forall w. q)",
            Family::ESigma,
            2
        ));
        assert!(member("forall y. p", Family::ESigma, 2));
        assert!(!member("forall y. p", Family::ESigma, 1));
        assert!(member("exists x. (forall x. p) \\/ q", Family::Q, 1));
        assert!(member("forall x. ((exists y. p) /\\ q)", Family::V, 1));
        assert!(member(
            "((forall x. p) -> exists y. q) /\\ exists z. r",
            Family::BPlus,
            1
        ));
    }
}
