//! Witness constructions by structural recursion.
//!
//! Intermediate results live in a relaxed form of `EPi_m`: prenex formulas
//! that pad into strict `Pi_m` (the leaves), closed under `\/` and `forall`.
//! [`lift`] turns the relaxed form into a strict member by padding leaves.

use std::collections::BTreeSet;

use serde::Serialize;

use super::prenex::{fits_pi, prenex_aligned, prenex_in_class_as, Side, WitnessResult};
use super::Principle;
use crate::ast::{fresh_name, Formula, Quantifier};
use crate::error::{Error, Result};
use crate::hierarchy::{in_class, is_epi, is_esigma, pad_to, ClassId, Family};
use crate::translate::dual;

fn require(f: &Formula, c: ClassId) -> Result<()> {
    if in_class(f, c) {
        Ok(())
    } else {
        Err(Error::NotInClass {
            formula: f.to_string(),
            class: c,
        })
    }
}

fn rank(k: usize) -> i32 {
    k as i32
}

fn lift(f: &Formula, m: usize) -> Formula {
    if fits_pi(f, m) {
        return pad_to(f, ClassId::new(Family::Pi, rank(m))).expect("leaf fits Pi_m");
    }
    match f {
        Formula::Or { l, r } => Formula::or(lift(l, m), lift(r, m)),
        Formula::Forall { var, body } => Formula::forall(var.clone(), lift(body, m)),
        _ => unreachable!("not in relaxed EPi_{m}: {f}"),
    }
}

/// Relaxed `EPi_m` conjunction.
fn econj(a: &Formula, b: &Formula, m: usize) -> Formula {
    if fits_pi(a, m) && fits_pi(b, m) {
        return prenex_aligned(&Formula::and(a.clone(), b.clone()), Quantifier::Forall, m)
            .expect("two Pi_m leaves align");
    }
    if !fits_pi(b, m) {
        match b {
            Formula::Or { l, r } => return Formula::or(econj(a, l, m), econj(a, r, m)),
            Formula::Forall { var, body } => {
                let (v, body) = unclash(var, body, a, b);
                return Formula::forall(v, econj(a, &body, m));
            }
            _ => {}
        }
    }
    match a {
        Formula::Or { l, r } => Formula::or(econj(l, b, m), econj(r, b, m)),
        Formula::Forall { var, body } => {
            let (v, body) = unclash(var, body, b, a);
            Formula::forall(v, econj(&body, b, m))
        }
        _ => unreachable!("not in relaxed EPi_{m}: {a}"),
    }
}

/// Renames the binder `var` of `whole` if it is free in `other`.
fn unclash(var: &str, body: &Formula, other: &Formula, whole: &Formula) -> (String, Formula) {
    if !other.has_free(var) {
        return (var.to_string(), body.clone());
    }
    let mut avoid = other.all_vars();
    avoid.extend(whole.all_vars());
    let v = fresh_name(var, &avoid);
    let body = body.rename_free(var, &v);
    (v, body)
}

/// Relaxed `EPi_m` witness implying `f`, for `f` in `UPlus_m`.
fn u(f: &Formula, m: usize) -> Result<Formula> {
    if f.is_quantifier_free() {
        return Ok(f.clone());
    }
    require(f, ClassId::new(Family::UPlus, rank(m)))?;
    Ok(match f {
        Formula::Or { l, r } => Formula::or(u(l, m)?, u(r, m)?),
        Formula::And { l, r } => econj(&u(l, m)?, &u(r, m)?, m),
        Formula::Implies { l, r } => Formula::or(n(l, m)?, u(r, m)?),
        Formula::Forall { var, body } => Formula::forall(var.clone(), u(body, m)?),
        Formula::Exists { .. } => prenex_in_class_as(f, m - 1, Side::E)?.witness,
        _ => unreachable!("quantifier-free handled above"),
    })
}

/// Relaxed `EPi_m` witness implying `~f`, for `f` in `EPlus_m`.
fn n(f: &Formula, m: usize) -> Result<Formula> {
    if f.is_quantifier_free() {
        return Ok(Formula::not(f.clone()));
    }
    require(f, ClassId::new(Family::EPlus, rank(m)))?;
    Ok(match f {
        Formula::Or { l, r } => econj(&n(l, m)?, &n(r, m)?, m),
        Formula::And { l, r } => Formula::or(n(l, m)?, n(r, m)?),
        Formula::Implies { l, r } => econj(&u(l, m)?, &n(r, m)?, m),
        Formula::Exists { var, body } => Formula::forall(var.clone(), n(body, m)?),
        Formula::Forall { .. } => dual(&prenex_in_class_as(f, m - 1, Side::U)?.witness)?,
        _ => unreachable!("quantifier-free handled above"),
    })
}

fn epi_result(witness: Formula, k: usize) -> WitnessResult {
    WitnessResult {
        witness: lift(&witness, k + 1),
        target_class: ClassId::new(Family::EPi, rank(k + 1)),
        forward_over: Principle::SigmaLem(rank(k)),
        backward_over: Principle::Lem,
    }
}

/// `EPi_{k+1}` formula implying `f`, for `f` in `UPlus_{k+1}`.
pub fn u_witness_epi(f: &Formula, k: usize) -> Result<WitnessResult> {
    require(f, ClassId::new(Family::UPlus, rank(k + 1)))?;
    Ok(epi_result(u(f, k + 1)?, k))
}

/// `EPi_{k+1}` formula implying `~f`, for `f` in `EPlus_{k+1}`.
pub fn e_neg_witness_epi(f: &Formula, k: usize) -> Result<WitnessResult> {
    require(f, ClassId::new(Family::EPlus, rank(k + 1)))?;
    Ok(epi_result(n(f, k + 1)?, k))
}

/// A member of `EPi_k` equivalent to `f /\ g`, for `f, g` in `EPi_k`.
pub fn epi_conjunction(f: &Formula, g: &Formula, k: usize) -> Result<Formula> {
    let c = ClassId::new(Family::EPi, rank(k));
    require(f, c)?;
    require(g, c)?;
    Ok(lift(&econj(f, g, k), k))
}

/// `exists vars. body` with `body` in relaxed `EPi_m`.
#[derive(Clone, Debug)]
struct Es {
    vars: Vec<String>,
    body: Formula,
}

impl Es {
    fn plain(body: Formula) -> Self {
        Es {
            vars: Vec::new(),
            body,
        }
    }

    fn prefix(mut self, x: &str) -> Self {
        if !self.vars.iter().any(|v| v == x) {
            self.vars.insert(0, x.to_string());
        }
        self
    }

    fn all_vars(&self) -> BTreeSet<String> {
        let mut s = self.body.all_vars();
        s.extend(self.vars.iter().cloned());
        s
    }

    fn formula(&self, m: usize) -> Formula {
        let body = lift(&self.body, m);
        self.vars
            .iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v.clone(), acc))
    }
}

/// Makes the blocks of `a` and `b` disjoint from each other and from the
/// other side's body, renaming in `b` first.
fn separate(a: Es, mut b: Es) -> (Es, Es) {
    let mut avoid = a.all_vars();
    avoid.extend(b.all_vars());
    let a_names: BTreeSet<&String> = a.vars.iter().collect();
    let a_body = a.body.all_vars();
    for v in b.vars.iter_mut() {
        if a_names.contains(v) || a_body.contains(v) {
            let w = fresh_name(v, &avoid);
            avoid.insert(w.clone());
            b.body = b.body.rename_free(v, &w);
            *v = w;
        }
    }
    let mut a = a;
    for v in a.vars.iter_mut() {
        if b.body.has_free(v) {
            let w = fresh_name(v, &avoid);
            avoid.insert(w.clone());
            a.body = a.body.rename_free(v, &w);
            *v = w;
        }
    }
    (a, b)
}

fn es_conj(a: Es, b: Es, m: usize) -> Es {
    let (a, b) = separate(a, b);
    Es {
        body: econj(&a.body, &b.body, m),
        vars: a.vars.into_iter().chain(b.vars).collect(),
    }
}

fn es_disj(a: Es, b: Es) -> Es {
    let (a, b) = separate(a, b);
    Es {
        body: Formula::or(a.body, b.body),
        vars: a.vars.into_iter().chain(b.vars).collect(),
    }
}

/// `ESigma_{k+1}` witness implying `~f`, for `f` in `UPlus_{k+1}`.
fn rn(f: &Formula, k: usize) -> Result<Es> {
    if in_class(f, ClassId::new(Family::EPlus, rank(k))) {
        return Ok(Es::plain(n(f, k)?));
    }
    require(f, ClassId::new(Family::UPlus, rank(k + 1)))?;
    Ok(match f {
        Formula::Or { l, r } => es_conj(rn(l, k)?, rn(r, k)?, k),
        Formula::And { l, r } => es_disj(rn(l, k)?, rn(r, k)?),
        Formula::Implies { l, r } => es_conj(jp(l, k)?, rn(r, k)?, k),
        Formula::Forall { var, body } => rn(body, k)?.prefix(var),
        _ => unreachable!("E_k^+ base covers the rest"),
    })
}

/// `ESigma_{k+1}` witness implying `f`, for `f` in `EPlus_{k+1}`.
fn jp(f: &Formula, k: usize) -> Result<Es> {
    if in_class(f, ClassId::new(Family::UPlus, rank(k))) {
        return Ok(Es::plain(u(f, k)?));
    }
    require(f, ClassId::new(Family::EPlus, rank(k + 1)))?;
    Ok(match f {
        Formula::Or { l, r } => es_disj(jp(l, k)?, jp(r, k)?),
        Formula::And { l, r } => es_conj(jp(l, k)?, jp(r, k)?, k),
        Formula::Implies { l, r } => es_disj(rn(l, k)?, jp(r, k)?),
        Formula::Exists { var, body } => jp(body, k)?.prefix(var),
        _ => unreachable!("U_k^+ base covers the rest"),
    })
}

fn esigma_result(es: Es, k: usize) -> WitnessResult {
    WitnessResult {
        witness: es.formula(k),
        target_class: ClassId::new(Family::ESigma, rank(k + 1)),
        forward_over: Principle::SigmaLem(rank(k) - 1),
        backward_over: Principle::Lem,
    }
}

/// `ESigma_{k+1}` formula implying `~f`, for `f` in `UPlus_{k+1}`.
pub fn u_neg_witness_esigma(f: &Formula, k: usize) -> Result<WitnessResult> {
    require(f, ClassId::new(Family::UPlus, rank(k + 1)))?;
    Ok(esigma_result(rn(f, k)?, k))
}

/// `ESigma_{k+1}` formula implying `f`, for `f` in `EPlus_{k+1}`.
pub fn e_witness_esigma(f: &Formula, k: usize) -> Result<WitnessResult> {
    require(f, ClassId::new(Family::EPlus, rank(k + 1)))?;
    Ok(esigma_result(jp(f, k)?, k))
}

fn split_esigma(f: &Formula, k: usize) -> Es {
    let mut vars = Vec::new();
    let mut cur = f;
    while !is_epi(cur, rank(k)) {
        match cur {
            Formula::Exists { var, body } => {
                vars.push(var.clone());
                cur = body;
            }
            _ => unreachable!("checked ESigma membership"),
        }
    }
    let mut es = Es::plain(cur.clone());
    for v in vars.iter().rev() {
        es = es.prefix(v);
    }
    es
}

/// Members of `ESigma_{k+1}` equivalent to `f /\ g` and `f \/ g`.
pub fn esigma_combine(f: &Formula, g: &Formula, k: usize) -> Result<(Formula, Formula)> {
    let c = ClassId::new(Family::ESigma, rank(k + 1));
    require(f, c)?;
    require(g, c)?;
    debug_assert!(is_esigma(f, rank(k + 1)));
    let (a, b) = (split_esigma(f, k), split_esigma(g, k));
    let conj = es_conj(a.clone(), b.clone(), k).formula(k);
    let disj = es_disj(a, b).formula(k);
    Ok((conj, disj))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Pos,
    Neg,
}

/// Strict `Sigma_{k+1}` formula implying `f` (`Pos`, `f` in `EPlus_{k+1}`)
/// or `~f` (`Neg`, `f` in `UPlus_{k+1}`).
pub fn witness_sigma(f: &Formula, k: usize, polarity: Polarity) -> Result<WitnessResult> {
    let es = match polarity {
        Polarity::Pos => {
            require(f, ClassId::new(Family::EPlus, rank(k + 1)))?;
            jp(f, k)?
        }
        Polarity::Neg => {
            require(f, ClassId::new(Family::UPlus, rank(k + 1)))?;
            rn(f, k)?
        }
    };
    let body = prenex_aligned(&es.body, Quantifier::Forall, k).expect("EPi_k body aligns");
    let p = es
        .vars
        .iter()
        .rev()
        .fold(body, |acc, v| Formula::exists(v.clone(), acc));
    let target = ClassId::new(Family::Sigma, rank(k + 1));
    Ok(WitnessResult {
        witness: pad_to(&p, target)?,
        target_class: target,
        forward_over: Principle::PiOrPiDne(k),
        backward_over: Principle::Lem,
    })
}

/// `pos` implies `f` and `neg` implies `~f`; both are built from `EPi_k`
/// and `Sigma_k` members with `/\` and `\/`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BDecomposition {
    pub pos: Formula,
    pub neg: Formula,
    pub rank: usize,
    pub forward_over: Principle,
    pub backward_over: Principle,
}

fn decompose(f: &Formula, k: usize) -> Result<(Formula, Formula)> {
    if f.is_quantifier_free() {
        return Ok((f.clone(), Formula::not(f.clone())));
    }
    Ok(match f {
        Formula::And { l, r } => {
            let ((p1, n1), (p2, n2)) = (decompose(l, k)?, decompose(r, k)?);
            (Formula::and(p1, p2), Formula::or(n1, n2))
        }
        Formula::Or { l, r } => {
            let ((p1, n1), (p2, n2)) = (decompose(l, k)?, decompose(r, k)?);
            (Formula::or(p1, p2), Formula::and(n1, n2))
        }
        Formula::Implies { l, r } => {
            let ((p1, n1), (p2, n2)) = (decompose(l, k)?, decompose(r, k)?);
            (Formula::or(n1, p2), Formula::and(p1, n2))
        }
        _ if k >= 1 && in_class(f, ClassId::new(Family::UPlus, rank(k))) => (
            u_witness_epi(f, k - 1)?.witness,
            witness_sigma(f, k - 1, Polarity::Neg)?.witness,
        ),
        _ if k >= 1 && in_class(f, ClassId::new(Family::EPlus, rank(k))) => (
            witness_sigma(f, k - 1, Polarity::Pos)?.witness,
            e_neg_witness_epi(f, k - 1)?.witness,
        ),
        _ => {
            return Err(Error::NotInClass {
                formula: f.to_string(),
                class: ClassId::new(Family::BPlus, rank(k)),
            })
        }
    })
}

/// Splits `f` in `BPlus_k` into a positive and a negative witness.
pub fn b_decompose(f: &Formula, k: usize) -> Result<BDecomposition> {
    require(f, ClassId::new(Family::BPlus, rank(k)))?;
    let (pos, neg) = decompose(f, k)?;
    Ok(BDecomposition {
        pos,
        neg,
        rank: k,
        forward_over: Principle::SigmaLem(rank(k) - 1),
        backward_over: Principle::Lem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse;

    fn f(src: &str) -> Formula {
        parse(src).unwrap()
    }

    fn check(w: &WitnessResult, src: &Formula) {
        assert!(
            in_class(&w.witness, w.target_class),
            "{} not in {}",
            w.witness,
            w.target_class
        );
        assert_eq!(w.witness.free_vars(), src.free_vars());
    }

    #[test]
    fn epi_conjunction_examples() {
        assert_eq!(
            epi_conjunction(&f("forall x. p"), &f("forall y. q"), 1).unwrap(),
            f("forall x. forall y. (p /\\ q)")
        );
        assert_eq!(
            epi_conjunction(&f("forall x. p"), &f("(forall y. q) \\/ (forall z. r)"), 1).unwrap(),
            f("(forall x. forall y. (p /\\ q)) \\/ (forall x. forall z. (p /\\ r))")
        );
        assert_eq!(epi_conjunction(&f("p"), &f("q"), 0).unwrap(), f("p /\\ q"));
        assert!(epi_conjunction(&f("exists x. p"), &f("q"), 1).is_err());
    }

    #[test]
    fn epi_conjunction_renames_quantified_disjunct() {
        let a = f("forall y. q(x)");
        let b = f("forall x. ((forall y. q(x)) \\/ forall z. r(z))");
        let c = epi_conjunction(&a, &b, 1).unwrap();
        assert!(in_class(&c, ClassId::new(Family::EPi, 1)), "{c}");
        assert_eq!(c.free_vars(), f("q(x)").free_vars());
    }

    #[test]
    fn u_witness_examples() {
        let g = f("forall x. p");
        let w = u_witness_epi(&g, 0).unwrap();
        assert_eq!(w.witness, g);
        assert_eq!(w.forward_over.to_string(), "Sigma_0-LEM");

        let g = f("(exists x. p) -> forall y. q");
        let w = u_witness_epi(&g, 0).unwrap();
        assert_eq!(w.witness, f("(forall x. ~p) \\/ forall y. q"));
        check(&w, &g);

        assert!(u_witness_epi(&f("(forall x. p) -> forall y. q"), 0).is_err());
    }

    #[test]
    fn e_neg_witness_examples() {
        let g = f("exists x. p");
        let w = e_neg_witness_epi(&g, 0).unwrap();
        assert_eq!(w.witness, f("forall x. ~p"));
        check(&w, &g);
    }

    #[test]
    fn rank_drop_uses_prenex_form() {
        let g = f("exists x. forall y. r(x, y)");
        let w = u_witness_epi(&g, 2).unwrap();
        assert_eq!(w.witness, f("forall z1. exists x. forall y. r(x, y)"));
        let g = f("forall x. exists y. r(x, y)");
        let w = e_neg_witness_epi(&g, 2).unwrap();
        assert_eq!(w.witness, f("forall z1. exists x. forall y. ~r(x, y)"));
    }

    #[test]
    fn esigma_examples() {
        let g = f("exists x. forall y. p");
        assert_eq!(e_witness_esigma(&g, 1).unwrap().witness, g);

        let w = u_neg_witness_esigma(&f("forall x. p"), 0).unwrap();
        assert_eq!(w.witness, f("exists x. ~p"));
        assert_eq!(w.forward_over.to_string(), "none");

        let g = f("(forall x. p) -> exists y. q");
        let w = e_witness_esigma(&g, 1).unwrap();
        assert_eq!(w.witness, f("exists x. exists y. forall z1. (~p \\/ q)"));
        check(&w, &g);
    }

    #[test]
    fn esigma_combine_examples() {
        let (c, d) =
            esigma_combine(&f("exists x. forall y. p"), &f("exists z. forall w. q"), 1).unwrap();
        assert_eq!(c, f("exists x. exists z. forall y. forall w. (p /\\ q)"));
        assert_eq!(d, f("exists x. exists z. ((forall y. p) \\/ forall w. q)"));

        let (c, d) = esigma_combine(&f("p"), &f("q"), 0).unwrap();
        assert_eq!((c, d), (f("p /\\ q"), f("p \\/ q")));

        let a = f("exists x. forall y. q(x)");
        let b = f("exists x. forall y. r(x, y)");
        let (c, d) = esigma_combine(&a, &b, 1).unwrap();
        assert_eq!(
            c,
            f("exists x. exists x1. forall y. forall y1. (q(x) /\\ r(x1, y1))")
        );
        assert!(in_class(&d, ClassId::new(Family::ESigma, 2)));
        assert!(c.is_closed() && d.is_closed());
    }

    #[test]
    fn esigma_combine_renames_left_block_free_on_right() {
        let a = f("exists x. forall y. q(x)");
        let b = f("forall y. q(x)");
        let (c, _) = esigma_combine(&a, &b, 1).unwrap();
        assert_eq!(c.free_vars(), b.free_vars());
        assert!(in_class(&c, ClassId::new(Family::ESigma, 2)), "{c}");
    }

    #[test]
    fn witness_sigma_examples() {
        let g = f("exists x. p");
        assert_eq!(witness_sigma(&g, 0, Polarity::Pos).unwrap().witness, g);

        let w = witness_sigma(&f("forall x. exists y. p"), 1, Polarity::Neg).unwrap();
        assert_eq!(w.witness, f("exists x. forall y. ~p"));
        assert_eq!(w.forward_over.to_string(), "Pi_1-or-Pi_1-DNE");

        let g = f("(forall x. p) -> q");
        let w = witness_sigma(&g, 0, Polarity::Pos).unwrap();
        assert_eq!(w.witness, f("exists x. (~p \\/ q)"));
        check(&w, &g);
    }

    #[test]
    fn b_decompose_examples() {
        let d = b_decompose(&f("(forall x. p) -> exists y. q"), 1).unwrap();
        assert_eq!(d.pos, f("(exists x. ~p) \\/ exists y. q"));
        assert_eq!(d.neg, f("(forall x. p) /\\ forall y. ~q"));
        assert_eq!(d.forward_over.to_string(), "Sigma_0-LEM");

        let g = f("forall x. q(x)");
        let d = b_decompose(&g, 1).unwrap();
        assert_eq!(d.pos, g);
        assert_eq!(d.neg, f("exists x. ~q(x)"));

        let d = b_decompose(&f("p /\\ q"), 0).unwrap();
        assert_eq!((d.pos, d.neg), (f("p /\\ q"), f("~(p /\\ q)")));

        assert!(b_decompose(&f("exists x. forall y. p"), 1).is_err());
    }
}
