//! Free variables, substitution and bound-variable freshening.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Formula, Quantifier, Term};

/// A free variable of the substituted formula would be bound at a
/// placeholder occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("variable `{var}` of the substituted formula is captured by `{quantifier} {var}`")]
pub struct CaptureError {
    pub var: String,
    pub quantifier: Quantifier,
}

/// `base` if it is not in `avoid`, otherwise `base` followed by the smallest
/// numeric suffix that is.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    (1u64..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded suffix search")
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut |v| {
            out.insert(v.to_string());
        });
        out
    }

    /// Free variables in order of first occurrence, reading left to right.
    pub fn free_vars_in_order(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut |v| {
            if !out.iter().any(|o| o == v) {
                out.push(v.to_string());
            }
        });
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, v: &str) -> bool {
        match self {
            Formula::Bot | Formula::Placeholder => false,
            Formula::Prime { args, .. } => args.iter().any(|t| t.has_var(v)),
            Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                l.has_free(v) || r.has_free(v)
            }
            Formula::Forall { var, body } | Formula::Exists { var, body } => {
                var != v && body.has_free(v)
            }
        }
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, emit: &mut impl FnMut(&str)) {
        match self {
            Formula::Bot | Formula::Placeholder => {}
            Formula::Prime { args, .. } => {
                let mut names = Vec::new();
                for t in args {
                    t.vars_in_order(&mut names);
                }
                for n in &names {
                    if !bound.contains(&n.as_str()) {
                        emit(n);
                    }
                }
            }
            Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                l.collect_free(bound, emit);
                r.collect_free(bound, emit);
            }
            Formula::Forall { var, body } | Formula::Exists { var, body } => {
                bound.push(var);
                body.collect_free(bound, emit);
                bound.pop();
            }
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `v`.
    /// A binder whose variable occurs in `t` is renamed with a numeric suffix.
    pub fn substitute_term(&self, v: &str, t: &Term) -> Formula {
        let tvars = t.vars();
        self.subst(v, t, &tvars)
    }

    fn subst(&self, v: &str, t: &Term, tvars: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Bot | Formula::Placeholder => self.clone(),
            Formula::Prime { pred, args } => Formula::Prime {
                pred: pred.clone(),
                args: args.iter().map(|a| a.substitute(v, t)).collect(),
            },
            Formula::And { l, r } => Formula::and(l.subst(v, t, tvars), r.subst(v, t, tvars)),
            Formula::Or { l, r } => Formula::or(l.subst(v, t, tvars), r.subst(v, t, tvars)),
            Formula::Implies { l, r } => {
                Formula::implies(l.subst(v, t, tvars), r.subst(v, t, tvars))
            }
            Formula::Forall { var, body } | Formula::Exists { var, body } => {
                let q = self.as_quantified().expect("quantifier").0;
                if var == v || !body.has_free(v) {
                    return self.clone();
                }
                if tvars.contains(var) {
                    let mut avoid = body.all_vars();
                    avoid.extend(tvars.iter().cloned());
                    avoid.insert(v.to_string());
                    let renamed = fresh_name(var, &avoid);
                    let body = body.rename_free(var, &renamed);
                    q.bind(renamed, body.subst(v, t, tvars))
                } else {
                    q.bind(var.clone(), body.subst(v, t, tvars))
                }
            }
        }
    }

    /// Renames the free occurrences of `from` to `to`; `to` must not be bound
    /// anywhere the renamed occurrences sit.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        self.substitute_term(from, &Term::var(to))
    }

    /// Replaces every placeholder node by `psi`. Fails if a free variable of
    /// `psi` is bound at some placeholder occurrence.
    pub fn substitute_placeholder(&self, psi: &Formula) -> Result<Formula, CaptureError> {
        let fv = psi.free_vars();
        let mut bound = Vec::new();
        self.subst_ph(psi, &fv, &mut bound)
    }

    fn subst_ph<'a>(
        &'a self,
        psi: &Formula,
        fv: &BTreeSet<String>,
        bound: &mut Vec<(Quantifier, &'a str)>,
    ) -> Result<Formula, CaptureError> {
        Ok(match self {
            Formula::Placeholder => {
                // innermost binder wins when reporting
                if let Some((q, v)) = bound.iter().rev().find(|(_, v)| fv.contains(*v)) {
                    return Err(CaptureError {
                        var: v.to_string(),
                        quantifier: *q,
                    });
                }
                psi.clone()
            }
            Formula::Bot | Formula::Prime { .. } => self.clone(),
            Formula::And { l, r } => {
                Formula::and(l.subst_ph(psi, fv, bound)?, r.subst_ph(psi, fv, bound)?)
            }
            Formula::Or { l, r } => {
                Formula::or(l.subst_ph(psi, fv, bound)?, r.subst_ph(psi, fv, bound)?)
            }
            Formula::Implies { l, r } => {
                Formula::implies(l.subst_ph(psi, fv, bound)?, r.subst_ph(psi, fv, bound)?)
            }
            Formula::Forall { var, body } | Formula::Exists { var, body } => {
                let q = self.as_quantified().expect("quantifier").0;
                bound.push((q, var));
                let body = body.subst_ph(psi, fv, bound);
                bound.pop();
                q.bind(var.clone(), body?)
            }
        })
    }

    /// Binds every free variable with a leading `forall`, outermost first, in
    /// order of first occurrence.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars_in_order()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, v| Formula::forall(v, acc))
    }

    /// Renames bound variables so that no binder reuses a free variable or the
    /// variable of another binder. Binders that already satisfy this keep
    /// their names.
    pub fn freshen(&self) -> Formula {
        let mut used = self.free_vars();
        let mut avoid = self.all_vars();
        self.freshen_with(&mut used, &mut avoid)
    }

    fn freshen_with(&self, used: &mut BTreeSet<String>, avoid: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => self.clone(),
            Formula::And { l, r } => {
                let l = l.freshen_with(used, avoid);
                Formula::and(l, r.freshen_with(used, avoid))
            }
            Formula::Or { l, r } => {
                let l = l.freshen_with(used, avoid);
                Formula::or(l, r.freshen_with(used, avoid))
            }
            Formula::Implies { l, r } => {
                let l = l.freshen_with(used, avoid);
                Formula::implies(l, r.freshen_with(used, avoid))
            }
            Formula::Forall { var, body } | Formula::Exists { var, body } => {
                let q = self.as_quantified().expect("quantifier").0;
                if used.contains(var) {
                    let name = fresh_name(var, avoid);
                    avoid.insert(name.clone());
                    used.insert(name.clone());
                    let body = body.rename_free(var, &name);
                    q.bind(name, body.freshen_with(used, avoid))
                } else {
                    used.insert(var.clone());
                    q.bind(var.clone(), body.freshen_with(used, avoid))
                }
            }
        }
    }

    /// True when no binder reuses a free variable or another binder's variable.
    pub fn is_fresh(&self) -> bool {
        fn walk(f: &Formula, seen: &mut BTreeSet<String>) -> bool {
            match f {
                Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => true,
                Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                    walk(l, seen) && walk(r, seen)
                }
                Formula::Forall { var, body } | Formula::Exists { var, body } => {
                    seen.insert(var.clone()) && walk(body, seen)
                }
            }
        }
        let mut seen = self.free_vars();
        walk(self, &mut seen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse;

    fn f(src: &str) -> Formula {
        parse(src).unwrap()
    }

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(f("x = y").free_vars(), set(&["x", "y"]));
        assert_eq!(f("forall x. x = y").free_vars(), set(&["y"]));
        // bound and free x are distinct occurrences
        assert_eq!(f("(exists x. p) -> x <= 0").free_vars(), set(&["x"]));
    }

    #[test]
    fn substitution_examples() {
        let one = Term::numeral(1);
        assert_eq!(
            f("x = 0").substitute_term("x", &one),
            Formula::eq(one.clone(), Term::Zero)
        );
        assert_eq!(
            f("forall x. x = y").substitute_term("y", &Term::var("x")),
            Formula::forall("x1", Formula::eq(Term::var("x1"), Term::var("x")))
        );
        let g = f("forall x. p");
        assert_eq!(g.substitute_term("x", &Term::Zero), g);
    }

    #[test]
    fn substitution_renames_only_when_needed() {
        let g = f("forall z. x = z /\\ z = 0");
        assert_eq!(
            g.substitute_term("x", &Term::succ(Term::var("y"))),
            f("forall z. S(y) = z /\\ z = 0")
        );
    }

    #[test]
    fn placeholder_examples() {
        let q = f("q(x)");
        assert_eq!(f("$").substitute_placeholder(&q).unwrap(), q);
        assert_eq!(
            f("(p -> $) -> $").substitute_placeholder(&q).unwrap(),
            f("(p -> q(x)) -> q(x)")
        );
        let err = f("forall x. $ -> p")
            .substitute_placeholder(&q)
            .unwrap_err();
        assert_eq!(err.var, "x");
        assert_eq!(err.quantifier, Quantifier::Forall);
    }

    #[test]
    fn placeholder_under_unrelated_binder_is_fine() {
        let g = f("exists y. $ \\/ y = 0");
        assert_eq!(
            g.substitute_placeholder(&f("q(x)")).unwrap(),
            f("exists y. q(x) \\/ y = 0")
        );
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            f("x = y").universal_closure(),
            f("forall x. forall y. x = y")
        );
        let closed = f("forall x. x = x");
        assert_eq!(closed.universal_closure(), closed);
        assert_eq!(
            f("q(x) \\/ (forall y. r(y))").universal_closure(),
            f("forall x. q(x) \\/ (forall y. r(y))")
        );
    }

    #[test]
    fn freshen_removes_shadowing() {
        let g = f("forall x. (exists x. q(x)) /\\ q(x)");
        let h = g.freshen();
        assert!(h.is_fresh());
        assert_eq!(h, f("forall x. (exists x1. q(x1)) /\\ q(x)"));
        let k = f("q(x) /\\ (forall x. q(x))").freshen();
        assert_eq!(k, f("q(x) /\\ (forall x1. q(x1))"));
    }

    #[test]
    fn fresh_name_suffixes() {
        assert_eq!(fresh_name("z", &set(&["x"])), "z");
        assert_eq!(fresh_name("z", &set(&["z", "z1"])), "z2");
        assert_eq!(fresh_name("x1", &set(&["x1"])), "x2");
    }
}
