//! Formula translations and scheme instances.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ast::Formula;
use crate::error::{Error, Result};

fn neg_dollar(f: Formula) -> Formula {
    Formula::implies(f, Formula::Placeholder)
}

fn double_neg_dollar(f: Formula) -> Formula {
    neg_dollar(neg_dollar(f))
}

fn placeholder_free(f: &Formula) -> Result<()> {
    if f.contains_placeholder() {
        Err(Error::PlaceholderPresent)
    } else {
        Ok(())
    }
}

/// The `$`-translation.
pub fn dollar_translate(f: &Formula) -> Result<Formula> {
    placeholder_free(f)?;
    Ok(dollar(f))
}

fn dollar(f: &Formula) -> Formula {
    match f {
        Formula::Bot => Formula::Placeholder,
        Formula::Placeholder | Formula::Prime { .. } => double_neg_dollar(f.clone()),
        Formula::And { l, r } => Formula::and(dollar(l), dollar(r)),
        Formula::Implies { l, r } => Formula::implies(dollar(l), dollar(r)),
        Formula::Or { l, r } => double_neg_dollar(Formula::or(dollar(l), dollar(r))),
        Formula::Forall { var, body } => Formula::forall(var.clone(), dollar(body)),
        Formula::Exists { var, body } => {
            double_neg_dollar(Formula::exists(var.clone(), dollar(body)))
        }
    }
}

/// The A-translation with `$` as the disjoined formula: every prime `P`,
/// `bot` included, becomes `P \/ $`.
pub fn a_translate(f: &Formula) -> Result<Formula> {
    placeholder_free(f)?;
    Ok(f.map_primes(&mut |p| Formula::or(p.clone(), Formula::Placeholder)))
}

/// Rewrites `X \/ bot` and `bot \/ X` to `X`, top-down: a node is matched
/// before its children are simplified.
pub fn simplify_or_bot(f: &Formula) -> Formula {
    match f {
        Formula::Or { l, r } if **r == Formula::Bot => simplify_or_bot(l),
        Formula::Or { l, r } if **l == Formula::Bot => simplify_or_bot(r),
        Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => f.clone(),
        Formula::Or { l, r } => Formula::or(simplify_or_bot(l), simplify_or_bot(r)),
        Formula::And { l, r } => Formula::and(simplify_or_bot(l), simplify_or_bot(r)),
        Formula::Implies { l, r } => Formula::implies(simplify_or_bot(l), simplify_or_bot(r)),
        Formula::Forall { var, body } => Formula::forall(var.clone(), simplify_or_bot(body)),
        Formula::Exists { var, body } => Formula::exists(var.clone(), simplify_or_bot(body)),
    }
}

/// Kuroda's negative translation: `~~` in front of the whole formula and
/// directly inside every universal quantifier.
pub fn kuroda_translate(f: &Formula) -> Formula {
    fn inner(f: &Formula) -> Formula {
        match f {
            Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => f.clone(),
            Formula::And { l, r } => Formula::and(inner(l), inner(r)),
            Formula::Or { l, r } => Formula::or(inner(l), inner(r)),
            Formula::Implies { l, r } => Formula::implies(inner(l), inner(r)),
            Formula::Forall { var, body } => {
                Formula::forall(var.clone(), Formula::not(Formula::not(inner(body))))
            }
            Formula::Exists { var, body } => Formula::exists(var.clone(), inner(body)),
        }
    }
    Formula::not(Formula::not(inner(f)))
}

/// Dual of a prenex formula: quantifiers flipped, matrix negated.
pub fn dual(f: &Formula) -> Result<Formula> {
    if !f.is_prenex() {
        return Err(Error::NotPrenex(f.to_string()));
    }
    let (prefix, matrix) = f.split_prefix();
    Ok(prefix
        .iter()
        .rev()
        .fold(Formula::not(matrix.clone()), |acc, (q, v)| {
            q.flip().bind(v.to_string(), acc)
        }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeId {
    Lem,
    Dne,
    Dns,
    Cd,
    Dml,
    DmlDual,
    Dnec,
    Dnsc,
    DnerInstance,
}

impl SchemeId {
    pub const ALL: [SchemeId; 9] = [
        SchemeId::Lem,
        SchemeId::Dne,
        SchemeId::Dns,
        SchemeId::Cd,
        SchemeId::Dml,
        SchemeId::DmlDual,
        SchemeId::Dnec,
        SchemeId::Dnsc,
        SchemeId::DnerInstance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Lem => "LEM",
            SchemeId::Dne => "DNE",
            SchemeId::Dns => "DNS",
            SchemeId::Cd => "CD",
            SchemeId::Dml => "DML",
            SchemeId::DmlDual => "DMLDUAL",
            SchemeId::Dnec => "DNEC",
            SchemeId::Dnsc => "DNSC",
            SchemeId::DnerInstance => "DNER",
        }
    }

    pub fn from_name(s: &str) -> Option<SchemeId> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
    }

    /// Payload shape: `(formulas, needs variable)`.
    pub fn arity(self) -> (usize, bool) {
        match self {
            SchemeId::Lem | SchemeId::Dne | SchemeId::Dnec | SchemeId::Dnsc => (1, false),
            SchemeId::DnerInstance => (1, false),
            SchemeId::Dns => (1, true),
            SchemeId::Cd => (2, true),
            SchemeId::Dml | SchemeId::DmlDual => (2, false),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SchemeInstance {
    Axiom {
        formula: Formula,
    },
    Rule {
        premise: Formula,
        conclusion: Formula,
    },
}

impl fmt::Display for SchemeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeInstance::Axiom { formula } => write!(f, "{formula}"),
            SchemeInstance::Rule {
                premise,
                conclusion,
            } => write!(f, "{premise}  ==>  {conclusion}"),
        }
    }
}

/// Instantiates scheme `id` with formulas `phis` and, where the scheme binds
/// one, the variable `var`.
pub fn scheme_instance(
    id: SchemeId,
    phis: &[Formula],
    var: Option<&str>,
) -> Result<SchemeInstance> {
    let (n, needs_var) = id.arity();
    if phis.len() != n || needs_var != var.is_some() {
        return Err(Error::SideCondition(format!(
            "{id} takes {n} formula(s){}",
            if needs_var {
                " and a variable"
            } else {
                " and no variable"
            }
        )));
    }
    let not = Formula::not;
    let phi = phis[0].clone();
    let axiom = |formula| Ok(SchemeInstance::Axiom { formula });
    match id {
        SchemeId::Lem => axiom(Formula::or(phi.clone(), not(phi))),
        SchemeId::Dne => axiom(Formula::implies(not(not(phi.clone())), phi)),
        SchemeId::Dns => {
            let x = var.expect("arity checked");
            axiom(Formula::implies(
                Formula::forall(x, not(not(phi.clone()))),
                not(not(Formula::forall(x, phi))),
            ))
        }
        SchemeId::Cd => {
            let x = var.expect("arity checked");
            if phi.has_free(x) {
                return Err(Error::SideCondition(format!(
                    "CD requires {x} not free in {phi}"
                )));
            }
            let psi = phis[1].clone();
            axiom(Formula::implies(
                Formula::forall(x, Formula::or(phi.clone(), psi.clone())),
                Formula::or(phi, Formula::forall(x, psi)),
            ))
        }
        SchemeId::Dml => {
            let psi = phis[1].clone();
            axiom(Formula::implies(
                not(Formula::and(phi.clone(), psi.clone())),
                Formula::or(not(phi), not(psi)),
            ))
        }
        SchemeId::DmlDual => {
            let psi = phis[1].clone();
            let (dp, dq) = (dual(&phi)?, dual(&psi)?);
            axiom(Formula::implies(
                not(Formula::and(phi, psi)),
                Formula::or(dp, dq),
            ))
        }
        SchemeId::Dnec => axiom(Formula::implies(
            not(not(phi.clone())).universal_closure(),
            phi.universal_closure(),
        )),
        SchemeId::Dnsc => axiom(Formula::implies(
            not(not(phi.clone())).universal_closure(),
            not(not(phi.universal_closure())),
        )),
        SchemeId::DnerInstance => Ok(SchemeInstance::Rule {
            premise: not(not(phi.clone())),
            conclusion: phi,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse;

    fn f(src: &str) -> Formula {
        parse(src).unwrap()
    }

    #[test]
    fn dollar_examples() {
        assert_eq!(dollar_translate(&f("p")).unwrap(), f("(p -> $) -> $"));
        assert_eq!(dollar_translate(&f("bot")).unwrap(), f("$"));
        assert_eq!(
            dollar_translate(&f("exists x. p")).unwrap(),
            f("((exists x. ((p -> $) -> $)) -> $) -> $")
        );
        assert_eq!(
            dollar_translate(&f("p \\/ bot")).unwrap(),
            f("(((p -> $) -> $) \\/ $ -> $) -> $")
        );
        assert_eq!(dollar_translate(&f("$")), Err(Error::PlaceholderPresent));
    }

    #[test]
    fn a_translation_examples() {
        assert_eq!(a_translate(&f("bot")).unwrap(), f("bot \\/ $"));
        assert_eq!(
            a_translate(&f("forall x. (p -> bot)")).unwrap(),
            f("forall x. ((p \\/ $) -> (bot \\/ $))")
        );
        assert!(a_translate(&f("p -> $")).is_err());
    }

    #[test]
    fn collapse_is_top_down() {
        let g = f("(p \\/ bot) /\\ (bot \\/ bot)");
        let a = a_translate(&g).unwrap();
        let back = a.substitute_placeholder(&Formula::Bot).unwrap();
        assert_eq!(simplify_or_bot(&back), g);
        assert_eq!(simplify_or_bot(&f("bot \\/ q(x)")), f("q(x)"));
    }

    #[test]
    fn kuroda_examples() {
        assert_eq!(kuroda_translate(&f("forall x. p")), f("~~forall x. ~~p"));
        assert_eq!(kuroda_translate(&f("p")), f("~~p"));
        assert_eq!(kuroda_translate(&f("exists x. p")), f("~~exists x. p"));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(
            dual(&f("forall x. exists y. p")).unwrap(),
            f("exists x. forall y. ~p")
        );
        assert_eq!(dual(&f("p")).unwrap(), f("~p"));
        assert_eq!(
            dual(&dual(&f("exists x. p")).unwrap()).unwrap(),
            f("exists x. ~~p")
        );
        assert!(matches!(
            dual(&f("(exists x. p) \\/ q")),
            Err(Error::NotPrenex(_))
        ));
    }

    #[test]
    fn scheme_examples() {
        let lem = scheme_instance(SchemeId::Lem, &[f("exists x. p")], None).unwrap();
        assert_eq!(
            lem,
            SchemeInstance::Axiom {
                formula: f("(exists x. p) \\/ ~(exists x. p)")
            }
        );
        let cd = scheme_instance(SchemeId::Cd, &[f("exists y. p"), f("q(x)")], Some("x")).unwrap();
        assert_eq!(
            cd,
            SchemeInstance::Axiom {
                formula: f(
                    "(forall x. (exists y. p) \\/ q(x)) -> (exists y. p) \\/ forall x. q(x)"
                )
            }
        );
        let dnec = scheme_instance(SchemeId::Dnec, &[f("x = 0")], None).unwrap();
        assert_eq!(
            dnec,
            SchemeInstance::Axiom {
                formula: f("(forall x. ~~(x = 0)) -> forall x. x = 0")
            }
        );
    }

    #[test]
    fn scheme_side_conditions() {
        let err = scheme_instance(SchemeId::Cd, &[f("q(x)"), f("p")], Some("x")).unwrap_err();
        assert!(matches!(err, Error::SideCondition(_)));
        assert!(scheme_instance(SchemeId::Lem, &[], None).is_err());
        assert!(scheme_instance(SchemeId::Dns, &[f("p")], None).is_err());
        assert!(
            scheme_instance(SchemeId::DmlDual, &[f("(forall x. p) \\/ q"), f("p")], None).is_err()
        );
        let dner = scheme_instance(SchemeId::DnerInstance, &[f("p")], None).unwrap();
        assert_eq!(
            dner,
            SchemeInstance::Rule {
                premise: f("~~p"),
                conclusion: f("p")
            }
        );
    }
}
