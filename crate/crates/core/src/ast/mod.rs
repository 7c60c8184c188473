//! Terms and formulas of first-order arithmetic with a 0-ary placeholder atom.
//!
//! Negation is not a constructor: `~A` is the implication `A -> bot`. The
//! placeholder `$` is treated as a prime formula everywhere.

mod parse;
mod render;
mod vars;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse, parse_with, ParseError, ParseErrorKind};
pub use render::render;
pub use vars::{fresh_name, CaptureError};

/// Name of the built-in equality predicate.
pub const EQ: &str = "eq";
/// Name of the built-in order predicate.
pub const LE: &str = "le";

/// Arithmetic term over the signature `{0, S, +, *}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "k", rename_all = "lowercase")]
pub enum Term {
    Var { name: String },
    Zero,
    Succ { arg: Box<Term> },
    Plus { l: Box<Term>, r: Box<Term> },
    Times { l: Box<Term>, r: Box<Term> },
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var { name: name.into() }
    }

    pub fn zero() -> Self {
        Term::Zero
    }

    pub fn succ(arg: Term) -> Self {
        Term::Succ { arg: Box::new(arg) }
    }

    pub fn plus(l: Term, r: Term) -> Self {
        Term::Plus {
            l: Box::new(l),
            r: Box::new(r),
        }
    }

    pub fn times(l: Term, r: Term) -> Self {
        Term::Times {
            l: Box::new(l),
            r: Box::new(r),
        }
    }

    /// The numeral `S(S(...0))`.
    pub fn numeral(n: u64) -> Self {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var { name } => {
                out.insert(name.clone());
            }
            Term::Zero => {}
            Term::Succ { arg } => arg.collect_vars(out),
            Term::Plus { l, r } | Term::Times { l, r } => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub(crate) fn vars_in_order(&self, out: &mut Vec<String>) {
        match self {
            Term::Var { name } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Term::Zero => {}
            Term::Succ { arg } => arg.vars_in_order(out),
            Term::Plus { l, r } | Term::Times { l, r } => {
                l.vars_in_order(out);
                r.vars_in_order(out);
            }
        }
    }

    pub fn has_var(&self, v: &str) -> bool {
        match self {
            Term::Var { name } => name == v,
            Term::Zero => false,
            Term::Succ { arg } => arg.has_var(v),
            Term::Plus { l, r } | Term::Times { l, r } => l.has_var(v) || r.has_var(v),
        }
    }

    /// Replaces every occurrence of the variable `v` by `t`.
    pub fn substitute(&self, v: &str, t: &Term) -> Term {
        match self {
            Term::Var { name } if name == v => t.clone(),
            Term::Var { .. } | Term::Zero => self.clone(),
            Term::Succ { arg } => Term::succ(arg.substitute(v, t)),
            Term::Plus { l, r } => Term::plus(l.substitute(v, t), r.substitute(v, t)),
            Term::Times { l, r } => Term::times(l.substitute(v, t), r.substitute(v, t)),
        }
    }
}

/// Formula AST. `And`/`Or`/`Implies` are binary; quantifiers bind one variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "k")]
pub enum Formula {
    #[serde(rename = "bot")]
    Bot,
    #[serde(rename = "ph")]
    Placeholder,
    #[serde(rename = "prime")]
    Prime { pred: String, args: Vec<Term> },
    #[serde(rename = "and")]
    And { l: Box<Formula>, r: Box<Formula> },
    #[serde(rename = "or")]
    Or { l: Box<Formula>, r: Box<Formula> },
    #[serde(rename = "imp")]
    Implies { l: Box<Formula>, r: Box<Formula> },
    #[serde(rename = "all")]
    Forall { var: String, body: Box<Formula> },
    #[serde(rename = "ex")]
    Exists { var: String, body: Box<Formula> },
}

/// The two quantifiers, used when a formula is handled as a quantifier prefix
/// over a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn flip(self) -> Self {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }

    pub fn bind(self, var: impl Into<String>, body: Formula) -> Formula {
        match self {
            Quantifier::Forall => Formula::forall(var, body),
            Quantifier::Exists => Formula::exists(var, body),
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        })
    }
}

impl Formula {
    pub fn bot() -> Self {
        Formula::Bot
    }

    pub fn placeholder() -> Self {
        Formula::Placeholder
    }

    pub fn prime(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Prime {
            pred: pred.into(),
            args,
        }
    }

    /// A 0-ary predicate such as `p`.
    pub fn atom(pred: impl Into<String>) -> Self {
        Formula::prime(pred, Vec::new())
    }

    pub fn eq(l: Term, r: Term) -> Self {
        Formula::prime(EQ, vec![l, r])
    }

    pub fn le(l: Term, r: Term) -> Self {
        Formula::prime(LE, vec![l, r])
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And {
            l: Box::new(l),
            r: Box::new(r),
        }
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or {
            l: Box::new(l),
            r: Box::new(r),
        }
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies {
            l: Box::new(l),
            r: Box::new(r),
        }
    }

    /// `~f`, i.e. `f -> bot`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::implies(f, Formula::Bot)
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall {
            var: var.into(),
            body: Box::new(body),
        }
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists {
            var: var.into(),
            body: Box::new(body),
        }
    }

    /// Prime formulas in the structural sense: `bot`, `$` and predicate atoms.
    pub fn is_prime(&self) -> bool {
        matches!(
            self,
            Formula::Bot | Formula::Placeholder | Formula::Prime { .. }
        )
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => true,
            Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                l.is_quantifier_free() && r.is_quantifier_free()
            }
            Formula::Forall { .. } | Formula::Exists { .. } => false,
        }
    }

    pub fn contains_placeholder(&self) -> bool {
        match self {
            Formula::Placeholder => true,
            Formula::Bot | Formula::Prime { .. } => false,
            Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                l.contains_placeholder() || r.contains_placeholder()
            }
            Formula::Forall { body, .. } | Formula::Exists { body, .. } => {
                body.contains_placeholder()
            }
        }
    }

    /// Number of AST nodes; prime formulas count as one node regardless of
    /// their argument terms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => 1,
            Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                1 + l.size() + r.size()
            }
            Formula::Forall { body, .. } | Formula::Exists { body, .. } => 1 + body.size(),
        }
    }

    /// If the formula is `A -> bot`, returns `A`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies { l, r } if **r == Formula::Bot => Some(l),
            _ => None,
        }
    }

    /// Top-level quantifier and its body, if any.
    pub fn as_quantified(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall { var, body } => Some((Quantifier::Forall, var, body)),
            Formula::Exists { var, body } => Some((Quantifier::Exists, var, body)),
            _ => None,
        }
    }

    /// Splits off the maximal leading quantifier prefix.
    pub fn split_prefix(&self) -> (Vec<(Quantifier, &str)>, &Formula) {
        let mut prefix = Vec::new();
        let mut cur = self;
        while let Some((q, v, body)) = cur.as_quantified() {
            prefix.push((q, v));
            cur = body;
        }
        (prefix, cur)
    }

    /// A quantifier prefix over a quantifier-free matrix.
    pub fn is_prenex(&self) -> bool {
        self.split_prefix().1.is_quantifier_free()
    }

    /// Every variable name occurring in the formula, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bot | Formula::Placeholder => {}
            Formula::Prime { args, .. } => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                l.collect_all_vars(out);
                r.collect_all_vars(out);
            }
            Formula::Forall { var, body } | Formula::Exists { var, body } => {
                out.insert(var.clone());
                body.collect_all_vars(out);
            }
        }
    }

    /// Predicate symbols with their arities, `$` and `bot` excluded.
    pub fn predicates(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.visit_primes(&mut |p| {
            if let Formula::Prime { pred, args } = p {
                out.insert((pred.clone(), args.len()));
            }
        });
        out
    }

    pub(crate) fn visit_primes<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        match self {
            Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => f(self),
            Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
                l.visit_primes(f);
                r.visit_primes(f);
            }
            Formula::Forall { body, .. } | Formula::Exists { body, .. } => body.visit_primes(f),
        }
    }

    /// Rebuilds the formula bottom-up, replacing every prime node by `f(prime)`.
    pub fn map_primes(&self, f: &mut impl FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => f(self),
            Formula::And { l, r } => Formula::and(l.map_primes(f), r.map_primes(f)),
            Formula::Or { l, r } => Formula::or(l.map_primes(f), r.map_primes(f)),
            Formula::Implies { l, r } => Formula::implies(l.map_primes(f), r.map_primes(f)),
            Formula::Forall { var, body } => Formula::forall(var.clone(), body.map_primes(f)),
            Formula::Exists { var, body } => Formula::exists(var.clone(), body.map_primes(f)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_term(self))
    }
}

/// The predicate symbols a parser accepts.
///
/// A closed signature lists every `(name, arity)` pair explicitly; an open
/// signature accepts any predicate as long as each name is used with a single
/// arity within one formula. `eq/2` and `le/2` are always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeSet<(String, usize)>,
    open: bool,
}

impl Signature {
    pub fn new() -> Self {
        let mut predicates = BTreeSet::new();
        predicates.insert((EQ.to_string(), 2));
        predicates.insert((LE.to_string(), 2));
        Signature {
            predicates,
            open: false,
        }
    }

    pub fn open() -> Self {
        Signature {
            open: true,
            ..Signature::new()
        }
    }

    pub fn with(mut self, name: impl Into<String>, arity: usize) -> Self {
        self.declare(name, arity);
        self
    }

    pub fn declare(&mut self, name: impl Into<String>, arity: usize) {
        self.predicates.insert((name.into(), arity));
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn contains(&self, name: &str, arity: usize) -> bool {
        self.predicates.contains(&(name.to_string(), arity))
    }

    /// Arities declared for `name`.
    pub fn arities(&self, name: &str) -> Vec<usize> {
        self.predicates
            .iter()
            .filter(|(n, _)| n == name)
            .map(|(_, a)| *a)
            .collect()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(n, a)| (n.as_str(), *a))
    }

    /// Reads a signature file: one `name/arity` per line, `#` starts a comment.
    pub fn from_decls(src: &str) -> Result<Self, String> {
        let mut sig = Signature::new();
        for (lineno, line) in src.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, arity) = line
                .split_once('/')
                .ok_or_else(|| format!("line {}: expected name/arity", lineno + 1))?;
            let arity: usize = arity
                .trim()
                .parse()
                .map_err(|_| format!("line {}: bad arity {:?}", lineno + 1, arity.trim()))?;
            let name = name.trim();
            if !parse::is_identifier(name) {
                return Err(format!(
                    "line {}: bad predicate name {:?}",
                    lineno + 1,
                    name
                ));
            }
            sig.declare(name, arity);
        }
        Ok(sig)
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new()
    }
}
