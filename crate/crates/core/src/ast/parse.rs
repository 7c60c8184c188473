//! Recursive-descent parser for the textual formula syntax.
//!
//! ```text
//! formula := quant | impl
//! impl    := disj ("->" impl)?
//! disj    := conj ("\/" conj)*
//! conj    := neg ("/\" neg)*
//! neg     := "~" neg | quant | atom
//! atom    := "bot" | "$" | ident "(" term ("," term)* ")" | ident
//!          | term ("=" | "<=") term | "(" formula ")"
//! quant   := ("forall" | "exists") ident+ "." formula
//! term    := ident | "0" | "S" term | term "+" term | term "*" term | "(" term ")"
//! ```
//!
//! A quantifier in operand position extends as far to the right as possible.
//! A bare identifier in formula position is a 0-ary predicate.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{Formula, Signature, Term, EQ, LE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownPredicate(String),
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownPredicate(name) => write!(f, "unknown predicate `{name}`"),
            ParseErrorKind::ArityMismatch {
                name,
                expected,
                found,
            } => write!(
                f,
                "predicate `{name}` expects {expected} argument(s), found {found}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    Or,
    And,
    Tilde,
    Eq,
    Le,
    Plus,
    Star,
    Dollar,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Zero => f.write_str("`0`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Or => f.write_str("`\\/`"),
            Tok::And => f.write_str("`/\\`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Dollar => f.write_str("`$`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: [&str; 4] = ["forall", "exists", "bot", "S"];

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') && !KEYWORDS.contains(&s)
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            '~' => (Tok::Tilde, 1),
            '=' => (Tok::Eq, 1),
            '+' => (Tok::Plus, 1),
            '*' => (Tok::Star, 1),
            '$' => (Tok::Dollar, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '\\' if chars.get(i + 1) == Some(&'/') => (Tok::Or, 2),
            '/' if chars.get(i + 1) == Some(&'\\') => (Tok::And, 2),
            '<' if chars.get(i + 1) == Some(&'=') => (Tok::Le, 2),
            '0' if !chars.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric()) => (Tok::Zero, 1),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                (Tok::Ident(word), j - i)
            }
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("unexpected character {other:?}")),
                    line,
                    col,
                })
            }
        };
        out.push((tok, line, col));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    sig: &'s Signature,
    seen: BTreeMap<String, usize>,
    depth: usize,
}

/// Maximum syntactic nesting accepted by the parser.
pub const MAX_NESTING: usize = 512;
/// Maximum nesting of quantifiers accepted by the parser.
pub const MAX_QUANTIFIER_NESTING: usize = 128;

type PResult<T> = Result<T, ParseError>;

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, n: usize) -> &Tok {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let (_, line, col) = self.toks[self.pos];
        ParseError { kind, line, col }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax(format!(
            "expected {wanted}, found {}",
            self.peek()
        )))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn is_quant_kw(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "forall" || s == "exists")
    }

    fn formula(&mut self) -> PResult<Formula> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error_here(ParseErrorKind::Syntax(format!(
                "nesting deeper than {MAX_NESTING}"
            ))));
        }
        let out = if self.is_quant_kw() {
            self.quant()
        } else {
            self.implication()
        };
        self.depth -= 1;
        out
    }

    fn quant(&mut self) -> PResult<Formula> {
        let forall = matches!(self.bump(), Tok::Ident(s) if s == "forall");
        let mut vars = Vec::new();
        while let Tok::Ident(name) = self.peek() {
            if !is_identifier(name) {
                return Err(self.unexpected("a variable name"));
            }
            vars.push(name.clone());
            self.bump();
        }
        if vars.is_empty() {
            return Err(self.unexpected("a variable name"));
        }
        self.expect(Tok::Dot, "`.`")?;
        let body = self.formula()?;
        Ok(vars.into_iter().rev().fold(body, |acc, v| {
            if forall {
                Formula::forall(v, acc)
            } else {
                Formula::exists(v, acc)
            }
        }))
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.negation()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.negation()?);
        }
        Ok(acc)
    }

    fn negation(&mut self) -> PResult<Formula> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            Ok(Formula::not(self.formula_at_neg()?))
        } else if self.is_quant_kw() {
            self.quant()
        } else {
            self.atom()
        }
    }

    fn formula_at_neg(&mut self) -> PResult<Formula> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error_here(ParseErrorKind::Syntax(format!(
                "nesting deeper than {MAX_NESTING}"
            ))));
        }
        let out = self.negation();
        self.depth -= 1;
        out
    }

    fn atom(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Dollar => {
                self.bump();
                Ok(Formula::Placeholder)
            }
            Tok::Ident(s) if s != "S" && *self.peek_at(1) == Tok::LParen => {
                if !is_identifier(&s) {
                    return Err(self.unexpected("a formula"));
                }
                let start = self.pos;
                self.bump();
                self.bump();
                let mut args = vec![self.term()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                self.check_predicate(&s, args.len(), start)?;
                Ok(Formula::prime(s, args))
            }
            Tok::LParen => {
                let save = self.pos;
                if let Some(cmp) = self.try_comparison()? {
                    return Ok(cmp);
                }
                self.pos = save;
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(s) => {
                let save = self.pos;
                if let Some(cmp) = self.try_comparison()? {
                    return Ok(cmp);
                }
                self.pos = save;
                if s == "S" || !is_identifier(&s) {
                    return Err(self.unexpected("a formula"));
                }
                self.bump();
                self.check_predicate(&s, 0, save)?;
                Ok(Formula::atom(s))
            }
            Tok::Zero => match self.try_comparison()? {
                Some(cmp) => Ok(cmp),
                None => Err(self.unexpected("`=` or `<=`")),
            },
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// Attempts `term (= | <=) term`. Returns `None` (position unspecified)
    /// when the input does not start with a term followed by a comparison.
    fn try_comparison(&mut self) -> PResult<Option<Formula>> {
        let lhs = match self.term() {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        let pred = match self.peek() {
            Tok::Eq => EQ,
            Tok::Le => LE,
            _ => return Ok(None),
        };
        self.bump();
        let rhs = self.term()?;
        Ok(Some(Formula::prime(pred, vec![lhs, rhs])))
    }

    fn check_predicate(&mut self, name: &str, arity: usize, at: usize) -> PResult<()> {
        let (_, line, col) = self.toks[at];
        let err = |kind| ParseError { kind, line, col };
        if self.sig.contains(name, arity) {
            return Ok(());
        }
        if self.sig.is_open() && name != EQ && name != LE {
            return match self.seen.get(name) {
                Some(&expected) if expected != arity => Err(err(ParseErrorKind::ArityMismatch {
                    name: name.to_string(),
                    expected,
                    found: arity,
                })),
                _ => {
                    self.seen.insert(name.to_string(), arity);
                    Ok(())
                }
            };
        }
        match self.sig.arities(name).first() {
            Some(&expected) => Err(err(ParseErrorKind::ArityMismatch {
                name: name.to_string(),
                expected,
                found: arity,
            })),
            None => Err(err(ParseErrorKind::UnknownPredicate(name.to_string()))),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = Term::plus(acc, self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut acc = self.unary_term()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Term::times(acc, self.unary_term()?);
        }
        Ok(acc)
    }

    fn unary_term(&mut self) -> PResult<Term> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error_here(ParseErrorKind::Syntax(format!(
                "nesting deeper than {MAX_NESTING}"
            ))));
        }
        let out = self.unary_term_inner();
        self.depth -= 1;
        out
    }

    fn unary_term_inner(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::Ident(s) if s == "S" => {
                self.bump();
                Ok(Term::succ(self.unary_term()?))
            }
            Tok::Ident(s) if is_identifier(&s) => {
                self.bump();
                Ok(Term::var(s))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses against an open signature.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    parse_with(src, &Signature::open())
}

pub fn parse_with(src: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        sig,
        seen: BTreeMap::new(),
        depth: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    if quantifier_nesting(&f) > MAX_QUANTIFIER_NESTING {
        return Err(ParseError {
            kind: ParseErrorKind::Syntax(format!(
                "quantifier nesting deeper than {MAX_QUANTIFIER_NESTING}"
            )),
            line: 1,
            col: 1,
        });
    }
    Ok(f)
}

fn quantifier_nesting(f: &Formula) -> usize {
    match f {
        Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => 0,
        Formula::And { l, r } | Formula::Or { l, r } | Formula::Implies { l, r } => {
            quantifier_nesting(l).max(quantifier_nesting(r))
        }
        Formula::Forall { body, .. } | Formula::Exists { body, .. } => 1 + quantifier_nesting(body),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("exists x. x = 0").unwrap(),
            Formula::exists("x", Formula::eq(Term::var("x"), Term::Zero))
        );
        assert_eq!(
            parse("~p").unwrap(),
            Formula::implies(Formula::atom("p"), Formula::Bot)
        );
        // hand-built tree: the quantifier scopes over the whole implication
        assert_eq!(
            parse("forall x. $ -> p").unwrap(),
            Formula::forall(
                "x",
                Formula::implies(Formula::Placeholder, Formula::atom("p"))
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let p = || Formula::atom("p");
        let q = || Formula::atom("q");
        let r = || Formula::atom("r");
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(p(), Formula::implies(q(), r()))
        );
        assert_eq!(
            parse("p \\/ q /\\ r").unwrap(),
            Formula::or(p(), Formula::and(q(), r()))
        );
        assert_eq!(
            parse("p /\\ q \\/ r -> p").unwrap(),
            Formula::implies(Formula::or(Formula::and(p(), q()), r()), p())
        );
        assert_eq!(
            parse("~~p /\\ q").unwrap(),
            Formula::and(Formula::not(Formula::not(p())), q())
        );
        assert_eq!(
            parse("p \\/ exists y. q \\/ r").unwrap(),
            Formula::or(p(), Formula::exists("y", Formula::or(q(), r())))
        );
    }

    #[test]
    fn multi_variable_binders() {
        assert_eq!(
            parse("forall x y. x = y").unwrap(),
            parse("forall x. forall y. x = y").unwrap()
        );
    }

    #[test]
    fn terms() {
        let f = parse("S x + y * 0 = (x + y) * S(S(0))").unwrap();
        let lhs = Term::plus(
            Term::succ(Term::var("x")),
            Term::times(Term::var("y"), Term::Zero),
        );
        let rhs = Term::times(Term::plus(Term::var("x"), Term::var("y")), Term::numeral(2));
        assert_eq!(f, Formula::eq(lhs, rhs));
        assert_eq!(
            parse("(x) <= 0").unwrap(),
            Formula::le(Term::var("x"), Term::Zero)
        );
        assert_eq!(
            parse("((x = 0))").unwrap(),
            Formula::eq(Term::var("x"), Term::Zero)
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("p /\\\n  -> q").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert!(parse("forall . p").is_err());
        assert!(parse("p q").is_err());
        assert!(parse("x + = 0").is_err());
        assert!(parse("(p").is_err());
    }

    #[test]
    fn signature_checks() {
        let sig = Signature::new().with("q", 1);
        assert!(parse_with("q(x) /\\ x = 0", &sig).is_ok());
        let err = parse_with("r(x)", &sig).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownPredicate("r".into()));
        let err = parse_with("q(x, y)", &sig).unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::ArityMismatch {
                name: "q".into(),
                expected: 1,
                found: 2
            }
        );
        let err = parse("q(x) /\\ q").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::ArityMismatch { .. }));
        assert!(parse("eq(x, y, z)").is_err());
    }

    #[test]
    fn nesting_limits() {
        let deep = format!("{}p", "~".repeat(MAX_NESTING + 5));
        assert!(parse(&deep).is_err());
        let deep = format!("{}0 = 0", "S ".repeat(MAX_NESTING + 5));
        assert!(parse(&deep).is_err());
        let many = format!("{}p", "forall x. exists y. ".repeat(65));
        assert!(parse(&many).is_err());
        let ok = format!("{}p", "forall x. exists y. ".repeat(64));
        assert!(parse(&ok).is_ok());
    }
}
