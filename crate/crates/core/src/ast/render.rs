use super::{Formula, Term, EQ, LE};

// Binding levels: 0 = anywhere, 1 = disjunct, 2 = conjunct, 3 = operand of `~`.
const TOP: u8 = 0;
const DISJ: u8 = 1;
const CONJ: u8 = 2;
const NEG: u8 = 3;

/// Prints a formula in the concrete syntax accepted by [`super::parse`].
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, TOP, &mut out);
    out
}

pub(crate) fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, 0, &mut out);
    out
}

fn paren(needed: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if needed {
        out.push('(');
    }
    body(out);
    if needed {
        out.push(')');
    }
}

fn write_formula(f: &Formula, level: u8, out: &mut String) {
    if let Some(inner) = f.as_negation() {
        out.push('~');
        write_formula(inner, NEG, out);
        return;
    }
    match f {
        Formula::Bot => out.push_str("bot"),
        Formula::Placeholder => out.push('$'),
        Formula::Prime { pred, args } => write_prime(pred, args, out),
        Formula::And { l, r } => paren(level > CONJ, out, |out| {
            write_formula(l, CONJ, out);
            out.push_str(" /\\ ");
            write_formula(r, NEG, out);
        }),
        Formula::Or { l, r } => paren(level > DISJ, out, |out| {
            write_formula(l, DISJ, out);
            out.push_str(" \\/ ");
            write_formula(r, CONJ, out);
        }),
        Formula::Implies { l, r } => paren(level > TOP, out, |out| {
            write_formula(l, DISJ, out);
            out.push_str(" -> ");
            write_formula(r, TOP, out);
        }),
        Formula::Forall { .. } | Formula::Exists { .. } => paren(level > TOP, out, |out| {
            let (q, var, body) = f.as_quantified().expect("quantifier node");
            out.push_str(&format!("{q} {var}. "));
            // implication bodies are bracketed for readability
            let bracket = matches!(body, Formula::Implies { .. }) && body.as_negation().is_none();
            paren(bracket, out, |out| write_formula(body, TOP, out));
        }),
    }
}

fn write_prime(pred: &str, args: &[Term], out: &mut String) {
    if (pred == EQ || pred == LE) && args.len() == 2 {
        write_term(&args[0], 0, out);
        out.push_str(if pred == EQ { " = " } else { " <= " });
        write_term(&args[1], 0, out);
        return;
    }
    out.push_str(pred);
    if !args.is_empty() {
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write_term(a, 0, out);
        }
        out.push(')');
    }
}

// Term levels: 0 = summand, 1 = factor, 2 = atomic.
fn write_term(t: &Term, level: u8, out: &mut String) {
    match t {
        Term::Var { name } => out.push_str(name),
        Term::Zero => out.push('0'),
        Term::Succ { arg } => {
            out.push_str("S(");
            write_term(arg, 0, out);
            out.push(')');
        }
        Term::Plus { l, r } => paren(level > 0, out, |out| {
            write_term(l, 0, out);
            out.push_str(" + ");
            write_term(r, 1, out);
        }),
        Term::Times { l, r } => paren(level > 1, out, |out| {
            write_term(l, 1, out);
            out.push_str(" * ");
            write_term(r, 2, out);
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse;

    #[test]
    fn negation_and_placeholder() {
        assert_eq!(render(&Formula::not(Formula::atom("p"))), "~p");
        let f = Formula::forall("x", Formula::or(Formula::atom("p"), Formula::Placeholder));
        assert_eq!(render(&f), "forall x. p \\/ $");
    }

    #[test]
    fn implication_is_right_associative() {
        let (p, q, r) = (Formula::atom("p"), Formula::atom("q"), Formula::atom("r"));
        let right = Formula::implies(p.clone(), Formula::implies(q.clone(), r.clone()));
        let left = Formula::implies(Formula::implies(p, q), r);
        assert_eq!(render(&right), "p -> q -> r");
        assert_eq!(render(&left), "(p -> q) -> r");
    }

    #[test]
    fn quantified_operands_are_parenthesized() {
        let f = parse("(exists x. p) \\/ q").unwrap();
        assert_eq!(render(&f), "(exists x. p) \\/ q");
        let g = parse("~(forall x. q(x)) /\\ p").unwrap();
        assert_eq!(render(&g), "~(forall x. q(x)) /\\ p");
        assert_eq!(parse(&render(&g)).unwrap(), g);
    }

    #[test]
    fn dollar_example_text() {
        let src = "((exists x. ((p -> $) -> $)) -> $) -> $";
        assert_eq!(render(&parse(src).unwrap()), src);
    }

    #[test]
    fn terms_round_trip() {
        for src in [
            "S(x) + y * 0 = (x + y) * S(S(0))",
            "x * (y * z) <= x * y * z",
            "x + (y + z) = x + y + z",
        ] {
            let f = parse(src).unwrap();
            assert_eq!(render(&f), src);
        }
    }
}
