//! Boolean formulas and their text syntax.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! impl  := or ( "->" impl )?          right-associative
//! or    := and ( "|" and )*
//! and   := unary ( "&" unary )*
//! unary := "!" unary | atom
//! atom  := "true" | "false" | ident | "(" impl ")"
//! ident := [A-Za-z_][A-Za-z0-9_]*
//! ```

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula<A> {
    Const(bool),
    Atom(A),
    Not(Box<Formula<A>>),
    And(Box<Formula<A>>, Box<Formula<A>>),
    Or(Box<Formula<A>>, Box<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
}

impl<A> Formula<A> {
    pub fn atom(a: A) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Self) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Self, b: Self) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Self>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Const(false))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Self>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Const(true))
    }

    pub fn eval(&self, val: &impl Fn(&A) -> bool) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Atom(a) => val(a),
            Formula::Not(f) => !f.eval(val),
            Formula::And(a, b) => a.eval(val) && b.eval(val),
            Formula::Or(a, b) => a.eval(val) || b.eval(val),
            Formula::Implies(a, b) => !a.eval(val) || b.eval(val),
        }
    }

    pub fn try_map<B, E>(&self, f: &mut impl FnMut(&A) -> Result<B, E>) -> Result<Formula<B>, E> {
        Ok(match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Atom(a) => Formula::Atom(f(a)?),
            Formula::Not(x) => Formula::not(x.try_map(f)?),
            Formula::And(a, b) => Formula::and(a.try_map(f)?, b.try_map(f)?),
            Formula::Or(a, b) => Formula::or(a.try_map(f)?, b.try_map(f)?),
            Formula::Implies(a, b) => Formula::implies(a.try_map(f)?, b.try_map(f)?),
        })
    }

    pub fn map<B>(&self, f: &mut impl FnMut(&A) -> B) -> Formula<B> {
        let r: Result<_, std::convert::Infallible> = self.try_map(&mut |a| Ok(f(a)));
        match r {
            Ok(x) => x,
            Err(e) => match e {},
        }
    }

    /// Atoms in order of first occurrence, left to right.
    pub fn atoms(&self) -> Vec<&A>
    where
        A: PartialEq,
    {
        let mut out: Vec<&A> = Vec::new();
        self.visit_atoms(&mut |a| {
            if !out.contains(&a) {
                out.push(a);
            }
        });
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Formula::Const(_) => {}
            Formula::Atom(a) => f(a),
            Formula::Not(x) => x.visit_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Atom(_) => 1,
            Formula::Not(x) => 1 + x.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) | Formula::Const(_) | Formula::Atom(_) => 3,
        }
    }

    /// Renders with the minimal parentheses needed to parse back to the same tree.
    pub fn display_with<'a, F, N>(&'a self, name: F) -> FormulaDisplay<'a, A, F>
    where
        F: Fn(&A) -> N,
        N: fmt::Display,
    {
        FormulaDisplay {
            formula: self,
            name,
        }
    }
}

pub struct FormulaDisplay<'a, A, F> {
    formula: &'a Formula<A>,
    name: F,
}

impl<A, F: Fn(&A) -> N, N: fmt::Display> FormulaDisplay<'_, A, F> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula<A>, min_prec: u8) -> fmt::Result {
        let paren = node.precedence() < min_prec;
        if paren {
            f.write_str("(")?;
        }
        match node {
            Formula::Const(b) => f.write_str(if *b { "true" } else { "false" })?,
            Formula::Atom(a) => write!(f, "{}", (self.name)(a))?,
            Formula::Not(x) => {
                f.write_str("!")?;
                self.write(f, x, 3)?;
            }
            // `&` and `|` parse left-associatively, so a right child of equal
            // precedence needs parentheses.
            Formula::And(a, b) => {
                self.write(f, a, 2)?;
                f.write_str(" & ")?;
                self.write(f, b, 3)?;
            }
            Formula::Or(a, b) => {
                self.write(f, a, 1)?;
                f.write_str(" | ")?;
                self.write(f, b, 2)?;
            }
            Formula::Implies(a, b) => {
                self.write(f, a, 1)?;
                f.write_str(" -> ")?;
                self.write(f, b, 0)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<A, F: Fn(&A) -> N, N: fmt::Display> fmt::Display for FormulaDisplay<'_, A, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, 0)
    }
}

impl fmt::Display for Formula<String> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(|s: &String| s.clone()).fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'!' => out.push((Token::Not, col)),
            b'&' => out.push((Token::And, col)),
            b'|' => out.push((Token::Or, col)),
            b'(' => out.push((Token::LParen, col)),
            b')' => out.push((Token::RParen, col)),
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((Token::Arrow, col));
                i += 2;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &src[start..i];
                let tok = match word {
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => Token::Ident(word.to_string()),
                };
                out.push((tok, col));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(Error::FormulaSyntax {
                    col,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::FormulaSyntax {
            col: self.col(),
            message: message.into(),
        })
    }

    fn implication(&mut self) -> Result<Formula<String>> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula<String>> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula<String>> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula<String>> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of formula");
        };
        self.pos += 1;
        match tok {
            Token::Not => Ok(Formula::not(self.unary()?)),
            Token::True => Ok(Formula::Const(true)),
            Token::False => Ok(Formula::Const(false)),
            Token::Ident(name) => Ok(Formula::Atom(name)),
            Token::LParen => {
                let inner = self.implication()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                self.error("expected a variable, constant, `!` or `(`")
            }
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula<String>> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end_col: src.len() + 1,
    };
    let f = p.implication()?;
    if p.pos != p.tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula<String> {
        parse_formula(s).unwrap()
    }

    fn a(s: &str) -> Formula<String> {
        Formula::atom(s.to_string())
    }

    #[test]
    fn precedence() {
        assert_eq!(
            p("!a & b | c"),
            Formula::or(Formula::and(Formula::not(a("a")), a("b")), a("c"))
        );
        assert_eq!(
            p("a -> b -> c"),
            Formula::implies(a("a"), Formula::implies(a("b"), a("c")))
        );
        assert_eq!(
            p("a | b -> c & d"),
            Formula::implies(Formula::or(a("a"), a("b")), Formula::and(a("c"), a("d")))
        );
        assert_eq!(
            p("a & b & c"),
            Formula::and(Formula::and(a("a"), a("b")), a("c"))
        );
        assert_eq!(p(" ( true ) "), Formula::Const(true));
        assert_eq!(p("!!x_1"), Formula::not(Formula::not(a("x_1"))));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        assert_eq!(
            parse_formula("a & "),
            Err(Error::FormulaSyntax {
                col: 5,
                message: "unexpected end of formula".into()
            })
        );
        assert!(matches!(
            parse_formula("a $ b"),
            Err(Error::FormulaSyntax { col: 3, .. })
        ));
        assert!(matches!(
            parse_formula("(a | b"),
            Err(Error::FormulaSyntax { col: 7, .. })
        ));
        assert!(matches!(
            parse_formula("a b"),
            Err(Error::FormulaSyntax { col: 3, .. })
        ));
        assert!(matches!(
            parse_formula("a - b"),
            Err(Error::FormulaSyntax { col: 3, .. })
        ));
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn display_parenthesizes_minimally() {
        for src in [
            "a & (b | c)",
            "(a -> b) -> c",
            "a -> b -> c",
            "!(a & b)",
            "a & (b & c)",
            "a | b & c",
            "true | !false",
        ] {
            assert_eq!(p(src).to_string(), src);
        }
    }

    #[test]
    fn atoms_in_first_occurrence_order() {
        let f = p("y1 & (x2 | !y1) -> x1");
        let names: Vec<&str> = f.atoms().into_iter().map(String::as_str).collect();
        assert_eq!(names, ["y1", "x2", "x1"]);
    }

    fn arb_formula() -> impl Strategy<Value = Formula<String>> {
        let leaf = prop_oneof![
            any::<bool>().prop_map(Formula::Const),
            prop::sample::select(vec!["a", "b", "c_1"]).prop_map(|s| Formula::atom(s.to_string())),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
