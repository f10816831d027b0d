//! Text grammar.
//!
//! ```text
//! formula := or ("->" formula)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "wneg" unary | quant | primary
//! quant   := ("forall" | "exists") ident "." formula
//! primary := "top" | "bot" | "(" formula ")" | Pred ("(" term ("," term)* ")")?
//! term    := ident ("(" term ("," term)* ")")? | "@" digits
//! ```
//!
//! Unicode alternatives `¬ ∧ ∨ → ⊤ ⊥ ∀ ∃ ⥽` are accepted as well.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::formula::Formula;
use super::term::{Signature, Term};

/// How lowercase nullary identifiers are resolved.
#[derive(Clone, Copy, Debug)]
pub enum Symbols<'a> {
    /// Declared constants are constants, anything else is a variable;
    /// undeclared predicates and functions are errors.
    Declared(&'a Signature),
    /// Identifiers starting with `u`..`z` are variables, other lowercase
    /// identifiers are constants; arities are taken from first use.
    Inferred,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    Undeclared { symbol: String },
    Arity { symbol: String, expected: usize, found: usize },
    BadName(String),
}

/// A parse failure at a byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken { found, expected } => write!(f, "expected {expected}, found `{found}`"),
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::Undeclared { symbol } => write!(f, "undeclared symbol `{symbol}`"),
            ParseErrorKind::Arity { symbol, expected, found } => {
                write!(f, "`{symbol}` takes {expected} argument(s), given {found}")
            }
            ParseErrorKind::BadName(s) => write!(f, "bad domain name `{s}`"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Name(u32),
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Top,
    Bot,
    Wneg,
    Forall,
    Exists,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => f.write_str(s),
            Tok::Name(d) => write!(f, "@{d}"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::Dot => f.write_str("."),
            Tok::Tilde => f.write_str("~"),
            Tok::Amp => f.write_str("&"),
            Tok::Bar => f.write_str("|"),
            Tok::Arrow => f.write_str("->"),
            Tok::Top => f.write_str("top"),
            Tok::Bot => f.write_str("bot"),
            Tok::Wneg => f.write_str("wneg"),
            Tok::Forall => f.write_str("forall"),
            Tok::Exists => f.write_str("exists"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '~' | '¬' => Some(Tok::Tilde),
            '&' | '∧' => Some(Tok::Amp),
            '|' | '∨' => Some(Tok::Bar),
            '→' => Some(Tok::Arrow),
            '⊤' => Some(Tok::Top),
            '⊥' => Some(Tok::Bot),
            '∀' => Some(Tok::Forall),
            '∃' => Some(Tok::Exists),
            '⥽' => Some(Tok::Wneg),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            out.push((pos, t));
            continue;
        }
        if c == '-' {
            chars.next();
            match chars.peek() {
                Some(&(_, '>')) => {
                    chars.next();
                    out.push((pos, Tok::Arrow));
                    continue;
                }
                _ => return Err(ParseError { position: pos, kind: ParseErrorKind::UnexpectedChar('-') }),
            }
        }
        if c == '@' {
            chars.next();
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let n = digits
                .parse::<u32>()
                .map_err(|_| ParseError { position: pos, kind: ParseErrorKind::BadName(digits.clone()) })?;
            out.push((pos, Tok::Name(n)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    ident.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let tok = match ident.as_str() {
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                "wneg" => Tok::Wneg,
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(ident),
            };
            out.push((pos, tok));
            continue;
        }
        return Err(ParseError { position: pos, kind: ParseErrorKind::UnexpectedChar(c) });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
    symbols: Symbols<'a>,
    scope: Vec<String>,
    inferred_arity: BTreeMap<String, usize>,
}

/// Whether an undeclared lowercase nullary identifier reads as a variable
/// under [`Symbols::Inferred`].
pub fn is_variable_name(s: &str) -> bool {
    matches!(s.chars().next(), Some('u'..='z'))
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err_expected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                position: self.here(),
                kind: ParseErrorKind::UnexpectedToken { found: t.to_string(), expected },
            },
            None => ParseError { position: self.len, kind: ParseErrorKind::UnexpectedEnd { expected } },
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_expected(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Wneg) => {
                self.pos += 1;
                Ok(Formula::wneg(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let q = self.bump();
                let x = match self.bump() {
                    Some(Tok::Ident(x)) if x.starts_with(|c: char| c.is_ascii_lowercase()) => x,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err_expected("a variable"));
                    }
                };
                self.expect(Tok::Dot, "`.`")?;
                self.scope.push(x.clone());
                let body = self.formula();
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if q == Some(Tok::Forall) { Formula::Forall(x, body) } else { Formula::Exists(x, body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let start = self.here();
        match self.bump() {
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::Bot) => Ok(Formula::Bot),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(p)) if p.starts_with(|c: char| c.is_ascii_uppercase()) => {
                let args = if self.peek() == Some(&Tok::LParen) { self.arguments()? } else { Vec::new() };
                self.check_arity(&p, args.len(), start, true)?;
                Ok(Formula::Atom(p, args))
            }
            _ => {
                self.pos -= 1;
                Err(self.err_expected("a formula"))
            }
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = alloc::vec![self.term()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.here();
        match self.bump() {
            Some(Tok::Name(d)) => Ok(Term::Name(d)),
            Some(Tok::Ident(s)) if s.starts_with(|c: char| c.is_ascii_lowercase()) => {
                if self.peek() == Some(&Tok::LParen) {
                    let args = self.arguments()?;
                    self.check_arity(&s, args.len(), start, false)?;
                    return Ok(Term::App(s, args));
                }
                if self.scope.contains(&s) {
                    return Ok(Term::Var(s));
                }
                match self.symbols {
                    Symbols::Declared(sig) => {
                        if sig.is_constant(&s) {
                            Ok(Term::Const(s))
                        } else if let Some(n) = sig.function_arity(&s) {
                            Err(ParseError {
                                position: start,
                                kind: ParseErrorKind::Arity { symbol: s, expected: n, found: 0 },
                            })
                        } else {
                            Ok(Term::Var(s))
                        }
                    }
                    Symbols::Inferred => {
                        if let Some(&n) = self.inferred_arity.get(&s) {
                            if n != 0 {
                                return Err(ParseError {
                                    position: start,
                                    kind: ParseErrorKind::Arity { symbol: s, expected: n, found: 0 },
                                });
                            }
                        }
                        if is_variable_name(&s) {
                            Ok(Term::Var(s))
                        } else {
                            self.inferred_arity.insert(s.clone(), 0);
                            Ok(Term::Const(s))
                        }
                    }
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err_expected("a term"))
            }
        }
    }

    fn check_arity(&mut self, sym: &str, found: usize, position: usize, predicate: bool) -> Result<(), ParseError> {
        let declared = match self.symbols {
            Symbols::Declared(sig) => {
                let a = if predicate { sig.predicate_arity(sym) } else { sig.function_arity(sym) };
                match a {
                    Some(n) => n,
                    None => {
                        return Err(ParseError { position, kind: ParseErrorKind::Undeclared { symbol: sym.to_string() } })
                    }
                }
            }
            Symbols::Inferred => {
                let want = if sym == super::term::EXISTENCE { 1 } else { found };
                *self.inferred_arity.entry(sym.to_string()).or_insert(want)
            }
        };
        if declared != found {
            return Err(ParseError {
                position,
                kind: ParseErrorKind::Arity { symbol: sym.to_string(), expected: declared, found },
            });
        }
        Ok(())
    }
}

/// Parses `text` against a declared signature.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_with(text, Symbols::Declared(sig))
}

/// Parses `text` with symbol kinds inferred from spelling.
pub fn parse_inferred(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, Symbols::Inferred)
}

pub fn parse_with(text: &str, symbols: Symbols<'_>) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, len: text.len(), symbols, scope: Vec::new(), inferred_arity: BTreeMap::new() };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.err_expected("end of input"));
    }
    Ok(f)
}

/// Parses a single term.
pub fn parse_term(text: &str, symbols: Symbols<'_>) -> Result<Term, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, len: text.len(), symbols, scope: Vec::new(), inferred_arity: BTreeMap::new() };
    let t = p.term()?;
    if p.pos < p.toks.len() {
        return Err(p.err_expected("end of input"));
    }
    Ok(t)
}

/// The smallest signature declaring every symbol used by `formulas`.
pub fn infer_signature<'f>(formulas: impl IntoIterator<Item = &'f Formula>) -> Result<Signature, super::term::SignatureError> {
    let mut constants: Vec<String> = Vec::new();
    let mut functions: Vec<(String, usize)> = Vec::new();
    let mut predicates: Vec<(String, usize)> = Vec::new();
    fn walk_term(t: &Term, constants: &mut Vec<String>, functions: &mut Vec<(String, usize)>) {
        match t {
            Term::Const(c) if !constants.contains(c) => constants.push(c.clone()),
            Term::App(f, args) => {
                if !functions.iter().any(|(g, _)| g == f) {
                    functions.push((f.clone(), args.len()));
                }
                args.iter().for_each(|a| walk_term(a, constants, functions));
            }
            _ => {}
        }
    }
    for f in formulas {
        for sub in f.subformulas() {
            if let Formula::Atom(p, args) = sub {
                if !predicates.iter().any(|(q, _)| q == p) {
                    predicates.push((p.clone(), args.len()));
                }
                args.iter().for_each(|a| walk_term(a, &mut constants, &mut functions));
            }
        }
    }
    Signature::new(constants, functions, predicates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig() -> Signature {
        Signature::from_parts(&["c", "t"], &[("f", 1)], &[("P", 1), ("Q", 1), ("R", 2)]).unwrap()
    }

    #[test]
    fn spec_examples() {
        let s = sig();
        assert_eq!(
            parse("E(c) -> bot", &s).unwrap(),
            Formula::implies(Formula::exists_pred(Term::constant("c")), Formula::Bot)
        );
        let pt = Formula::atom("P", vec![Term::constant("t")]);
        assert_eq!(parse("P(t) | ~P(t)", &s).unwrap(), Formula::or(pt.clone(), Formula::not(pt)));
        assert_eq!(
            parse("forall x. exists y. P(x)", &s).unwrap(),
            Formula::forall("x", Formula::exists("y", Formula::atom("P", vec![Term::var("x")])))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let s = sig();
        let a = parse("~P(c) & Q(c) | P(c) -> Q(c) -> P(c)", &s).unwrap();
        let pc = || Formula::atom("P", vec![Term::constant("c")]);
        let qc = || Formula::atom("Q", vec![Term::constant("c")]);
        let expect = Formula::implies(
            Formula::or(Formula::and(Formula::not(pc()), qc()), pc()),
            Formula::implies(qc(), pc()),
        );
        assert_eq!(a, expect);
        assert_eq!(parse("P(c) & Q(c) & P(c)", &s).unwrap(), Formula::and(Formula::and(pc(), qc()), pc()));
        assert_eq!(parse("wneg P(c) & Q(c)", &s).unwrap(), Formula::and(Formula::wneg(pc()), qc()));
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        let s = sig();
        let a = parse("forall x. P(x) -> Q(x)", &s).unwrap();
        assert!(matches!(a, Formula::Forall(..)));
        let b = parse("(forall x. P(x)) -> Q(c)", &s).unwrap();
        assert!(matches!(b, Formula::Implies(..)));
    }

    #[test]
    fn errors() {
        let s = sig();
        assert!(matches!(parse("P(c", &s).unwrap_err().kind, ParseErrorKind::UnexpectedEnd { .. }));
        assert!(matches!(parse("S(c)", &s).unwrap_err().kind, ParseErrorKind::Undeclared { .. }));
        assert!(matches!(parse("R(c)", &s).unwrap_err().kind, ParseErrorKind::Arity { .. }));
        assert!(matches!(parse("P(g(c))", &s).unwrap_err().kind, ParseErrorKind::Undeclared { .. }));
        let e = parse("P(c) $", &s).unwrap_err();
        assert_eq!(e.position, 5);
        assert!(matches!(parse("P(c) Q(c)", &s).unwrap_err().kind, ParseErrorKind::UnexpectedToken { .. }));
        assert!(matches!(parse_inferred("P(c) & P(c, c)").unwrap_err().kind, ParseErrorKind::Arity { .. }));
    }

    #[test]
    fn declared_vs_inferred_symbols() {
        let s = sig();
        assert_eq!(parse("P(x)", &s).unwrap(), Formula::atom("P", vec![Term::var("x")]));
        assert_eq!(parse("P(a)", &s).unwrap(), Formula::atom("P", vec![Term::var("a")]));
        assert_eq!(parse_inferred("P(a)").unwrap(), Formula::atom("P", vec![Term::constant("a")]));
        assert_eq!(parse_inferred("P(x)").unwrap(), Formula::atom("P", vec![Term::var("x")]));
        assert_eq!(parse_inferred("forall a. P(a)").unwrap(), Formula::forall("a", Formula::atom("P", vec![Term::var("a")])));
        assert_eq!(parse_inferred("P(@3)").unwrap(), Formula::atom("P", vec![Term::Name(3)]));
    }

    #[test]
    fn unicode_alternatives() {
        let a = parse_inferred("∀x. (¬P(x) ∨ ⥽Q(x)) ∧ ⊤ → ⊥").unwrap();
        let b = parse_inferred("forall x. (~P(x) | wneg Q(x)) & top -> bot").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn signature_inference() {
        let a = parse_inferred("P(f(c)) & R(x, d)").unwrap();
        let s = infer_signature([&a]).unwrap();
        assert_eq!(s.predicate_arity("R"), Some(2));
        assert_eq!(s.function_arity("f"), Some(1));
        assert!(s.is_constant("c") && s.is_constant("d"));
        assert!(!s.is_constant("x"));
    }
}
