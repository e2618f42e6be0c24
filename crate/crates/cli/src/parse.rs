//! Recursive-descent parser for the expression language.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use qfine::{Rational, Var};

use crate::expr::{Expr, Phi32Args};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: ", self.offset)?;
        let items: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        match items.as_slice() {
            [] => write!(f, "unexpected {}", self.found),
            [one] => write!(f, "expected {one}, found {}", self.found),
            many => write!(f, "expected one of {}, found {}", many.join(" "), self.found),
        }
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Frac(BigInt, BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Frac(p, r) => format!("fraction `{p}/{r}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

fn single(offset: usize, expected: &str, found: String) -> SyntaxError {
    SyntaxError { offset, expected: BTreeSet::from([expected.to_string()]), found }
}

/// `p/r` with no space around the slash is one literal, unless it follows `/`
/// or `^` or the denominator is raised to a power.
fn lex(input: &str) -> Result<Vec<Token>, SyntaxError> {
    let bytes = input.as_bytes();
    let digits_end = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    let mut toks: Vec<Token> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let end = digits_end(i);
            let p: BigInt = input[i..end].parse().expect("digits");
            let after_op = |c: char| toks.last().is_some_and(|t| t.tok == Tok::Sym(c));
            let blocked = after_op('/') || after_op('^') || (after_op('-') && toks.len() >= 2 && toks[toks.len() - 2].tok == Tok::Sym('^'));
            if !blocked && end + 1 < bytes.len() && bytes[end] == b'/' && bytes[end + 1].is_ascii_digit() {
                let end2 = digits_end(end + 1);
                let next = input[end2..].trim_start().chars().next();
                if next != Some('^') {
                    let r: BigInt = input[end + 1..end2].parse().expect("digits");
                    if r.is_zero() {
                        return Err(single(end + 1, "nonzero denominator", "`0`".into()));
                    }
                    toks.push(Token { tok: Tok::Frac(p, r), start: i });
                    i = end2;
                    continue;
                }
            }
            toks.push(Token { tok: Tok::Int(p), start: i });
            i = end;
        } else if c.is_ascii_alphabetic() {
            let mut end = i;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            toks.push(Token { tok: Tok::Ident(input[i..end].to_string()), start: i });
            i = end;
        } else if "+-*/^(),;".contains(c as char) {
            toks.push(Token { tok: Tok::Sym(c as char), start: i });
            i += 1;
        } else {
            let ch = input[i..].chars().next().expect("in bounds");
            return Err(single(i, "a number, variable, operator or call", format!("`{ch}`")));
        }
    }
    toks.push(Token { tok: Tok::End, start: input.len() });
    Ok(toks)
}

pub const FUNCTIONS: [&str; 7] = ["abfine", "fine", "phi32", "poch", "pochinf", "qbinom", "r1n"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    expected: BTreeSet<String>,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn error(&self) -> SyntaxError {
        let t = self.peek();
        SyntaxError { offset: t.start, expected: self.expected.clone(), found: describe(&t.tok) }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            self.expected.insert(format!("`{c}`"));
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) { Ok(()) } else { Err(self.error()) }
    }

    fn sum(&mut self) -> PResult<Expr> {
        let mut left = self.term()?;
        loop {
            if self.eat('+') {
                left = left + self.term()?;
            } else if self.eat('-') {
                left = left - self.term()?;
            } else {
                return Ok(left);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut left = self.unary()?;
        loop {
            if self.eat('*') {
                left = left * self.unary()?;
            } else if self.eat('/') {
                left = left / self.unary()?;
            } else {
                return Ok(left);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.int()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    /// An optionally negated integer literal.
    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat('-');
        let start = self.peek().start;
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                let n = if neg { -n } else { n };
                n.to_i64().ok_or_else(|| single(start, "an integer that fits in 64 bits", format!("`{n}`")))
            }
            _ => {
                self.expected.insert("integer".into());
                Err(self.error())
            }
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let start = self.peek().start;
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Tok::Frac(p, r) => {
                self.bump();
                Ok(Expr::Num(Rational::new(p, r)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let mut chars = name.chars();
                if let (Some(c), None) = (chars.next(), chars.next()) {
                    if let Some(v) = Var::from_name(c) {
                        self.bump();
                        return Ok(Expr::Var(v));
                    }
                }
                if !FUNCTIONS.contains(&name.as_str()) {
                    let mut expected: BTreeSet<String> = FUNCTIONS.iter().map(|f| format!("`{f}`")).collect();
                    expected.extend(["`a`", "`b`", "`q`", "`t`"].map(String::from));
                    return Err(SyntaxError { offset: start, expected, found: format!("`{name}`") });
                }
                self.bump();
                self.expect('(')?;
                let e = self.call(&name)?;
                self.expect(')')?;
                Ok(e)
            }
            _ => {
                self.expected.extend(["number", "variable", "function call", "`(`"].map(String::from));
                Err(self.error())
            }
        }
    }

    fn opt_int(&mut self) -> PResult<Option<i64>> {
        if self.eat(',') { Ok(Some(self.int()?)) } else { Ok(None) }
    }

    /// Arguments of a call, after the opening parenthesis.
    fn call(&mut self, name: &str) -> PResult<Expr> {
        Ok(match name {
            "poch" => {
                let arg = self.sum()?;
                self.expect(',')?;
                let n = self.int()?;
                let base_exp = self.opt_int()?;
                Expr::Poch { arg: Box::new(arg), n, base_exp }
            }
            "pochinf" => Expr::PochInf(Box::new(self.sum()?)),
            "qbinom" => {
                let top = self.int()?;
                self.expect(',')?;
                let bottom = self.int()?;
                let base_exp = self.opt_int()?;
                Expr::QBinom { top, bottom, base_exp }
            }
            "fine" => Expr::Fine(self.int()?),
            "abfine" => Expr::AbFine(self.int()?),
            "r1n" => Expr::R1n(self.int()?),
            "phi32" => {
                let u1 = self.sum()?;
                self.expect(',')?;
                let u2 = self.sum()?;
                self.expect(',')?;
                let u3 = self.sum()?;
                self.expect(';')?;
                let l1 = self.sum()?;
                self.expect(',')?;
                let l2 = self.sum()?;
                self.expect(';')?;
                let z = self.sum()?;
                self.expect(';')?;
                let terms = self.int()?;
                Expr::Phi32(Box::new(Phi32Args { upper: [u1, u2, u3], lower: [l1, l2], z, terms }))
            }
            _ => unreachable!("checked against FUNCTIONS"),
        })
    }
}

/// Parses one expression spanning the whole input.
pub fn parse(input: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: lex(input)?, pos: 0, expected: BTreeSet::new() };
    let e = p.sum()?;
    if p.peek().tok != Tok::End {
        p.expected.insert("end of input".into());
        return Err(p.error());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_literal_rules() {
        assert_eq!(parse("2/3").unwrap(), Expr::frac(2, 3));
        assert_eq!(parse("2 / 3").unwrap(), Expr::int(2) / Expr::int(3));
        assert_eq!(parse("2/3^2").unwrap(), Expr::int(2) / Expr::int(3).pow(2));
        assert_eq!(parse("q^2/3").unwrap(), Expr::var(Var::Q).pow(2) / Expr::int(3));
        let a = Expr::var(Var::A);
        assert_eq!(parse("a/2/3").unwrap(), a.clone() / Expr::int(2) / Expr::int(3));
        assert_eq!(parse("a*2/3").unwrap(), a * Expr::frac(2, 3));
        assert_eq!(parse("-1/2").unwrap(), -Expr::frac(1, 2));
    }

    #[test]
    fn zero_denominator_literal() {
        let e = parse("1/0").unwrap_err();
        assert_eq!(e.offset, 2);
    }

    #[test]
    fn unknown_character() {
        assert_eq!(parse("q % 2").unwrap_err().offset, 2);
    }
}
