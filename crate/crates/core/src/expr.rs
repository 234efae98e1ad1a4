//! The expression grammar shared by every textual input.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | symbol | '(' expr ')'
//! symbol := 'x' | 'q' | jet variable
//! ```
//!
//! Jet variables name the entry `(a, b)` of the `j`-th derivative block,
//! with 1-based indices: `Y12` (j = 0), `Y'12` (j = 1), `Y''12` (j = 2),
//! or the general form `Y_j_a_b`. Whitespace is insignificant.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::mpoly::Var;

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    X,
    Q,
    Jet(Var),
}

/// Values an expression can be evaluated into.
pub(crate) trait ExprAlgebra: Sized {
    fn integer(n: &BigInt) -> Self;
    fn symbol(sym: &Symbol, position: usize) -> Result<Self>;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, rhs: &Self, position: usize) -> Result<Self>;
    fn pow(&self, exp: i64, position: usize) -> Result<Self>;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(Symbol),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                out.push((Tok::Sym(classify(&ident, start)?), start));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

fn classify(ident: &str, position: usize) -> Result<Symbol> {
    match ident {
        "x" => return Ok(Symbol::X),
        "q" => return Ok(Symbol::Q),
        _ => {}
    }
    let bad = || syntax(position, format!("unknown symbol `{ident}`"));
    let rest = ident.strip_prefix('Y').ok_or_else(bad)?;
    if let Some(general) = rest.strip_prefix('_') {
        let parts: Vec<&str> = general.split('_').collect();
        let [j, a, b] = parts.as_slice() else {
            return Err(bad());
        };
        let j: u32 = j.parse().map_err(|_| bad())?;
        let a: u32 = a.parse().map_err(|_| bad())?;
        let b: u32 = b.parse().map_err(|_| bad())?;
        if a == 0 || b == 0 {
            return Err(bad());
        }
        return Ok(Symbol::Jet(Var::new(j, a - 1, b - 1)));
    }
    let primes = rest.chars().take_while(|&c| c == '\'').count();
    let digits: Vec<u32> = rest[primes..]
        .chars()
        .map(|c| c.to_digit(10))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    match digits.as_slice() {
        &[a, b] if a > 0 && b > 0 => Ok(Symbol::Jet(Var::new(primes as u32, a - 1, b - 1))),
        _ => Err(bad()),
    }
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn expr<T: ExprAlgebra>(&mut self) -> Result<T> {
        let mut acc: T = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<T: ExprAlgebra>(&mut self) -> Result<T> {
        let mut acc: T = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<T: ExprAlgebra>(&mut self) -> Result<T> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary::<T>()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<T: ExprAlgebra>(&mut self) -> Result<T> {
        let base: T = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.here();
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp_pos = self.here();
        let Some(Tok::Int(n)) = self.peek() else {
            return Err(syntax(exp_pos, "expected an integer exponent"));
        };
        let exp: i64 = n
            .try_into()
            .ok()
            .filter(|e: &i64| *e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(exp_pos, format!("exponent larger than {MAX_EXPONENT}")))?;
        self.pos += 1;
        base.pow(if negative { -exp } else { exp }, at)
    }

    fn atom<T: ExprAlgebra>(&mut self) -> Result<T> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(T::integer(&n))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                T::symbol(&s, at)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(syntax(at, "expected a number, symbol or `(`")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses and evaluates `text` into `T`.
pub(crate) fn parse<T: ExprAlgebra>(text: &str) -> Result<T> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: text.chars().count(),
    };
    let value = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(syntax(parser.here(), "unexpected trailing input"));
    }
    Ok(value)
}

/// Renders a jet variable in the shortest accepted spelling.
pub fn format_var(v: Var) -> String {
    if v.order <= 3 && v.row < 9 && v.col < 9 {
        format!("Y{}{}{}", "'".repeat(v.order as usize), v.row + 1, v.col + 1)
    } else {
        format!("Y_{}_{}_{}", v.order, v.row + 1, v.col + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_jet_variables() {
        assert_eq!(classify("Y12", 0).unwrap(), Symbol::Jet(Var::new(0, 0, 1)));
        assert_eq!(classify("Y''21", 0).unwrap(), Symbol::Jet(Var::new(2, 1, 0)));
        assert_eq!(classify("Y_4_10_3", 0).unwrap(), Symbol::Jet(Var::new(4, 9, 2)));
        assert!(classify("Y1", 0).is_err());
        assert!(classify("Y01", 0).is_err());
        assert!(classify("z", 0).is_err());
        for v in [
            Var::new(0, 0, 1),
            Var::new(3, 8, 8),
            Var::new(4, 0, 0),
            Var::new(1, 11, 2),
        ] {
            assert_eq!(classify(&format_var(v), 0).unwrap(), Symbol::Jet(v));
        }
    }

    #[test]
    fn reports_positions() {
        let err = lex("x + $").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                position: 4,
                message: "unexpected character `$`".into()
            }
        );
    }
}
