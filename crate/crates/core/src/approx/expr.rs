//   Copyright 2026 pwa-rs developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! Arithmetic expressions over coordinates `x1, …, xd`, evaluated exactly.

use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use crate::error::{Error, Result};
use crate::geometry::{Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    /// 0-based coordinate index
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Min(Vec<Expr>),
    Max(Vec<Expr>),
    Abs(Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            chars: src.chars().peekable(),
        };
        let e = p.expr()?;
        p.skip_ws();
        match p.chars.peek() {
            None => Ok(e),
            Some(c) => Err(Error::Parse(format!("unexpected '{c}' in expression"))),
        }
    }

    /// Number of coordinates the expression refers to (highest index + 1).
    pub fn arity(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Abs(a) => a.arity(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.arity().max(b.arity())
            }
            Expr::Min(v) | Expr::Max(v) => v.iter().map(Expr::arity).max().unwrap_or(0),
        }
    }

    pub fn eval(&self, x: &Vector) -> Result<Rational> {
        Ok(match self {
            Expr::Const(c) => c.clone(),
            Expr::Var(i) => x
                .entries()
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::OracleFailure(format!("x{} out of range", i + 1)))?,
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let d = b.eval(x)?;
                if d.is_zero() {
                    return Err(Error::OracleFailure(format!("division by zero at {x}")));
                }
                a.eval(x)? / d
            }
            Expr::Pow(a, k) => {
                let base = a.eval(x)?;
                if *k < 0 && base.is_zero() {
                    return Err(Error::OracleFailure(format!(
                        "0 to a negative power at {x}"
                    )));
                }
                base.pow(*k)
            }
            Expr::Min(v) => fold(v, x, Rational::min)?,
            Expr::Max(v) => fold(v, x, Rational::max)?,
            Expr::Abs(a) => a.eval(x)?.abs(),
        })
    }
}

fn fold(args: &[Expr], x: &Vector, f: fn(Rational, Rational) -> Rational) -> Result<Rational> {
    let mut it = args.iter();
    let first = it
        .next()
        .expect("parser rejects empty argument lists")
        .eval(x)?;
    it.try_fold(first, |acc, e| Ok(f(acc, e.eval(x)?)))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, v: &[Expr]| {
            write!(f, "{name}(")?;
            for (i, e) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Const(c) => write!(f, "({c})"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
            Expr::Min(v) => list(f, "min", v),
            Expr::Max(v) => list(f, "max", v),
            Expr::Abs(a) => write!(f, "abs({a})"),
        }
    }
}

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.chars.next();
                Ok(())
            }
            other => Err(Error::Parse(format!("expected '{c}', found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-' | '−') => {
                    self.chars.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*' | '×') => {
                    self.chars.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/' | '÷') => {
                    self.chars.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('-' | '−') => {
                self.chars.next();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.chars.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.chars.next();
        let negative = match self.peek() {
            Some('-' | '−') => {
                self.chars.next();
                true
            }
            _ => false,
        };
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        let k: i32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent '{digits}'")))?;
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.chars.next();
        }
        s
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.chars.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let s = self.take_while(|c| c.is_ascii_digit() || c == '.');
                s.parse()
                    .map(Expr::Const)
                    .map_err(|_| Error::Parse(format!("bad number '{s}'")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                self.named(&name)
            }
            other => Err(Error::Parse(format!("unexpected {other:?} in expression"))),
        }
    }

    fn named(&mut self, name: &str) -> Result<Expr> {
        match name {
            "x" => return Ok(Expr::Var(0)),
            "min" | "max" | "abs" => {}
            _ => {
                let idx = name
                    .strip_prefix('x')
                    .map(|d| d.trim_start_matches('_'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown name '{name}'")))?;
                return Ok(Expr::Var(idx - 1));
            }
        }
        self.expect('(')?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(',') {
            self.chars.next();
            args.push(self.expr()?);
        }
        self.expect(')')?;
        match name {
            "abs" if args.len() == 1 => Ok(Expr::Abs(Box::new(args.pop().expect("one arg")))),
            "abs" => Err(Error::Parse("abs takes one argument".into())),
            "min" => Ok(Expr::Min(args)),
            _ => Ok(Expr::Max(args)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(src: &str, x: &str) -> Rational {
        Expr::parse(src).unwrap().eval(&x.parse().unwrap()).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(at("x^2", "1/3"), Rational::new(1, 9));
        assert_eq!(at("x1*x2 - 3/4", "2,5"), Rational::new(37, 4));
        assert_eq!(at("-x^2", "3"), Rational::from_integer(-9));
        assert_eq!(at("2^-2 + 0.5", "0"), Rational::new(3, 4));
        assert_eq!(
            at("max(x1, x2, 0) + min(x1, -1)", "-2,-3"),
            Rational::from_integer(-2)
        );
        assert_eq!(at("abs(x1 - x2) × 2 ÷ 4", "1,4"), Rational::new(3, 2));
        assert_eq!(at("1 - 2 - 3", "0"), Rational::from_integer(-4));
        assert_eq!(at("12 / 2 / 3", "0"), Rational::from_integer(2));
    }

    #[test]
    fn arity_and_errors() {
        assert_eq!(Expr::parse("x3 + x1").unwrap().arity(), 3);
        assert!(Expr::parse("y + 1").is_err());
        assert!(Expr::parse("(x").is_err());
        assert!(Expr::parse("abs(x, x)").is_err());
        assert!(Expr::parse("x0").is_err());
        let e = Expr::parse("1/x").unwrap();
        assert!(matches!(
            e.eval(&"0".parse().unwrap()),
            Err(Error::OracleFailure(_))
        ));
    }

    #[test]
    fn display_reparses() {
        let e = Expr::parse("max(x1^2, -x2) / (1 + abs(x1))").unwrap();
        let again = Expr::parse(&e.to_string()).unwrap();
        for x in ["1,2", "-3/2,1/7"] {
            let v: Vector = x.parse().unwrap();
            assert_eq!(e.eval(&v).unwrap(), again.eval(&v).unwrap());
        }
    }
}
