//! Surface syntax: `a*b`, `[a,b]`, `R(a)` / `N(a)`, rational literals,
//! `+`, `-` and parentheses. Generators are identifiers.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::kernel::{is_identifier, parse_scalar, Alphabet, Element, KernelError, LinComb, Scalar, Word};
use crate::poisrb::Engine;
use crate::rblie::Strategy;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(String),
    Num(Scalar),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Op(char, Box<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {}: {msg}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operator `{found}` used with a `{expected}` engine")]
    WrongOperator { found: char, expected: char },
    #[error("the algebra has no unit: a bare scalar cannot stand as {0}")]
    BareScalar(&'static str),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.sum()?;
    p.ws();
    if p.pos < src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        while self.eat('*') {
            e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.take_while(|c| c.is_ascii_digit());
                let save = self.pos;
                if self.eat('/') {
                    self.ws();
                    if self.take_while(|c| c.is_ascii_digit()).is_empty() {
                        return Err(self.err("expected a denominator"));
                    }
                } else {
                    self.pos = save;
                }
                let text = self.src[start..self.pos].replace(char::is_whitespace, "");
                parse_scalar(&text)
                    .map(Expr::Num)
                    .map_err(|_| ParseError { pos: start, msg: "zero denominator".into() })
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let id = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string();
                if id == "R" || id == "N" {
                    self.expect('(')?;
                    let a = self.sum()?;
                    self.expect(')')?;
                    return Ok(Expr::Op(id.chars().next().unwrap(), Box::new(a)));
                }
                debug_assert!(is_identifier(&id));
                let _ = start;
                Ok(Expr::Gen(id))
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }
}

impl Expr {
    /// Generator names in order of first occurrence.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Expr::Gen(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Num(_) => {}
            Expr::Neg(a) | Expr::Op(_, a) => a.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Bracket(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(s) => f.write_str(s),
            Expr::Num(c) => write!(f, "{}", crate::kernel::fmt_scalar(c)),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Bracket(a, b) => write!(f, "[{a},{b}]"),
            Expr::Op(c, a) => write!(f, "{c}({a})"),
        }
    }
}

/// Default generator order: names sorted by alphabetic prefix, then numeric
/// suffix (`x2 < x10`).
pub fn default_alphabet(e: &Expr) -> Result<Alphabet, KernelError> {
    let mut names = e.generators();
    names.sort_by(|a, b| natural_key(a).cmp(&natural_key(b)));
    Alphabet::new(names)
}

fn natural_key(s: &str) -> (String, u64, String) {
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, digits) = s.split_at(cut);
    (head.to_string(), digits.parse().unwrap_or(0), s.to_string())
}

enum Value {
    Num(Scalar),
    Elem(Element),
}

impl Value {
    fn elem(self, ctx: &'static str) -> Result<Element, EvalError> {
        match self {
            Value::Elem(e) => Ok(e),
            Value::Num(c) if c.is_zero() => Ok(Element::zero()),
            Value::Num(_) => Err(EvalError::BareScalar(ctx)),
        }
    }
}

/// Normalizes `e` with the given reduction order.
pub fn evaluate(engine: &Engine, alphabet: &Alphabet, e: &Expr, strategy: Strategy) -> Result<Element, EvalError> {
    Evaluator { engine, alphabet, strategy }.eval(e)?.elem("an element")
}

struct Evaluator<'a> {
    engine: &'a Engine,
    alphabet: &'a Alphabet,
    strategy: Strategy,
}

impl Evaluator<'_> {
    fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        Ok(match e {
            Expr::Gen(s) => {
                let g = self
                    .alphabet
                    .get(s)
                    .ok_or_else(|| EvalError::UnknownGenerator(s.clone()))?;
                Value::Elem(LinComb::from_term(Word::generator(g.clone())))
            }
            Expr::Num(c) => Value::Num(c.clone()),
            Expr::Neg(a) => match self.eval(a)? {
                Value::Num(c) => Value::Num(-c),
                Value::Elem(x) => Value::Elem(-x),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sign = if matches!(e, Expr::Sub(..)) { -1 } else { 1 };
                match (self.eval(a)?, self.eval(b)?) {
                    (Value::Num(x), Value::Num(y)) => Value::Num(x + y * Scalar::from_integer(sign.into())),
                    (x, y) => {
                        let x = x.elem("a summand")?;
                        let y = y.elem("a summand")?;
                        Value::Elem(if sign < 0 { x - y } else { x + y })
                    }
                }
            }
            Expr::Mul(a, b) => {
                let (va, vb) = match self.strategy {
                    Strategy::BottomUp => (self.eval(a)?, self.eval(b)?),
                    Strategy::LeftNormed => {
                        let vb = self.eval(b)?;
                        (self.eval(a)?, vb)
                    }
                };
                match (va, vb) {
                    (Value::Num(x), Value::Num(y)) => Value::Num(x * y),
                    (Value::Num(c), Value::Elem(x)) | (Value::Elem(x), Value::Num(c)) => {
                        Value::Elem(x.scaled(&c))
                    }
                    (Value::Elem(x), Value::Elem(y)) => Value::Elem(match self.strategy {
                        Strategy::BottomUp => self.engine.mul(&x, &y),
                        Strategy::LeftNormed => self.engine.mul(&y, &x),
                    }),
                }
            }
            Expr::Op(c, a) => {
                if *c != self.engine.symbol() {
                    return Err(EvalError::WrongOperator { found: *c, expected: self.engine.symbol() });
                }
                let x = self.eval(a)?.elem("an operator argument")?;
                Value::Elem(self.engine.apply(&x))
            }
            Expr::Bracket(a, b) => Value::Elem(match self.strategy {
                Strategy::BottomUp => {
                    let x = self.eval(a)?.elem("a bracket argument")?;
                    let y = self.eval(b)?.elem("a bracket argument")?;
                    self.engine.bracket(&x, &y)
                }
                Strategy::LeftNormed => {
                    let x = self.eval(a)?.elem("a bracket argument")?;
                    self.push(x, b)?
                }
            }),
        })
    }

    /// `[x, t]` with Jacobi applied to a raw bracket `t` first.
    fn push(&self, x: Element, t: &Expr) -> Result<Element, EvalError> {
        match t {
            Expr::Bracket(t1, t2) => {
                // [x,[t1,t2]] = [[x,t1],t2] − [[x,t2],t1]
                let a = self.push(x.clone(), t1)?;
                let a = self.push(a, t2)?;
                let b = self.push(x, t2)?;
                let b = self.push(b, t1)?;
                Ok(a - b)
            }
            _ => {
                let y = self.eval(t)?.elem("a bracket argument")?;
                Ok(self.engine.bracket(&x, &y))
            }
        }
    }
}

/// Parses and normalizes in one step, with the default generator order.
pub fn normalize_text(engine: &Engine, src: &str) -> Result<Element, String> {
    let e = parse(src).map_err(|e| e.to_string())?;
    let a = default_alphabet(&e).map_err(|e| e.to_string())?;
    evaluate(engine, &a, &e, Strategy::BottomUp).map_err(|e| e.to_string())
}

/// Parses and normalizes over a fixed alphabet, so that separately parsed
/// elements share generator ranks.
pub fn normalize_in(engine: &Engine, alphabet: &Alphabet, src: &str) -> Result<Element, String> {
    let e = parse(src).map_err(|e| e.to_string())?;
    evaluate(engine, alphabet, &e, Strategy::BottomUp).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ratio;

    #[test]
    fn parses_the_grammar() {
        let e = parse("2*R(R(x)*x) + 1/2 * [x, y*z] - -y").unwrap();
        assert_eq!(e.generators(), vec!["x", "y", "z"]);
        assert!(matches!(parse("3/4").unwrap(), Expr::Num(c) if c == ratio(3, 4)));
    }

    #[test]
    fn reports_positions() {
        let err = parse("[x,y").unwrap_err();
        assert_eq!(err.pos, 4);
        assert!(parse("R x").is_err());
        assert!(parse("x +").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x $").unwrap_err().pos == 2);
    }

    #[test]
    fn natural_generator_order() {
        let a = default_alphabet(&parse("x10 + x2 + b").unwrap()).unwrap();
        let names: Vec<_> = a.iter().map(|g| g.symbol().to_string()).collect();
        assert_eq!(names, ["b", "x2", "x10"]);
    }
}
