//! Expression syntax for polynomials in zeta and its derivatives.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | number 'i' | 'i' | 'D' integer | 'D{' integer '}'
//!         | 'zeta' | "zeta'" ... | "zeta'(" integer ')'
//!         | 'series' json-object | 'series(' json-object ')' | '(' expr ')'
//! ```
//!
//! `D<k>` and `zeta` with `k` primes (or `zeta'(k)`) both denote the `k`-th derivative
//! of the base function, which is zeta.

use num_complex::Complex64;
use polyzeta::{Polynomial, Series};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(Complex64),
    Var(usize),
    Series(Box<Series>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Pow(Box<Node>, u32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<usize, CliError> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err("expected a non-negative integer");
        }
        let v = digits.parse().or_else(|_| self.err("integer out of range"))?;
        self.pos += digits.len();
        Ok(v)
    }

    fn number(&mut self) -> Result<f64, CliError> {
        let s = self.rest();
        let b = s.as_bytes();
        let mut i = 0;
        while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
            i += 1;
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            if j < b.len() && b[j].is_ascii_digit() {
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let v: f64 = s[..i].parse().or_else(|_| self.err(format!("malformed number `{}`", &s[..i])))?;
        self.pos += i;
        Ok(v)
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let r = self.rest();
        if r.starts_with(word) && !r[word.len()..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn json_object(&mut self) -> Result<Value, CliError> {
        self.skip_ws();
        if !self.rest().starts_with('{') {
            return self.err("expected `{` after `series`");
        }
        let mut depth = 0usize;
        let mut in_str = false;
        let mut escaped = false;
        for (i, c) in self.rest().char_indices() {
            if in_str {
                match (escaped, c) {
                    (true, _) => escaped = false,
                    (false, '\\') => escaped = true,
                    (false, '"') => in_str = false,
                    _ => {}
                }
                continue;
            }
            match c {
                '"' => in_str = true,
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        let text = &self.rest()[..=i];
                        let v = serde_json::from_str(text).or_else(|e| self.err(format!("bad series json: {e}")))?;
                        self.pos += i + 1;
                        return Ok(v);
                    }
                }
                _ => {}
            }
        }
        self.err("unterminated series json")
    }

    fn atom(&mut self) -> Result<Node, CliError> {
        match self.peek() {
            None => self.err("unexpected end of expression"),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let v = self.number()?;
                if self.rest().starts_with('i') && !self.rest()[1..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                    Ok(Node::Const(Complex64::new(0.0, v)))
                } else {
                    Ok(Node::Const(Complex64::new(v, 0.0)))
                }
            }
            Some('D') => {
                self.pos += 1;
                if self.rest().starts_with('{') {
                    self.pos += 1;
                    let k = self.integer()?;
                    if !self.eat('}') {
                        return self.err("expected `}`");
                    }
                    return Ok(Node::Var(k));
                }
                Ok(Node::Var(self.integer()?))
            }
            Some(_) if self.keyword("series") => {
                let paren = self.eat('(');
                let start = self.pos;
                let v = self.json_object()?;
                if paren && !self.eat(')') {
                    return self.err("expected `)` after series json");
                }
                let s = Series::from_json(&v).map_err(|e| CliError::Parse { pos: start, msg: e.to_string() })?;
                Ok(Node::Series(Box::new(s)))
            }
            Some(_) if self.rest().starts_with("zeta") => {
                self.pos += 4;
                let mut k = 0;
                while self.rest().starts_with('\'') {
                    self.pos += 1;
                    k += 1;
                }
                if k == 1 && self.rest().starts_with('(') {
                    self.pos += 1;
                    k = self.integer()?;
                    if !self.eat(')') {
                        return self.err("expected `)` after derivative order");
                    }
                }
                if self.rest().starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                    return self.err("unknown identifier");
                }
                Ok(Node::Var(k))
            }
            Some(_) if self.keyword("i") => Ok(Node::Const(Complex64::new(0.0, 1.0))),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn power(&mut self) -> Result<Node, CliError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
            return Ok(Node::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Node, CliError> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn term(&mut self) -> Result<Node, CliError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn expr(&mut self) -> Result<Node, CliError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }
}

fn max_var(n: &Node) -> usize {
    match n {
        Node::Var(k) => *k,
        Node::Const(_) | Node::Series(_) => 0,
        Node::Neg(a) | Node::Pow(a, _) => max_var(a),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => max_var(a).max(max_var(b)),
    }
}

fn build(n: &Node, vars: usize) -> polyzeta::Result<Polynomial> {
    Ok(match n {
        Node::Const(c) => Polynomial::constant(vars, Series::constant(*c))?,
        Node::Series(s) => Polynomial::constant(vars, (**s).clone())?,
        Node::Var(k) => Polynomial::variable(*k, vars)?,
        Node::Neg(a) => build(a, vars)?.neg(),
        Node::Pow(a, e) => build(a, vars)?.pow(*e)?,
        Node::Add(a, b) => build(a, vars)?.add(&build(b, vars)?)?,
        Node::Sub(a, b) => build(a, vars)?.add(&build(b, vars)?.neg())?,
        Node::Mul(a, b) => build(a, vars)?.mul(&build(b, vars)?)?,
    })
}

/// Parses `text` into a polynomial over `D0, ..., D<max index used>`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, CliError> {
    let mut p = Parser { src: text, pos: 0 };
    let node = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let vars = max_var(&node) + 1;
    if vars > polyzeta::poly::MAX_L + 1 {
        return Err(CliError::Core(polyzeta::Error::DegreeCapExceeded(format!(
            "derivative index {} > {}",
            vars - 1,
            polyzeta::poly::MAX_L
        ))));
    }
    Ok(build(&node, vars)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_reported() {
        match parse_polynomial("D0 + * D1") {
            Err(CliError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("D0 D1"), Err(CliError::Parse { pos: 3, .. })));
        assert!(matches!(parse_polynomial("zetaa"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_polynomial("series{\"terms\": [}"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn zeta_spellings() {
        let a = parse_polynomial("zeta''").unwrap();
        let b = parse_polynomial("zeta'(2)").unwrap();
        let c = parse_polynomial("D2").unwrap();
        assert_eq!(a, c);
        assert_eq!(b, c);
        assert_eq!(parse_polynomial("zeta").unwrap(), parse_polynomial("D0").unwrap());
        assert_eq!(parse_polynomial("D{2}").unwrap(), c);
    }

    #[test]
    fn numbers() {
        let p = parse_polynomial("1.5e-3 + 2i").unwrap();
        let c = p.terms().values().next().unwrap().as_constant().unwrap();
        assert_eq!(c, Complex64::new(1.5e-3, 2.0));
    }
}
