//! Small infix expression language shared by coefficient strings, symmetric
//! polynomials and enveloping-algebra elements.
//!
//! Grammar: sums and differences of products; `*` and `/` bind tighter,
//! `^` takes an integer exponent. Products are evaluated left to right, which
//! matters for noncommutative targets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Interprets parsed expressions in some ring.
pub trait ExprContext {
    type Value: Clone;
    fn constant(&self, c: BigRational) -> Self::Value;
    fn variable(&self, name: &str) -> Result<Self::Value, ParseError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, ParseError>;
    fn pow(&self, a: &Self::Value, e: i64) -> Result<Self::Value, ParseError> {
        if e < 0 {
            return Err(ParseError::Semantic("negative exponent".into()));
        }
        let mut acc = self.constant(BigRational::one());
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        Ok(acc)
    }
}

impl Expr {
    pub fn eval<C: ExprContext>(&self, ctx: &C) -> Result<C::Value, ParseError> {
        Ok(match self {
            Expr::Num(c) => ctx.constant(c.clone()),
            Expr::Ident(s) => ctx.variable(s)?,
            Expr::Neg(a) => ctx.neg(&a.eval(ctx)?),
            Expr::Add(a, b) => ctx.add(&a.eval(ctx)?, &b.eval(ctx)?),
            Expr::Sub(a, b) => ctx.add(&a.eval(ctx)?, &ctx.neg(&b.eval(ctx)?)),
            Expr::Mul(a, b) => ctx.mul(&a.eval(ctx)?, &b.eval(ctx)?),
            Expr::Div(a, b) => ctx.div(&a.eval(ctx)?, &b.eval(ctx)?)?,
            Expr::Pow(a, e) => ctx.pow(&a.eval(ctx)?, *e)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ParseError::Syntax(format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: i64 = n
                        .try_into()
                        .map_err(|_| ParseError::Syntax("exponent too large".into()))?;
                    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(ParseError::Syntax("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::Syntax("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            other => Err(ParseError::Syntax(format!("unexpected token {:?}", other))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    if p.toks.is_empty() {
        return Err(ParseError::Syntax("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax(format!(
            "trailing input after position {}",
            p.pos
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use crate::field::{FieldContext, FieldElement, Var};

    #[test]
    fn parses_rational_function_round_trip() {
        let ctx = FieldContext::new(vec![Var::new("y", 1), Var::new("t", 1)]);
        let a = ctx.parse("(y^2 - 1)/(y - 1) + 3/4*t").unwrap();
        let y = FieldElement::var(Var::new("y", 1));
        let t = FieldElement::var(Var::new("t", 1));
        let expected = &(&y + &FieldElement::one()) + &(&FieldElement::from_ratio(3, 4) * &t);
        assert_eq!(a, expected);
        let b = ctx.parse(&a.to_string()).unwrap();
        assert_eq!(a, b);
        let c = &FieldElement::one() / &(&y * &t + FieldElement::from_int(2));
        assert_eq!(ctx.parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn rejects_garbage() {
        let ctx = FieldContext::new(vec![]);
        assert!(ctx.parse("1.5").is_err());
        assert!(ctx.parse("(1").is_err());
        assert!(ctx.parse("q").is_err());
        assert!(ctx.parse("1/0").is_err());
    }
}
