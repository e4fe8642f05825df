//! Exact scalars: rationals and towers of rational function fields, plus the
//! linear algebra built on them.

mod echelon;
mod element;
mod matrix;
mod parse;
mod poly;

pub use echelon::Echelon;
pub use element::{field_arith, FieldElement, FieldOp, RatFuncRepr};
pub use matrix::{clear_vector, Matrix, Vector};
pub use parse::{parse_expr, Expr, ExprContext};
pub use poly::{MPoly, Monomial, Var};

use num_rational::BigRational;
use thiserror::Error;

/// Deepest tower level the constructions may create.
pub const MAX_TOWER_DEPTH: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower level mismatch ({left} vs {right})")]
    LevelMismatch { left: u8, right: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("{0}")]
    Semantic(String),
}

/// Parses coefficient strings over a declared set of tower variables.
#[derive(Clone, Debug, Default)]
pub struct FieldContext {
    vars: Vec<Var>,
}

impl FieldContext {
    pub fn new(vars: Vec<Var>) -> Self {
        FieldContext { vars }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn parse(&self, s: &str) -> Result<FieldElement, ParseError> {
        parse_expr(s)?.eval(self)
    }
}

impl ExprContext for FieldContext {
    type Value = FieldElement;

    fn constant(&self, c: BigRational) -> FieldElement {
        FieldElement::from_rational(c)
    }

    fn variable(&self, name: &str) -> Result<FieldElement, ParseError> {
        self.vars
            .iter()
            .find(|v| v.name() == name)
            .map(|v| FieldElement::var(v.clone()))
            .ok_or_else(|| ParseError::UnknownSymbol(name.to_string()))
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        -a
    }

    fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, ParseError> {
        a.checked_div(b)
            .map_err(|e| ParseError::Semantic(e.to_string()))
    }

    fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement, ParseError> {
        let e = i32::try_from(e).map_err(|_| ParseError::Semantic("exponent too large".into()))?;
        a.pow(e).map_err(|err| ParseError::Semantic(err.to_string()))
    }
}

/// Dot product of two vectors.
pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn zero_vector(n: usize) -> Vector {
    vec![FieldElement::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = FieldElement::one();
    v
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &FieldElement, a: &[FieldElement]) -> Vector {
    a.iter().map(|x| c * x).collect()
}
