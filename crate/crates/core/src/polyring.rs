//! The symmetric algebra `S(q)`: sparse polynomials in the basis of `q` with
//! the Lie–Poisson bracket.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::field::{ExprContext, FieldContext, FieldElement, FieldError, ParseError, Vector};
use crate::liealg::{LieAlgebra, LinearForm};

/// Exponent vector; negative entries only occur for inverted central
/// variables.
pub type Exponent = Vec<i32>;

pub(crate) type Terms = BTreeMap<Exponent, FieldElement>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("scaling factor is not a constant")]
    NotConstant,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Element of `S(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyElement {
    dim: usize,
    terms: Terms,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    /// Multiply the left operand by the (constant) right operand.
    Scale,
}

pub fn poly_arith(f: &PolyElement, g: &PolyElement, op: PolyOp) -> Result<PolyElement, PolyError> {
    if f.dim != g.dim {
        return Err(PolyError::DimensionMismatch(f.dim, g.dim));
    }
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Sub => f.sub(g),
        PolyOp::Mul => f.mul(g),
        PolyOp::Scale => {
            let c = g.as_constant().ok_or(PolyError::NotConstant)?;
            f.scale(&c)
        }
    })
}

pub(crate) fn add_term(terms: &mut Terms, e: Exponent, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn add_scaled(terms: &mut Terms, other: &Terms, c: &FieldElement) {
    if c.is_zero() {
        return;
    }
    for (e, x) in other {
        add_term(terms, e.clone(), x * c);
    }
}

pub(crate) fn degree_of(e: &[i32]) -> i32 {
    e.iter().sum()
}

/// Graded order: higher degree first, then lexicographically larger first.
pub(crate) fn grlex_desc(a: &[i32], b: &[i32]) -> Ordering {
    degree_of(b).cmp(&degree_of(a)).then_with(|| b.cmp(a))
}

/// Deterministic rendering, `c*x^2*y` style, in graded-lex order.
pub(crate) fn render_terms(labels: &[String], terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut keys: Vec<&Exponent> = terms.keys().collect();
    keys.sort_by(|a, b| grlex_desc(a, b));
    let mut s = String::new();
    for e in keys {
        let c = &terms[e];
        let neg = c.leading_sign() < 0;
        let a = if neg { -c } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => factors.push(labels[i].clone()),
                _ => factors.push(format!("{}^{}", labels[i], k)),
            }
        }
        if factors.is_empty() {
            s.push_str(&match &a {
                FieldElement::Rat(_) => a.to_string(),
                _ => a.render_factor(),
            });
        } else {
            if !a.is_one() {
                s.push_str(&a.render_factor());
                s.push('*');
            }
            s.push_str(&factors.join("*"));
        }
    }
    s
}

impl PolyElement {
    pub fn zero(dim: usize) -> Self {
        PolyElement {
            dim,
            terms: Terms::new(),
        }
    }

    pub fn constant(dim: usize, c: FieldElement) -> Self {
        let mut p = PolyElement::zero(dim);
        add_term(&mut p.terms, vec![0; dim], c);
        p
    }

    pub fn one(dim: usize) -> Self {
        PolyElement::constant(dim, FieldElement::one())
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        PolyElement::monomial(e, FieldElement::one())
    }

    pub fn monomial(e: Exponent, c: FieldElement) -> Self {
        let mut p = PolyElement::zero(e.len());
        add_term(&mut p.terms, e, c);
        p
    }

    /// Linear polynomial `Σ vᵢ xᵢ`.
    pub fn linear(v: &[FieldElement]) -> Self {
        let dim = v.len();
        let mut p = PolyElement::zero(dim);
        for (i, c) in v.iter().enumerate() {
            let mut e = vec![0; dim];
            e[i] = 1;
            add_term(&mut p.terms, e, c.clone());
        }
        p
    }

    pub(crate) fn from_terms(dim: usize, terms: Terms) -> Self {
        PolyElement { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    pub fn coeff(&self, e: &[i32]) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn has_laurent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&k| k < 0))
    }

    /// Highest total degree (negative exponents count negatively); `None`
    /// for zero.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| degree_of(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| degree_of(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|k| k == d),
        }
    }

    /// Part of total degree `d`.
    pub fn homogeneous_part(&self, d: i32) -> PolyElement {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| degree_of(e) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        PolyElement::from_terms(self.dim, terms)
    }

    /// Top-degree part.
    pub fn leading_form(&self) -> PolyElement {
        match self.degree() {
            None => self.clone(),
            Some(d) => self.homogeneous_part(d),
        }
    }

    pub fn add(&self, other: &PolyElement) -> PolyElement {
        let mut t = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut t, e.clone(), c.clone());
        }
        PolyElement::from_terms(self.dim, t)
    }

    pub fn neg(&self) -> PolyElement {
        self.scale(&-FieldElement::one())
    }

    pub fn sub(&self, other: &PolyElement) -> PolyElement {
        let mut t = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut t, e.clone(), -c);
        }
        PolyElement::from_terms(self.dim, t)
    }

    pub fn scale(&self, c: &FieldElement) -> PolyElement {
        let mut t = Terms::new();
        add_scaled(&mut t, &self.terms, c);
        PolyElement::from_terms(self.dim, t)
    }

    pub fn mul(&self, other: &PolyElement) -> PolyElement {
        let mut t = Terms::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_term(&mut t, e, c1 * c2);
            }
        }
        PolyElement::from_terms(self.dim, t)
    }

    pub fn pow(&self, k: u32) -> PolyElement {
        let mut acc = PolyElement::one(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂F/∂xᵢ`.
    pub fn derivative(&self, i: usize) -> PolyElement {
        let mut t = Terms::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            add_term(&mut t, e2, c * &FieldElement::from_int(e[i] as i64));
        }
        PolyElement::from_terms(self.dim, t)
    }

    /// Value at a point of `q*` (given by its coordinates).
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, FieldError> {
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    term = &term * &x.pow(k)?;
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Gradient `d_x F` at the point `x ∈ q*`.
    pub fn differential_at(&self, point: &LinearForm) -> Result<Vector, FieldError> {
        (0..self.dim).map(|i| self.derivative(i).eval(point)).collect()
    }

    /// `Σ γᵢ ∂F/∂xᵢ`.
    pub fn directional_derivative(&self, gamma: &LinearForm) -> PolyElement {
        let mut acc = PolyElement::zero(self.dim);
        for (i, g) in gamma.iter().enumerate() {
            if !g.is_zero() {
                acc = acc.add(&self.derivative(i).scale(g));
            }
        }
        acc
    }

    /// `∂ᵏ_γ H` by repeated directional differentiation.
    pub fn gamma_shift(&self, gamma: &LinearForm, k: u32) -> PolyElement {
        let mut h = self.clone();
        for _ in 0..k {
            if h.is_zero() {
                break;
            }
            h = h.directional_derivative(gamma);
        }
        h
    }

    /// Substitutes each variable by a polynomial (no Laurent content allowed
    /// in `self` for non-monomial images).
    pub fn substitute(&self, images: &[PolyElement], target_dim: usize) -> PolyElement {
        let mut acc = PolyElement::zero(target_dim);
        for (e, c) in &self.terms {
            let mut term = PolyElement::constant(target_dim, c.clone());
            for (i, &k) in e.iter().enumerate() {
                assert!(k >= 0, "substitution into a Laurent term");
                if k > 0 {
                    term = term.mul(&images[i].pow(k as u32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Multiplies every coefficient by a field element possibly depending on
    /// the term (used for clearing denominators).
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> PolyElement {
        let mut t = Terms::new();
        for (e, c) in &self.terms {
            add_term(&mut t, e.clone(), f(c));
        }
        PolyElement::from_terms(self.dim, t)
    }

    pub fn render(&self, labels: &[String]) -> String {
        render_terms(labels, &self.terms)
    }
}

/// `{F, G}` extending `{xᵢ, xⱼ} = [xᵢ, xⱼ]` as a biderivation.
pub fn poisson(l: &LieAlgebra, f: &PolyElement, g: &PolyElement) -> PolyElement {
    let n = l.dim();
    let df: Vec<PolyElement> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<PolyElement> = (0..n).map(|i| g.derivative(i)).collect();
    let mut acc = PolyElement::zero(n);
    for (&(i, j), v) in l.brackets() {
        let coeff = df[i].mul(&dg[j]).sub(&df[j].mul(&dg[i]));
        if coeff.is_zero() {
            continue;
        }
        acc = acc.add(&coeff.mul(&PolyElement::linear(v)));
    }
    acc
}

/// Parses polynomials written in the basis labels; tower variables of the
/// algebra may appear in coefficients.
pub struct PolyContext<'a> {
    labels: &'a [String],
    field: &'a FieldContext,
}

impl<'a> PolyContext<'a> {
    pub fn new(l: &'a LieAlgebra) -> Self {
        PolyContext {
            labels: l.labels(),
            field: l.field(),
        }
    }

    pub fn parse(&self, s: &str) -> Result<PolyElement, ParseError> {
        crate::field::parse_expr(s)?.eval(self)
    }
}

impl ExprContext for PolyContext<'_> {
    type Value = PolyElement;

    fn constant(&self, c: BigRational) -> PolyElement {
        PolyElement::constant(self.labels.len(), FieldElement::from_rational(c))
    }

    fn variable(&self, name: &str) -> Result<PolyElement, ParseError> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Ok(PolyElement::var(self.labels.len(), i));
        }
        let c = self.field.variable(name)?;
        Ok(PolyElement::constant(self.labels.len(), c))
    }

    fn add(&self, a: &PolyElement, b: &PolyElement) -> PolyElement {
        a.add(b)
    }

    fn mul(&self, a: &PolyElement, b: &PolyElement) -> PolyElement {
        a.mul(b)
    }

    fn neg(&self, a: &PolyElement) -> PolyElement {
        a.neg()
    }

    fn div(&self, a: &PolyElement, b: &PolyElement) -> Result<PolyElement, ParseError> {
        let c = b
            .as_constant()
            .ok_or_else(|| ParseError::Semantic("division by a nonconstant".into()))?;
        let inv = c.inv().map_err(|e| ParseError::Semantic(e.to_string()))?;
        Ok(a.scale(&inv))
    }

    fn pow(&self, a: &PolyElement, e: i64) -> Result<PolyElement, ParseError> {
        let e32 = i32::try_from(e).map_err(|_| ParseError::Semantic("exponent too large".into()))?;
        if e32 >= 0 {
            return Ok(a.pow(e32 as u32));
        }
        // Negative powers only for single monomials.
        if a.terms.len() != 1 {
            return Err(ParseError::Semantic("negative power of a non-monomial".into()));
        }
        let (m, c) = a.terms.iter().next().expect("one term");
        let c = c
            .pow(e32)
            .map_err(|err| ParseError::Semantic(err.to_string()))?;
        Ok(PolyElement::monomial(m.iter().map(|k| k * e32).collect(), c))
    }
}
