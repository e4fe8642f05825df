use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{MPoly, Var};
use super::FieldError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct RatFunc {
    num: MPoly,
    den: MPoly,
}

/// Scalar of the field tower.
///
/// Level 0 is `Q`; an element of level `k > 0` is a reduced quotient of
/// polynomials whose variables live at levels `1..=k`. The nested field
/// `K(h*)(h'*)` is represented by rational functions in the union of the
/// variables, which is the same field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Frac(Arc<RatFuncRepr>),
}

/// Opaque wrapper so the enum can stay public without leaking internals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncRepr(RatFunc);

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement::zero()
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        FieldElement::Rat(r)
    }

    pub fn var(v: Var) -> Self {
        FieldElement::from_poly(MPoly::var(v))
    }

    pub fn from_poly(p: MPoly) -> Self {
        match p.as_constant() {
            Some(c) => FieldElement::Rat(c),
            None => FieldElement::Frac(Arc::new(RatFuncRepr(RatFunc {
                num: p,
                den: MPoly::one(),
            }))),
        }
    }

    /// Reduced quotient `num / den`.
    pub fn ratio(num: MPoly, den: MPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return FieldElement::zero();
        }
        if let Some(c) = den.as_constant() {
            return FieldElement::from_poly(num.scale(&c.recip()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.lead_coeff().recip();
        let num = num.scale(&lc);
        let den = den.scale(&lc);
        if den.is_one() {
            return FieldElement::from_poly(num);
        }
        FieldElement::Frac(Arc::new(RatFuncRepr(RatFunc { num, den })))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rat(r) => Some(r),
            FieldElement::Frac(_) => None,
        }
    }

    /// Tower level: the highest level among the variables present.
    pub fn level(&self) -> u8 {
        match self {
            FieldElement::Rat(_) => 0,
            FieldElement::Frac(f) => f.0.num.max_level().max(f.0.den.max_level()),
        }
    }

    pub fn numer(&self) -> MPoly {
        match self {
            FieldElement::Rat(r) => MPoly::constant(r.clone()),
            FieldElement::Frac(f) => f.0.num.clone(),
        }
    }

    pub fn denom(&self) -> MPoly {
        match self {
            FieldElement::Rat(_) => MPoly::one(),
            FieldElement::Frac(f) => f.0.den.clone(),
        }
    }

    /// True when the denominator is a constant.
    pub fn is_polynomial(&self) -> bool {
        match self {
            FieldElement::Rat(_) => true,
            FieldElement::Frac(f) => f.0.den.is_one(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        match self {
            FieldElement::Rat(_) => BTreeSet::new(),
            FieldElement::Frac(f) => {
                let mut s = f.0.num.vars();
                s.extend(f.0.den.vars());
                s
            }
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rat(r) if r.is_zero() => Err(FieldError::DivisionByZero),
            FieldElement::Rat(r) => Ok(FieldElement::Rat(r.recip())),
            FieldElement::Frac(f) => Ok(Self::normalize(f.0.den.clone(), f.0.num.clone())),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a / b),
            _ if other.is_polynomial() && other.numer().is_constant() => {
                let c = other.numer().lead_coeff();
                self.scale(&c.recip())
            }
            _ => Self::normalize(
                self.numer().mul(&other.denom()),
                self.denom().mul(&other.numer()),
            ),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        match self {
            FieldElement::Rat(r) => FieldElement::Rat(r * c),
            FieldElement::Frac(_) if c.is_zero() => FieldElement::zero(),
            FieldElement::Frac(f) => FieldElement::Frac(Arc::new(RatFuncRepr(RatFunc {
                num: f.0.num.scale(c),
                den: f.0.den.clone(),
            }))),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluate at a rational point; `None` if a variable is unassigned or
    /// the denominator vanishes.
    pub fn eval(&self, assign: &dyn Fn(&Var) -> Option<BigRational>) -> Option<BigRational> {
        match self {
            FieldElement::Rat(r) => Some(r.clone()),
            FieldElement::Frac(f) => {
                let d = f.0.den.eval(assign)?;
                if d.is_zero() {
                    return None;
                }
                Some(f.0.num.eval(assign)? / d)
            }
        }
    }

    /// Sign of the leading numerator coefficient (0 for zero).
    pub fn leading_sign(&self) -> i32 {
        let c = match self {
            FieldElement::Rat(r) => r.clone(),
            FieldElement::Frac(f) => f.0.num.lead_coeff(),
        };
        if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Rendering suitable as a factor inside a product.
    pub fn render_factor(&self) -> String {
        match self {
            FieldElement::Rat(r) => {
                if r.is_negative() || !r.denom().is_one() {
                    format!("({})", r)
                } else {
                    r.to_string()
                }
            }
            FieldElement::Frac(_) => format!("({})", self),
        }
    }

    /// Check that no variable name is used at two different levels.
    pub fn compatible(&self, other: &Self) -> bool {
        let a = self.vars();
        if a.is_empty() {
            return true;
        }
        other
            .vars()
            .iter()
            .all(|v| a.iter().all(|w| w.name() != v.name() || w.level() == v.level()))
    }
}

fn add_fe(a: &FieldElement, b: &FieldElement) -> FieldElement {
    match (a, b) {
        (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x + y),
        _ => {
            if a.is_zero() {
                return b.clone();
            }
            if b.is_zero() {
                return a.clone();
            }
            let (an, ad, bn, bd) = (a.numer(), a.denom(), b.numer(), b.denom());
            if ad == bd {
                if ad.is_one() {
                    return FieldElement::from_poly(an.add(&bn));
                }
                return FieldElement::normalize(an.add(&bn), ad);
            }
            FieldElement::normalize(an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
        }
    }
}

fn mul_fe(a: &FieldElement, b: &FieldElement) -> FieldElement {
    match (a, b) {
        (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x * y),
        (FieldElement::Rat(x), other) | (other, FieldElement::Rat(x)) => other.scale(x),
        _ => {
            if a.is_polynomial() && b.is_polynomial() {
                return FieldElement::from_poly(a.numer().mul(&b.numer()));
            }
            FieldElement::normalize(a.numer().mul(&b.numer()), a.denom().mul(&b.denom()))
        }
    }
}

fn neg_fe(a: &FieldElement) -> FieldElement {
    match a {
        FieldElement::Rat(x) => FieldElement::Rat(-x),
        FieldElement::Frac(f) => FieldElement::Frac(Arc::new(RatFuncRepr(RatFunc {
            num: f.0.num.neg(),
            den: f.0.den.clone(),
        }))),
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        add_fe(self, rhs)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        add_fe(&self, &rhs)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        add_fe(self, &neg_fe(rhs))
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        mul_fe(self, rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        mul_fe(&self, &rhs)
    }
}

/// Panics on division by zero; use [`FieldElement::checked_div`] otherwise.
impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        neg_fe(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        neg_fe(&self)
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = add_fe(self, rhs);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = mul_fe(self, rhs);
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{}", r),
            FieldElement::Frac(r) => {
                let num = &r.0.num;
                if r.0.den.is_one() {
                    write!(f, "{}", num)
                } else if num.terms().len() == 1 && num.terms()[0].1.is_one() {
                    write!(f, "{}/({})", num, r.0.den)
                } else {
                    write!(f, "({})/({})", num, r.0.den)
                }
            }
        }
    }
}

/// Arithmetic operations exposed through [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: rejects division by zero and operands whose variable
/// declarations disagree about tower levels.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
    if !a.compatible(b) {
        return Err(FieldError::LevelMismatch {
            left: a.level(),
            right: b.level(),
        });
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> FieldElement {
        FieldElement::var(Var::new("y", 1))
    }

    #[test]
    fn rational_sum() {
        let s = FieldElement::from_ratio(1, 2) + FieldElement::from_ratio(1, 3);
        assert_eq!(s, FieldElement::from_ratio(5, 6));
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let one = FieldElement::one();
        let a = &y() / &(&y() + &one);
        let b = &(&y() + &one) / &y();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn gcd_cancellation() {
        let one = FieldElement::one();
        let num = &(&y() * &y()) - &one;
        let den = &y() - &one;
        assert_eq!(&num / &den, &y() + &one);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let r = field_arith(&y(), &FieldElement::zero(), FieldOp::Div);
        assert_eq!(r, Err(FieldError::DivisionByZero));
    }

    #[test]
    fn conflicting_levels_are_rejected() {
        let a = FieldElement::var(Var::new("y", 1));
        let b = FieldElement::var(Var::new("y", 2));
        assert!(matches!(
            field_arith(&a, &b, FieldOp::Add),
            Err(FieldError::LevelMismatch { .. })
        ));
    }

    #[test]
    fn denominators_are_monic() {
        let a = &FieldElement::one() / &(&y() * &FieldElement::from_int(-3));
        assert_eq!(a.denom(), MPoly::var(Var::new("y", 1)));
        assert_eq!(a.to_string(), "(-1/3)/(y)");
    }
}
