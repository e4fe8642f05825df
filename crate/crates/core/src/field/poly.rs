//! Sparse multivariate polynomials over the rationals.
//!
//! These are the numerators and denominators of tower field elements. Every
//! variable carries the tower level it was introduced at; variables are
//! ordered by `(level, name)` and monomials by graded lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug)]
struct VarData {
    name: String,
    level: u8,
}

/// A named indeterminate of a given tower level.
#[derive(Clone, Debug)]
pub struct Var(Arc<VarData>);

impl Var {
    pub fn new(name: impl Into<String>, level: u8) -> Self {
        Var(Arc::new(VarData {
            name: name.into(),
            level,
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn level(&self) -> u8 {
        self.0.level
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.level == other.0.level && self.0.name == other.0.name)
    }
}

impl Eq for Var {}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.level.hash(state);
        self.0.name.hash(state);
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .level
            .cmp(&other.0.level)
            .then_with(|| self.0.name.cmp(&other.0.name))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

/// Power product, sorted by variable with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - f)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Split off the power of `v`.
    fn split(&self, v: &Var) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, k)| {
                if w == v {
                    e = *k;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Monomial(rest))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// smallest variable decides.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match self.0[i].1.cmp(&other.0[j].1) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    o => return o,
                },
            }
        }
        match (i < self.0.len(), j < other.0.len()) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

/// Polynomial with rational coefficients; terms sorted by descending grlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, BigRational)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        MPoly {
            terms: vec![(Monomial::var(v, 1), BigRational::one())],
        }
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    fn from_map(map: BTreeMap<Monomial, BigRational>) -> Self {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        MPoly::from_map(map)
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant term value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn max_level(&self) -> u8 {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().map(|(v, _)| v.level()))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly { terms: out }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigRational) -> MPoly {
        // Multiplying by a monomial preserves the term order.
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), d * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                *map.entry(m.mul(n)).or_insert_with(BigRational::zero) += c * d;
            }
        }
        MPoly::from_map(map)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.lead().cloned().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((m, c)) = rem.lead().cloned() {
            let qm = m.div(&dm)?;
            let qc = c / &dc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // Quotient terms were produced in strictly descending order.
        Some(MPoly { terms: quot })
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.lead() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn eval(&self, assign: &dyn Fn(&Var) -> Option<BigRational>) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let x = assign(v)?;
                t *= num_traits::pow(x, *e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Substitute some variables by polynomials.
    pub fn substitute(&self, sub: &dyn Fn(&Var) -> Option<MPoly>) -> MPoly {
        let mut acc = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (v, e) in &m.0 {
                let f = sub(v).unwrap_or_else(|| MPoly::var(v.clone()));
                t = t.mul(&f.pow(*e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: &Var) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split(v);
            if e == 0 {
                None
            } else {
                Some((
                    rest.mul(&Monomial::var(v.clone(), e - 1)),
                    c * BigRational::from_integer(BigInt::from(e)),
                ))
            }
        }))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn coeff_denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    fn degree_in(&self, v: &Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    fn to_univariate(&self, v: &Var) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(MPoly::from_terms).collect()
    }

    fn from_univariate(coeffs: &[MPoly], v: &Var) -> MPoly {
        let mut acc = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_term(&Monomial::var(v.clone(), k as u32), &BigRational::one()));
            }
        }
        acc
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return MPoly::one();
        }
        if self == other {
            return self.monic();
        }
        let va = self.vars();
        let vb = other.vars();
        let v = va.union(&vb).next().cloned().expect("nonconstant");
        if !va.contains(&v) {
            return univariate_content(&other.to_univariate(&v)).gcd(self);
        }
        if !vb.contains(&v) {
            return univariate_content(&self.to_univariate(&v)).gcd(other);
        }
        let ua = self.to_univariate(&v);
        let ub = other.to_univariate(&v);
        let ca = univariate_content(&ua);
        let cb = univariate_content(&ub);
        let c = ca.gcd(&cb);
        let mut pa = primitive(&ua, &ca);
        let mut pb = primitive(&ub, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        loop {
            let r = pseudo_remainder(&pa, &pb);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                pb = vec![MPoly::one()];
                break;
            }
            let cr = univariate_content(&r);
            pa = pb;
            pb = primitive(&r, &cr);
        }
        let g = MPoly::from_univariate(&pb, &v);
        c.mul(&g).monic()
    }

    pub fn lcm(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let g = self.gcd(other);
        self.mul(other)
            .div_exact(&g)
            .expect("gcd divides the product")
            .monic()
    }

    /// Display with a custom variable renderer.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                parts.push(a.to_string());
            }
            for (v, e) in &m.0 {
                if *e == 1 {
                    parts.push(v.name().to_string());
                } else {
                    parts.push(format!("{}^{}", v.name(), e));
                }
            }
            s.push_str(&parts.join("*"));
        }
        s
    }
}

fn univariate_content(coeffs: &[MPoly]) -> MPoly {
    coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .fold(MPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive(coeffs: &[MPoly], content: &MPoly) -> Vec<MPoly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides every coefficient"))
        .collect()
}

fn trim(mut p: Vec<MPoly>) -> Vec<MPoly> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn pseudo_remainder(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = trim(a.to_vec());
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<MPoly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
        }
        r = trim(next);
    }
    r
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let y = MPoly::var(Var::new("y", 1));
        let t = MPoly::var(Var::new("t", 1));
        let a = y.mul(&y).sub(&MPoly::one()); // y^2 - 1
        let b = y.sub(&MPoly::one()).mul(&t.add(&y)); // (y-1)(t+y)
        assert_eq!(a.gcd(&b), y.sub(&MPoly::one()));
        let c = a.mul(&t).scale(&q(3));
        assert_eq!(c.gcd(&a), a.monic());
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let y = MPoly::var(Var::new("y", 1));
        let a = y.mul(&y).sub(&MPoly::one());
        assert_eq!(
            a.div_exact(&y.sub(&MPoly::one())),
            Some(y.add(&MPoly::one()))
        );
        assert!(a.div_exact(&y).is_none());
    }

    #[test]
    fn grlex_orders_by_degree_then_variables() {
        let a = Var::new("a", 1);
        let b = Var::new("b", 1);
        let ab = Monomial::var(a.clone(), 1).mul(&Monomial::var(b.clone(), 1));
        let bb = Monomial::var(b.clone(), 2);
        let aaa = Monomial::var(a.clone(), 3);
        assert!(aaa > ab);
        assert!(ab > bb);
        assert!(Monomial::var(a, 1) > Monomial::var(b, 1));
    }
}
