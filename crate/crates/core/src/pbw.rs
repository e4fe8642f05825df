//! The enveloping algebra `U(q)` in PBW normal form, localised at central
//! basis vectors.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use parking_lot::Mutex;
use thiserror::Error;

use crate::field::{ExprContext, FieldElement, Matrix, ParseError};
use crate::liealg::{LieAlgebra, Subspace};
use crate::polyring::{add_scaled, add_term, degree_of, render_terms, Exponent, PolyElement, Terms};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PbwError {
    #[error("negative exponent at non-central index {0}")]
    NonCentralLaurent(usize),
    #[error("index {0} is not central")]
    NotCentral(usize),
    #[error("cannot specialise to zero with negative powers present")]
    ZeroWithLaurent,
    #[error("ambient dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

/// Element of `U(q)[z⁻¹]`: ordered monomials `x₁^{a₁}⋯xₙ^{aₙ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWElement {
    dim: usize,
    terms: Terms,
}

impl PBWElement {
    pub fn zero(dim: usize) -> Self {
        PBWElement {
            dim,
            terms: Terms::new(),
        }
    }

    pub fn constant(dim: usize, c: FieldElement) -> Self {
        let mut t = Terms::new();
        add_term(&mut t, vec![0; dim], c);
        PBWElement { dim, terms: t }
    }

    pub fn one(dim: usize) -> Self {
        PBWElement::constant(dim, FieldElement::one())
    }

    pub fn monomial(e: Exponent, c: FieldElement) -> Self {
        let mut t = Terms::new();
        let dim = e.len();
        add_term(&mut t, e, c);
        PBWElement { dim, terms: t }
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        PBWElement::monomial(e, FieldElement::one())
    }

    /// Degree-one element `Σ vᵢ xᵢ`.
    pub fn linear(v: &[FieldElement]) -> Self {
        let p = PolyElement::linear(v);
        PBWElement {
            dim: v.len(),
            terms: p.terms().clone(),
        }
    }

    pub(crate) fn from_terms(dim: usize, terms: Terms) -> Self {
        PBWElement { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
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

    /// Filtration degree (negative central exponents count negatively).
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| degree_of(e)).max()
    }

    pub fn has_laurent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&k| k < 0))
    }

    /// Smallest exponent of variable `i` across terms (0 for zero).
    pub fn min_exponent(&self, i: usize) -> i32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    pub fn add(&self, other: &PBWElement) -> PBWElement {
        let mut t = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut t, e.clone(), c.clone());
        }
        PBWElement::from_terms(self.dim, t)
    }

    pub fn sub(&self, other: &PBWElement) -> PBWElement {
        let mut t = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut t, e.clone(), -c);
        }
        PBWElement::from_terms(self.dim, t)
    }

    pub fn neg(&self) -> PBWElement {
        self.scale(&-FieldElement::one())
    }

    pub fn scale(&self, c: &FieldElement) -> PBWElement {
        let mut t = Terms::new();
        add_scaled(&mut t, &self.terms, c);
        PBWElement::from_terms(self.dim, t)
    }

    /// Multiplies by a monomial in central variables (exponents may be negative).
    pub fn shift_central(&self, shift: &[i32]) -> PBWElement {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        PBWElement::from_terms(self.dim, terms)
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> PBWElement {
        let mut t = Terms::new();
        for (e, c) in &self.terms {
            add_term(&mut t, e.clone(), f(c));
        }
        PBWElement::from_terms(self.dim, t)
    }

    /// Top filtration-degree part read as a polynomial; negative central
    /// exponents are carried into the symbol.
    pub fn principal_symbol(&self) -> PolyElement {
        let Some(d) = self.degree() else {
            return PolyElement::zero(self.dim);
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| degree_of(e) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        PolyElement::from_terms(self.dim, terms)
    }

    /// The same monomials read in `S(q)` (no reordering).
    pub fn as_poly(&self) -> PolyElement {
        PolyElement::from_terms(self.dim, self.terms.clone())
    }

    pub fn render(&self, labels: &[String]) -> String {
        render_terms(labels, &self.terms)
    }
}

/// Multiplication context for `U(q)`: the algebra plus memo tables.
pub struct Pbw {
    alg: Arc<LieAlgebra>,
    central: Vec<bool>,
    gen_memo: Mutex<HashMap<(Exponent, usize), Arc<Terms>>>,
    mono_memo: Mutex<HashMap<(Exponent, Exponent), Arc<Terms>>>,
    symm_memo: Mutex<HashMap<Exponent, Arc<Terms>>>,
}

impl Pbw {
    pub fn new(alg: Arc<LieAlgebra>) -> Self {
        let n = alg.dim();
        let mut central = vec![false; n];
        for i in alg.central_indices() {
            central[i] = true;
        }
        Pbw {
            alg,
            central,
            gen_memo: Mutex::new(HashMap::new()),
            mono_memo: Mutex::new(HashMap::new()),
            symm_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn is_central(&self, i: usize) -> bool {
        self.central[i]
    }

    pub fn generator(&self, i: usize) -> PBWElement {
        PBWElement::generator(self.dim(), i)
    }

    pub fn linear(&self, v: &[FieldElement]) -> PBWElement {
        PBWElement::linear(v)
    }

    /// Checks the Laurent invariant.
    pub fn check(&self, u: &PBWElement) -> Result<(), PbwError> {
        if u.dim != self.dim() {
            return Err(PbwError::DimensionMismatch(u.dim, self.dim()));
        }
        for e in u.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k < 0 && !self.central[i] {
                    return Err(PbwError::NonCentralLaurent(i));
                }
            }
        }
        Ok(())
    }

    /// Splits an exponent into its non-central part and central shift.
    fn split(&self, e: &[i32]) -> (Exponent, Exponent) {
        let mut core = e.to_vec();
        let mut shift = vec![0; e.len()];
        for i in 0..e.len() {
            if self.central[i] {
                shift[i] = e[i];
                core[i] = 0;
            }
        }
        (core, shift)
    }

    /// `x^m · x_j` in normal form, `m` without central content.
    fn mono_times_gen(&self, m: &Exponent, j: usize) -> Arc<Terms> {
        let key = (m.clone(), j);
        if let Some(t) = self.gen_memo.lock().get(&key) {
            return t.clone();
        }
        let n = self.dim();
        let last = if self.central[j] {
            None
        } else {
            (0..n).rev().find(|&i| m[i] > 0)
        };
        let mut out = Terms::new();
        match last {
            Some(i) if i > j => {
                // m = rest·xᵢ, and xᵢxⱼ = xⱼxᵢ + [xᵢ,xⱼ].
                let mut rest = m.clone();
                rest[i] -= 1;
                let rj = self.mono_times_gen(&rest, j);
                for (e, c) in rj.iter() {
                    let (core, shift) = self.split(e);
                    let prod = self.mono_times_gen(&core, i);
                    for (e2, c2) in prod.iter() {
                        let e3: Exponent = e2.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        add_term(&mut out, e3, c * c2);
                    }
                }
                for (k, c) in self.alg.basis_bracket(i, j) {
                    if self.central[*k] {
                        let mut e = rest.clone();
                        e[*k] += 1;
                        add_term(&mut out, e, c.clone());
                    } else {
                        let prod = self.mono_times_gen(&rest, *k);
                        add_scaled(&mut out, &prod, c);
                    }
                }
            }
            _ => {
                let mut e = m.clone();
                e[j] += 1;
                add_term(&mut out, e, FieldElement::one());
            }
        }
        let out = Arc::new(out);
        self.gen_memo.lock().insert(key, out.clone());
        out
    }

    /// Product of two monomials.
    fn mono_mul(&self, a: &[i32], b: &[i32]) -> Terms {
        let (ca, sa) = self.split(a);
        let (cb, sb) = self.split(b);
        let shift: Exponent = sa.iter().zip(&sb).map(|(x, y)| x + y).collect();
        let key = (ca.clone(), cb.clone());
        let cached = self.mono_memo.lock().get(&key).cloned();
        let core = match cached {
            Some(t) => t,
            None => {
                let mut cur = Terms::new();
                cur.insert(ca.clone(), FieldElement::one());
                for (j, &k) in cb.iter().enumerate() {
                    for _ in 0..k {
                        let mut next = Terms::new();
                        for (e, c) in &cur {
                            let (core, sh) = self.split(e);
                            let prod = self.mono_times_gen(&core, j);
                            for (e2, c2) in prod.iter() {
                                let e3: Exponent =
                                    e2.iter().zip(&sh).map(|(x, y)| x + y).collect();
                                add_term(&mut next, e3, c * c2);
                            }
                        }
                        cur = next;
                    }
                }
                let t = Arc::new(cur);
                self.mono_memo.lock().insert(key, t.clone());
                t
            }
        };
        if shift.iter().all(|&s| s == 0) {
            return (*core).clone();
        }
        core.iter()
            .map(|(e, c)| (e.iter().zip(&shift).map(|(x, y)| x + y).collect(), c.clone()))
            .collect()
    }

    pub fn multiply(&self, u: &PBWElement, v: &PBWElement) -> PBWElement {
        assert_eq!(u.dim, self.dim(), "element does not belong to this algebra");
        assert_eq!(v.dim, self.dim(), "element does not belong to this algebra");
        let mut out = Terms::new();
        for (e1, c1) in &u.terms {
            for (e2, c2) in &v.terms {
                let prod = self.mono_mul(e1, e2);
                add_scaled(&mut out, &prod, &(c1 * c2));
            }
        }
        PBWElement::from_terms(self.dim(), out)
    }

    /// Checked product: rejects Laurent content at non-central indices.
    pub fn try_multiply(&self, u: &PBWElement, v: &PBWElement) -> Result<PBWElement, PbwError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.multiply(u, v))
    }

    pub fn commutator(&self, u: &PBWElement, v: &PBWElement) -> PBWElement {
        self.multiply(u, v).sub(&self.multiply(v, u))
    }

    pub fn pow(&self, u: &PBWElement, k: u32) -> PBWElement {
        let mut acc = PBWElement::one(self.dim());
        for _ in 0..k {
            acc = self.multiply(&acc, u);
        }
        acc
    }

    fn symm_monomial(&self, e: &[i32]) -> Arc<Terms> {
        let (core, shift) = self.split(e);
        let key = core.clone();
        let cached = self.symm_memo.lock().get(&key).cloned();
        let base = match cached {
            Some(t) => t,
            None => {
                let k: i32 = core.iter().sum();
                let mut out = Terms::new();
                if k == 0 {
                    out.insert(core.clone(), FieldElement::one());
                } else {
                    // symm(m) = Σᵢ (mᵢ/k) xᵢ·symm(m − eᵢ)
                    for i in 0..core.len() {
                        if core[i] == 0 {
                            continue;
                        }
                        let mut rest = core.clone();
                        rest[i] -= 1;
                        let tail = self.symm_monomial(&rest);
                        let w = FieldElement::from_ratio(core[i] as i64, k as i64);
                        let mut xi = vec![0; core.len()];
                        xi[i] = 1;
                        for (e2, c2) in tail.iter() {
                            let prod = self.mono_mul(&xi, e2);
                            add_scaled(&mut out, &prod, &(&w * c2));
                        }
                    }
                }
                let t = Arc::new(out);
                self.symm_memo.lock().insert(key, t.clone());
                t
            }
        };
        Arc::new(
            base.iter()
                .map(|(e, c)| (e.iter().zip(&shift).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        )
    }

    /// The symmetrisation map `S(q) → U(q)`. Central (possibly inverted)
    /// factors pass through unchanged.
    pub fn symmetrize(&self, f: &PolyElement) -> PBWElement {
        let mut out = Terms::new();
        for (e, c) in f.terms() {
            let t = self.symm_monomial(e);
            add_scaled(&mut out, &t, c);
        }
        PBWElement::from_terms(self.dim(), out)
    }

    /// Whether `u` commutes with every basis vector of `s`.
    pub fn ad_invariant(&self, u: &PBWElement, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| self.commutator(&PBWElement::linear(v), u).is_zero())
    }

    /// Substitutes the central basis vector `z ↦ c`; the `z` exponent of
    /// every term becomes zero.
    pub fn specialize_central(
        &self,
        u: &PBWElement,
        z: usize,
        c: &FieldElement,
    ) -> Result<PBWElement, PbwError> {
        if !self.central[z] {
            return Err(PbwError::NotCentral(z));
        }
        specialize_index(u, z, c)
    }

    /// Basis of `{u ∈ U_d(q) : [u, g] = 0 for all g ∈ gens}`.
    pub fn centralizer_up_to_degree(&self, gens: &[PBWElement], d: u32) -> Vec<PBWElement> {
        let n = self.dim();
        let monos = monomials_up_to(n, d);
        let mut rows_index: HashMap<Exponent, usize> = HashMap::new();
        let mut columns: Vec<Vec<(usize, FieldElement)>> = Vec::new();
        let mut row_keys: Vec<(usize, Exponent)> = Vec::new();
        for m in &monos {
            let mu = PBWElement::monomial(m.clone(), FieldElement::one());
            let mut col = Vec::new();
            for (gi, g) in gens.iter().enumerate() {
                let c = self.commutator(g, &mu);
                for (e, x) in c.terms() {
                    let mut key = e.clone();
                    key.push(gi as i32);
                    let r = *rows_index.entry(key.clone()).or_insert_with(|| {
                        row_keys.push((gi, e.clone()));
                        row_keys.len() - 1
                    });
                    col.push((r, x.clone()));
                }
            }
            columns.push(col);
        }
        let kernel = if row_keys.is_empty() {
            (0..monos.len())
                .map(|i| {
                    let mut v = vec![FieldElement::zero(); monos.len()];
                    v[i] = FieldElement::one();
                    v
                })
                .collect()
        } else {
            let mut m = Matrix::zeros(row_keys.len(), monos.len());
            for (j, col) in columns.iter().enumerate() {
                for (r, x) in col {
                    m.set(*r, j, x.clone());
                }
            }
            m.kernel_basis()
        };
        kernel
            .into_iter()
            .map(|v| {
                let mut t = Terms::new();
                for (m, c) in monos.iter().zip(v) {
                    add_term(&mut t, m.clone(), c);
                }
                PBWElement::from_terms(n, t)
            })
            .collect()
    }

    pub fn parse(&self, s: &str) -> Result<PBWElement, ParseError> {
        crate::field::parse_expr(s)?.eval(self)
    }
}

pub(crate) fn specialize_index(
    u: &PBWElement,
    z: usize,
    c: &FieldElement,
) -> Result<PBWElement, PbwError> {
    if c.is_zero() && u.terms.keys().any(|e| e[z] < 0) {
        return Err(PbwError::ZeroWithLaurent);
    }
    let mut t = Terms::new();
    for (e, x) in &u.terms {
        let mut e2 = e.clone();
        e2[z] = 0;
        let f = c.pow(e[z]).map_err(|_| PbwError::ZeroWithLaurent)?;
        add_term(&mut t, e2, x * &f);
    }
    Ok(PBWElement::from_terms(u.dim, t))
}

/// All exponent vectors of total degree ≤ d, in graded order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0i32; n];
        fill(&mut out, &mut cur, 0, deg as i32);
    }
    out
}

fn fill(out: &mut Vec<Exponent>, cur: &mut Exponent, i: usize, left: i32) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[i] = k;
        fill(out, cur, i + 1, left - k);
    }
    cur[i] = 0;
}

impl ExprContext for Pbw {
    type Value = PBWElement;

    fn constant(&self, c: BigRational) -> PBWElement {
        PBWElement::constant(self.dim(), FieldElement::from_rational(c))
    }

    fn variable(&self, name: &str) -> Result<PBWElement, ParseError> {
        if let Some(i) = self.alg.label_index(name) {
            return Ok(self.generator(i));
        }
        let c = self.alg.field().variable(name)?;
        Ok(PBWElement::constant(self.dim(), c))
    }

    fn add(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        a.add(b)
    }

    fn mul(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        self.multiply(a, b)
    }

    fn neg(&self, a: &PBWElement) -> PBWElement {
        a.neg()
    }

    fn div(&self, a: &PBWElement, b: &PBWElement) -> Result<PBWElement, ParseError> {
        let c = b
            .as_constant()
            .ok_or_else(|| ParseError::Semantic("division by a nonconstant".into()))?;
        let inv = c.inv().map_err(|e| ParseError::Semantic(e.to_string()))?;
        Ok(a.scale(&inv))
    }

    fn pow(&self, a: &PBWElement, e: i64) -> Result<PBWElement, ParseError> {
        let e32 = i32::try_from(e).map_err(|_| ParseError::Semantic("exponent too large".into()))?;
        if e32 >= 0 {
            return Ok(Pbw::pow(self, a, e32 as u32));
        }
        // Only central monomials are invertible.
        if a.terms.len() == 1 {
            let (m, c) = a.terms.iter().next().expect("one term");
            if m.iter().enumerate().all(|(i, &k)| k == 0 || self.central[i]) {
                let c = c
                    .pow(e32)
                    .map_err(|err| ParseError::Semantic(err.to_string()))?;
                return Ok(PBWElement::monomial(m.iter().map(|k| k * e32).collect(), c));
            }
        }
        Err(ParseError::Semantic("only central monomials can be inverted".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::presets::preset;
    use crate::polyring::PolyContext;

    fn ctx(name: &str) -> Pbw {
        Pbw::new(Arc::new(preset(name).unwrap()))
    }

    #[test]
    fn multiply_examples() {
        let u = ctx("sl2");
        let f = u.parse("f").unwrap();
        let e = u.parse("e").unwrap();
        let h = u.parse("h").unwrap();
        let fe = u.multiply(&f, &e);
        assert_eq!(fe, u.multiply(&e, &f).sub(&h));
        assert_eq!(fe.render(u.algebra().labels()), "e*f - h");
        let one = PBWElement::one(3);
        assert_eq!(u.multiply(&fe, &one), fe);

        let q = ctx("sl2-semidirect-h3");
        let zi = q.parse("z^-1").unwrap();
        let z = q.parse("z").unwrap();
        assert_eq!(q.multiply(&zi, &z), PBWElement::one(6));
        assert!(q.parse("x^-1").is_err());
    }

    #[test]
    fn commutator_examples() {
        let u = ctx("sl2");
        assert_eq!(
            u.commutator(&u.parse("e").unwrap(), &u.parse("f").unwrap()),
            u.parse("h").unwrap()
        );
        let q = ctx("sl2-semidirect-h3");
        let w = q.parse("z*h + x*y").unwrap();
        assert!(q.commutator(&q.parse("z").unwrap(), &w).is_zero());
        assert!(q.commutator(&q.parse("x").unwrap(), &w).is_zero());
    }

    #[test]
    fn symmetrize_examples() {
        let u = ctx("sl2");
        let pc = PolyContext::new(u.algebra());
        let s = u.symmetrize(&pc.parse("e*f").unwrap());
        assert_eq!(s, u.parse("e*f - h/2").unwrap());
        let h2 = pc.parse("h^2").unwrap();
        assert_eq!(u.symmetrize(&h2), u.parse("h^2").unwrap());
        let q = ctx("heisenberg(2)");
        let pq = PolyContext::new(q.algebra());
        // x1 and y2 commute.
        let p = pq.parse("x1*y2").unwrap();
        assert_eq!(q.symmetrize(&p), q.parse("x1*y2").unwrap());
        assert_eq!(s.principal_symbol(), pc.parse("e*f").unwrap());
    }

    #[test]
    fn casimir_of_semidirect_product() {
        let q = ctx("sl2-semidirect-h3");
        let pc = PolyContext::new(q.algebra());
        let h2 = pc.parse("z*(h^2 + 4*e*f) + 2*(h*x*y - f*x^2 + e*y^2)").unwrap();
        let s = q.symmetrize(&h2);
        for i in 0..6 {
            assert!(q.commutator(&q.generator(i), &s).is_zero(), "generator {i}");
        }
    }

    #[test]
    fn symbols_invariance_specialisation() {
        let q = ctx("sl2-semidirect-h3");
        let pc = PolyContext::new(q.algebra());
        let zh = q.parse("z*(h + z^-1*x*y)").unwrap();
        assert_eq!(zh.principal_symbol(), pc.parse("z*h + x*y").unwrap());
        let hsp = Subspace::units(6, &[3, 4, 5]);
        assert!(q.ad_invariant(&q.parse("z*h + x*y").unwrap(), &hsp));
        let u = ctx("sl2");
        assert!(!u.ad_invariant(&u.parse("e").unwrap(), &Subspace::units(3, &[2])));

        let two = FieldElement::from_int(2);
        let one = FieldElement::one();
        assert_eq!(
            q.specialize_central(&q.parse("z*h").unwrap(), 5, &one).unwrap(),
            q.parse("h").unwrap()
        );
        assert_eq!(
            q.specialize_central(&q.parse("z^-1*x").unwrap(), 5, &two).unwrap(),
            q.parse("x/2").unwrap()
        );
        assert_eq!(
            q.specialize_central(&q.parse("z*h + x*y").unwrap(), 5, &one).unwrap(),
            q.parse("h + x*y").unwrap()
        );
        assert!(q
            .specialize_central(&q.parse("z^-1").unwrap(), 5, &FieldElement::zero())
            .is_err());
        assert!(q.specialize_central(&q.parse("h").unwrap(), 1, &one).is_err());
    }

    #[test]
    fn centralizers() {
        let q = ctx("sl2-semidirect-h3");
        let z = q.parse("z").unwrap();
        assert_eq!(q.centralizer_up_to_degree(std::slice::from_ref(&z), 1).len(), 7);
        let pc = PolyContext::new(q.algebra());
        let h2 = q.symmetrize(
            &pc.parse("z*(h^2 + 4*e*f) + 2*(h*x*y - f*x^2 + e*y^2)").unwrap(),
        );
        let gens = vec![z.clone(), q.parse("x").unwrap(), q.parse("z*h + x*y").unwrap(), h2.clone()];
        let c = q.centralizer_up_to_degree(&gens, 1);
        let span: Vec<PBWElement> = vec![PBWElement::one(6), z.clone(), q.parse("x").unwrap()];
        assert_eq!(c.len(), 3);
        for u in &c {
            assert!(u.degree().unwrap() <= 1);
            assert!(in_span(u, &span));
        }
        let gens2 = vec![z, q.parse("x").unwrap(), q.parse("2*e*z - x^2").unwrap(), h2];
        let c2 = q.centralizer_up_to_degree(&gens2, 1);
        assert!(in_span(&q.parse("e").unwrap(), &c2));
    }

    fn in_span(u: &PBWElement, span: &[PBWElement]) -> bool {
        let mut keys: Vec<Exponent> = u.terms().keys().cloned().collect();
        for s in span {
            keys.extend(s.terms().keys().cloned());
        }
        keys.sort();
        keys.dedup();
        let col = |p: &PBWElement| -> Vec<FieldElement> {
            keys.iter()
                .map(|k| p.terms().get(k).cloned().unwrap_or_else(FieldElement::zero))
                .collect()
        };
        let mut e = crate::field::Echelon::new(keys.len());
        for s in span {
            e.insert(&col(s));
        }
        e.contains(&col(u))
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(2, 0), vec![vec![0, 0]]);
    }
}
