use crate::field::{FieldContext, FieldElement, MPoly, Matrix, Monomial, Var, Vector, MAX_TOWER_DEPTH};
use crate::invariants::{b_of, GeneratorSet, Purpose, Sampling};
use crate::liealg::{LieAlgebra, Subspace};
use crate::pbw::{PBWElement, Pbw};

use super::heisenberg::map_monomials;
use super::ConstructError;

/// The algebra `q̂` over `F = K(h*)` attached to an abelian ideal `h`:
/// the `h`-invariant part of the complement plus a central `δ`.
#[derive(Clone, Debug)]
pub struct HatAlgebra {
    /// Coordinates on `h`, dual to the basis of `h`.
    pub vars: Vec<Var>,
    /// Basis indices of `q` completing `h`.
    pub complement: Vec<usize>,
    pub h: Subspace,
    /// `K_a = Σᵢ k_{a,i} ξᵢ`, polynomial in the coordinates.
    pub kernel: Vec<Vector>,
    pub algebra: LieAlgebra,
    pub delta: usize,
    /// `min_α dim q_α` over sampled `α ∈ h*`.
    pub min_stabilizer: usize,
    pub dim_formula_holds: bool,
    pub b_identity_holds: bool,
}

fn fresh_name(base: &str, taken: &[Var]) -> String {
    let mut name = format!("a_{base}");
    while taken.iter().any(|v| v.name() == name) {
        name.push('\'');
    }
    name
}

/// Builds `q̂` and checks `dim q̂ = min_α dim q_α − dim h + 1` and
/// `b(q̂) = b(q) − dim h + 1` on samples.
pub fn abelian_qhat(l: &LieAlgebra, h: &Subspace, sampling: &Sampling) -> Result<HatAlgebra, ConstructError> {
    let d = l.dim();
    if h.is_zero() || !l.is_ideal(h) || !l.is_abelian(h) {
        return Err(ConstructError::Input("h must be a nonzero abelian ideal".into()));
    }
    let base_level = l.field().vars().iter().map(|v| v.level()).max().unwrap_or(0);
    let level = base_level + 1;
    if level > MAX_TOWER_DEPTH {
        return Err(ConstructError::DepthExceeded(MAX_TOWER_DEPTH));
    }
    let r = h.dim();
    let h_labels = crate::liealg::basis_labels_of(l, h.basis());
    let mut all_vars = l.field().vars().to_vec();
    let mut vars = Vec::new();
    for lab in &h_labels {
        let v = Var::new(fresh_name(lab, &all_vars), level);
        all_vars.push(v.clone());
        vars.push(v);
    }
    let ys: Vec<FieldElement> = vars.iter().map(|v| FieldElement::var(v.clone())).collect();
    let as_form = |coords: &[FieldElement]| -> FieldElement {
        coords
            .iter()
            .zip(&ys)
            .fold(FieldElement::zero(), |acc, (c, y)| &acc + &(c * y))
    };

    let complement = h.complement_units();
    let m = complement.len();
    // M[j][i] = [ξᵢ, η_j] read as a linear function on h*.
    let mut mt = Matrix::zeros(r, m);
    for (i, &xi) in complement.iter().enumerate() {
        for (j, eta) in h.basis().iter().enumerate() {
            let c = h.coords(&l.br(&l.unit(xi), eta)).expect("h is an ideal");
            mt.set(j, i, as_form(&c));
        }
    }
    let kernel = if m == 0 {
        Vec::new()
    } else {
        mt.kernel_basis()
    };
    let s = kernel.len();
    let embed = |k: &Vector| -> Vector {
        let mut v = vec![FieldElement::zero(); d];
        for (i, &xi) in complement.iter().enumerate() {
            v[xi] = k[i].clone();
        }
        v
    };
    let full_basis: Vec<Vector> = complement
        .iter()
        .map(|&i| l.unit(i))
        .chain(h.basis().iter().cloned())
        .collect();
    let full = Subspace::from_basis_unchecked(d, full_basis);
    let kmat = Matrix::from_cols(&kernel, m);
    let mut entries = Vec::new();
    for a in 0..s {
        for b in a + 1..s {
            let br = l.br(&embed(&kernel[a]), &embed(&kernel[b]));
            let c = full.coords(&br).expect("basis spans q");
            let (xi_part, h_part) = c.split_at(m);
            let kc = kmat.solve(xi_part).ok_or_else(|| {
                ConstructError::Verification("h-invariants are not bracket-closed".into())
            })?;
            let mut v = kc;
            v.push(as_form(h_part));
            entries.push((a, b, v));
        }
    }
    let mut labels: Vec<String> = (1..=s).map(|a| format!("K{a}")).collect();
    labels.push("delta".into());
    let algebra = LieAlgebra::new(
        format!("{}^", l.name()),
        labels,
        FieldContext::new(all_vars),
        entries,
    )?;

    let min_stabilizer = (0..sampling.samples.max(1))
        .map(|idx| {
            let alpha = sampling.point(Purpose::Check, idx as u64, r, false);
            let mut rows = Matrix::zeros(r, d);
            for (j, eta) in h.basis().iter().enumerate() {
                for k in 0..d {
                    let c = h.coords(&l.br(&l.unit(k), eta)).expect("h is an ideal");
                    let val = c
                        .iter()
                        .zip(&alpha)
                        .fold(FieldElement::zero(), |acc, (x, a)| &acc + &(x * a));
                    rows.set(j, k, val);
                }
            }
            d - rows.rank()
        })
        .min()
        .unwrap_or(d);
    let dim_formula_holds = s + 1 + r == min_stabilizer + 1;
    let b_identity_holds =
        b_of(&algebra, sampling) + num_rational::BigRational::from_integer((r as i64 - 1).into())
            == b_of(l, sampling);
    Ok(HatAlgebra {
        vars,
        complement,
        h: h.clone(),
        kernel,
        delta: s,
        algebra,
        min_stabilizer,
        dim_formula_holds,
        b_identity_holds,
    })
}

/// A field element known to be a polynomial.
fn as_mpoly(x: &FieldElement) -> MPoly {
    match x.as_rational() {
        Some(r) => MPoly::constant(r.clone()),
        None => {
            let den = x.denom();
            let c = den.as_constant().expect("polynomial entry");
            x.numer().scale(&c.recip())
        }
    }
}

impl HatAlgebra {
    /// `p(η)` in `U(h) ⊂ U(q)`: coordinate variables become basis vectors of
    /// `h`, remaining variables stay in the coefficients.
    fn poly_to_uh(&self, pbw: &Pbw, p: &MPoly) -> PBWElement {
        let etas: Vec<PBWElement> = self.h.basis().iter().map(|v| pbw.linear(v)).collect();
        let mut out = PBWElement::zero(pbw.dim());
        for (mono, c) in p.terms() {
            let mut rest = Monomial::one();
            let mut term: Option<PBWElement> = None;
            for (v, e) in mono.factors() {
                match self.vars.iter().position(|y| y == v) {
                    Some(j) => {
                        let pw = pbw.pow(&etas[j], *e);
                        term = Some(match term {
                            Some(t) => pbw.multiply(&t, &pw),
                            None => pw,
                        });
                    }
                    None => rest = rest.mul(&Monomial::var(v.clone(), *e)),
                }
            }
            let coeff = FieldElement::from_poly(MPoly::term(rest, c.clone()));
            let term = term.unwrap_or_else(|| PBWElement::one(pbw.dim()));
            out = out.add(&term.scale(&coeff));
        }
        out
    }

    /// Images of `K_a` in `U(q)`: `Σᵢ ξᵢ · k_{a,i}(η)`.
    pub fn kernel_images(&self, pbw: &Pbw) -> Vec<PBWElement> {
        self.kernel
            .iter()
            .map(|k| {
                let mut out = PBWElement::zero(pbw.dim());
                for (i, &xi) in self.complement.iter().enumerate() {
                    if k[i].is_zero() {
                        continue;
                    }
                    let coeff = self.poly_to_uh(pbw, &as_mpoly(&k[i]));
                    out = out.add(&pbw.multiply(&pbw.generator(xi), &coeff));
                }
                out
            })
            .collect()
    }

    /// Sends `u ∈ U(q̂)` with `δ = 1` into `U(q)`, clearing the common
    /// denominator in the coordinates as a left `U(h)` factor.
    pub fn embed(&self, pbw: &Pbw, u: &PBWElement) -> Result<PBWElement, ConstructError> {
        if u.terms().keys().any(|e| e[self.delta] != 0) {
            return Err(ConstructError::Input("specialise δ before embedding".into()));
        }
        let lcd = u
            .terms()
            .values()
            .fold(MPoly::one(), |acc, c| acc.lcm(&c.denom()));
        let lcd = FieldElement::from_poly(lcd);
        let mut images = self.kernel_images(pbw);
        images.push(PBWElement::one(pbw.dim()));
        let mut out = PBWElement::zero(pbw.dim());
        for (e, c) in u.terms() {
            let mono = PBWElement::monomial(e.clone(), FieldElement::one());
            let img = map_monomials(pbw, &mono, &images)?;
            let left = self.poly_to_uh(pbw, &as_mpoly(&(c * &lcd)));
            out = out.add(&pbw.multiply(&left, &img));
        }
        Ok(out)
    }

    /// Embeds a whole generator set, dropping constants.
    pub fn embed_set(&self, pbw: &Pbw, a: &GeneratorSet) -> Result<GeneratorSet, ConstructError> {
        let gens = a
            .associative_elements()
            .ok_or_else(|| ConstructError::Input("embedding needs an associative set".into()))?;
        let mut elements = Vec::new();
        let mut provenance = Vec::new();
        for (g, p) in gens.iter().zip(&a.provenance) {
            let img = self.embed(pbw, g)?;
            if img.is_zero() || img.as_constant().is_some() {
                continue;
            }
            elements.push(img);
            provenance.push(format!("embedded({p})"));
        }
        Ok(GeneratorSet::associative(elements, provenance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::presets::preset;
    use std::sync::Arc;

    #[test]
    fn aff1_reduces_to_a_line() {
        let aff = preset("aff1").unwrap();
        let h = Subspace::units(2, &[1]);
        let hat = abelian_qhat(&aff, &h, &Sampling::default()).unwrap();
        assert_eq!(hat.algebra.dim(), 1);
        assert_eq!(hat.min_stabilizer, 1);
        assert!(hat.dim_formula_holds && hat.b_identity_holds);
    }

    #[test]
    fn central_ideal_keeps_the_complement() {
        let h3 = preset("heisenberg(1)").unwrap();
        let z = Subspace::units(3, &[2]);
        let hat = abelian_qhat(&h3, &z, &Sampling::default()).unwrap();
        // [x, y] = z becomes [K1, K2] = a_z δ.
        assert_eq!(hat.algebra.dim(), 3);
        let az = FieldElement::var(hat.vars[0].clone());
        assert_eq!(hat.algebra.brackets()[&(0, 1)], vec![FieldElement::zero(), FieldElement::zero(), az]);
        assert!(hat.dim_formula_holds && hat.b_identity_holds);
    }

    #[test]
    fn embedding_is_a_homomorphism_on_h3() {
        // h = span{y, z}: the invariant part of span{x} is trivial.
        let h3 = preset("heisenberg(1)").unwrap();
        let h = Subspace::units(3, &[1, 2]);
        let hat = abelian_qhat(&h3, &h, &Sampling::default()).unwrap();
        assert_eq!(hat.algebra.dim(), 1);
        assert!(hat.dim_formula_holds && hat.b_identity_holds);

        let q = preset("borel-sl2").unwrap();
        let hb = q.nilradical();
        let hat = abelian_qhat(&q, &hb, &Sampling::default()).unwrap();
        let pbw = Pbw::new(Arc::new(q.clone()));
        for img in hat.kernel_images(&pbw) {
            assert!(pbw.ad_invariant(&img, &hb));
        }
    }

    #[test]
    fn rejects_non_ideals() {
        let sl2 = preset("sl2").unwrap();
        assert!(abelian_qhat(&sl2, &Subspace::units(3, &[0]), &Sampling::default()).is_err());
    }
}
