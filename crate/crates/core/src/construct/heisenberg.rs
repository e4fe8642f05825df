use std::collections::HashMap;

use crate::field::{FieldElement, Vector};
use crate::invariants::{trdeg_symbols, GeneratorSet, Sampled, Sampling};
use crate::liealg::{HeisenbergSplit, Subspace};
use crate::pbw::{PBWElement, Pbw};

use super::mf::commuting_failures;
use super::ConstructError;

/// Index of `z` as a central basis vector.
pub fn z_index(pbw: &Pbw, split: &HeisenbergSplit) -> Result<usize, ConstructError> {
    let k = Subspace::as_unit(&split.z).ok_or_else(|| {
        ConstructError::Input("z must be a basis vector; rebase the algebra first".into())
    })?;
    if !pbw.is_central(k) {
        return Err(ConstructError::Input(format!(
            "{} is not central",
            pbw.algebra().labels()[k]
        )));
    }
    Ok(k)
}

/// `ξ̂ = ξ + (1/2z) Σᵢ ([ξ,xᵢ]yᵢ − [ξ,yᵢ]xᵢ)` in `U(q)[z⁻¹]`.
pub fn hat_map(pbw: &Pbw, split: &HeisenbergSplit, xi: &Vector) -> Result<PBWElement, ConstructError> {
    let q = pbw.algebra();
    if xi.len() != q.dim() {
        return Err(ConstructError::Input("vector length does not match the algebra".into()));
    }
    let k = z_index(pbw, split)?;
    let mut corr = PBWElement::zero(q.dim());
    for (x, y) in split.x.iter().zip(&split.y) {
        let xy = pbw.multiply(&pbw.linear(&q.br(xi, x)), &pbw.linear(y));
        let yx = pbw.multiply(&pbw.linear(&q.br(xi, y)), &pbw.linear(x));
        corr = corr.add(&xy).sub(&yx);
    }
    let mut shift = vec![0; q.dim()];
    shift[k] = -1;
    let corr = corr
        .scale(&FieldElement::from_ratio(1, 2))
        .shift_central(&shift);
    Ok(pbw.linear(xi).add(&corr))
}

/// Outcome of checking `[h, ξ̂] = 0` and `[ξ̂, η̂] = [ξ,η]^` on a basis of `l`.
#[derive(Clone, Debug, Default)]
pub struct HatReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl HatReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_hat_lemmas(pbw: &Pbw, split: &HeisenbergSplit) -> Result<HatReport, ConstructError> {
    let q = pbw.algebra();
    let lb = split.l_basis.basis();
    let labels = q.labels();
    let hats: Vec<PBWElement> = lb
        .iter()
        .map(|xi| hat_map(pbw, split, xi))
        .collect::<Result<_, _>>()?;
    let mut report = HatReport::default();
    let h_vectors = split.x.iter().chain(&split.y).chain(std::iter::once(&split.z));
    for w in h_vectors {
        for (xi, hat) in lb.iter().zip(&hats) {
            report.checks += 1;
            if !pbw.commutator(&pbw.linear(w), hat).is_zero() {
                report.failures.push(format!(
                    "[{}, hat({})] != 0",
                    q.render_vector(w),
                    crate::liealg::render_combination(labels, xi)
                ));
            }
        }
    }
    for i in 0..lb.len() {
        for j in i + 1..lb.len() {
            report.checks += 1;
            let lhs = pbw.commutator(&hats[i], &hats[j]);
            let rhs = hat_map(pbw, split, &q.br(&lb[i], &lb[j]))?;
            if lhs != rhs {
                report.failures.push(format!(
                    "[hat({}), hat({})] != hat([{0}, {1}])",
                    q.render_vector(&lb[i]),
                    q.render_vector(&lb[j])
                ));
            }
        }
    }
    Ok(report)
}

/// `u^k` allowing negative `k` for a single central monomial.
pub(crate) fn signed_pow(pbw: &Pbw, u: &PBWElement, k: i32) -> Result<PBWElement, ConstructError> {
    if k >= 0 {
        return Ok(pbw.pow(u, k as u32));
    }
    let mut it = u.terms().iter();
    match (it.next(), it.next()) {
        (Some((e, c)), None)
            if e.iter()
                .enumerate()
                .all(|(i, &a)| a == 0 || pbw.is_central(i)) =>
        {
            let exp: Vec<i32> = e.iter().map(|a| a * k).collect();
            let c = c.pow(k).map_err(|e| ConstructError::Input(e.to_string()))?;
            Ok(PBWElement::monomial(exp, c))
        }
        _ => Err(ConstructError::Input(
            "negative power of a non-central element".into(),
        )),
    }
}

/// Image of `u ∈ U(l)` under the homomorphism sending the `a`-th basis
/// vector of `l` to `images[a]`.
pub(crate) fn map_monomials(
    pbw: &Pbw,
    u: &PBWElement,
    images: &[PBWElement],
) -> Result<PBWElement, ConstructError> {
    let mut powers: HashMap<(usize, i32), PBWElement> = HashMap::new();
    let mut out = PBWElement::zero(pbw.dim());
    for (e, c) in u.terms() {
        let mut term = PBWElement::constant(pbw.dim(), c.clone());
        for (a, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let p = match powers.get(&(a, k)) {
                Some(p) => p.clone(),
                None => {
                    let p = signed_pow(pbw, &images[a], k)?;
                    powers.insert((a, k), p.clone());
                    p
                }
            };
            term = pbw.multiply(&term, &p);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Lifted generators in `U(q)`.
#[derive(Clone, Debug)]
pub struct HeisenbergLift {
    pub generators: GeneratorSet,
    /// Power of `z` each lifted generator was multiplied by.
    pub z_powers: Vec<i32>,
    pub failing_pairs: Vec<(usize, usize)>,
    pub trdeg: Sampled,
    pub target: usize,
}

impl HeisenbergLift {
    pub fn ok(&self) -> bool {
        self.failing_pairs.is_empty() && self.trdeg.value >= self.target
    }
}

/// Maps generators of `U(l)` (in the basis `split.l_basis`) through the hat
/// map, clears `z⁻¹`, and adjoins `x₁…xₙ` and `z`.
pub fn heisenberg_lift(
    pbw: &Pbw,
    split: &HeisenbergSplit,
    a_l: &GeneratorSet,
    target: usize,
    sampling: &Sampling,
) -> Result<HeisenbergLift, ConstructError> {
    let k = z_index(pbw, split)?;
    let gens = a_l
        .associative_elements()
        .ok_or_else(|| ConstructError::Input("lift needs an associative set".into()))?;
    let hats: Vec<PBWElement> = split
        .l_basis
        .basis()
        .iter()
        .map(|xi| hat_map(pbw, split, xi))
        .collect::<Result<_, _>>()?;
    let mut elements = Vec::new();
    let mut provenance = Vec::new();
    let mut z_powers = Vec::new();
    for (g, p) in gens.iter().zip(&a_l.provenance) {
        if g.dim() != hats.len() {
            return Err(ConstructError::Input(
                "generator does not live in U(l)".into(),
            ));
        }
        let img = map_monomials(pbw, g, &hats)?;
        let m = img.min_exponent(k);
        let power = if m < 0 { -m } else { 0 };
        let mut shift = vec![0; pbw.dim()];
        shift[k] = power;
        let cleared = img.shift_central(&shift);
        if cleared.is_zero() || cleared.as_constant().is_some() {
            continue;
        }
        elements.push(cleared);
        z_powers.push(power);
        provenance.push(if power > 0 {
            format!("z^{power}*hat({p})")
        } else {
            format!("hat({p})")
        });
    }
    let labels = pbw.algebra().labels();
    for x in &split.x {
        elements.push(pbw.linear(x));
        z_powers.push(0);
        provenance.push(format!("x = {}", crate::liealg::render_combination(labels, x)));
    }
    elements.push(pbw.generator(k));
    z_powers.push(0);
    provenance.push("z".into());
    let failing_pairs = commuting_failures(pbw, &elements);
    let trdeg = trdeg_symbols(&elements, pbw.dim(), sampling);
    Ok(HeisenbergLift {
        generators: GeneratorSet::associative(elements, provenance),
        z_powers,
        failing_pairs,
        trdeg,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::presets::{preset, random_heisenberg_extension};
    use crate::liealg::{classify_nilradical, NilradicalClass};
    use rand::SeedableRng;
    use std::sync::Arc;

    fn split_of(q: &crate::liealg::LieAlgebra) -> HeisenbergSplit {
        match classify_nilradical(q).unwrap() {
            NilradicalClass::Heisenberg(s) => s,
            other => panic!("unexpected class {other:?}"),
        }
    }

    #[test]
    fn hats_in_sl2_semidirect_h3() {
        let q = preset("sl2-semidirect-h3").unwrap();
        let split = split_of(&q);
        let pbw = Pbw::new(Arc::new(q.clone()));
        let h = hat_map(&pbw, &split, &q.unit(1)).unwrap();
        let zh = h.shift_central(&[0, 0, 0, 0, 0, 1]);
        assert_eq!(zh, pbw.parse("z*h + x*y - z/2").unwrap());
        let e = hat_map(&pbw, &split, &q.unit(0)).unwrap();
        assert_eq!(e, pbw.parse("e - x^2*z^-1/2").unwrap());
        let f = hat_map(&pbw, &split, &q.unit(2)).unwrap();
        assert_eq!(pbw.commutator(&e, &f), h);
        let report = verify_hat_lemmas(&pbw, &split).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
        assert_eq!(report.checks, 3 * 3 + 3);
    }

    #[test]
    fn hat_lemmas_on_random_extensions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=2 {
            for l_dim in 1..=3 {
                let (q, split) = random_heisenberg_extension(&mut rng, n, l_dim);
                let pbw = Pbw::new(Arc::new(q.clone()));
                let report = verify_hat_lemmas(&pbw, &split).unwrap();
                assert!(report.ok(), "{}: {:?}", q.name(), report.failures);
            }
        }
    }

    #[test]
    fn negative_powers_only_for_central() {
        let q = preset("heisenberg(1)").unwrap();
        let pbw = Pbw::new(Arc::new(q));
        let z = pbw.generator(2);
        assert_eq!(
            signed_pow(&pbw, &z.scale(&FieldElement::from_int(2)), -2).unwrap(),
            PBWElement::monomial(vec![0, 0, -2], FieldElement::from_ratio(1, 4))
        );
        assert!(signed_pow(&pbw, &pbw.generator(0), -1).is_err());
    }
}
