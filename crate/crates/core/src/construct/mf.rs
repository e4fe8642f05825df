use crate::field::{Echelon, FieldElement, Vector};
use crate::invariants::{
    index, invariants_of_degree, sample_regular, trdeg_jacobian, GeneratorSet, Sampled, Sampling,
};
use crate::liealg::{LieAlgebra, LinearForm};
use crate::pbw::{PBWElement, Pbw};
use crate::polyring::{poisson, Exponent, PolyElement};

use super::ConstructError;

/// All nonconstant shifts `∂ᵏ_γ H`, `0 ≤ k < deg H`, with pairwise
/// Poisson-commutativity checked.
pub fn mf_subalgebra(
    l: &LieAlgebra,
    casimirs: &[PolyElement],
    gamma: &LinearForm,
) -> Result<GeneratorSet, ConstructError> {
    let n = l.dim();
    for (ci, h) in casimirs.iter().enumerate() {
        for i in 0..n {
            if !poisson(l, &PolyElement::var(n, i), h).is_zero() {
                return Err(ConstructError::Verification(format!(
                    "invariant #{} does not Poisson-commute with {}",
                    ci + 1,
                    l.labels()[i]
                )));
            }
        }
    }
    let mut elements: Vec<PolyElement> = Vec::new();
    let mut provenance = Vec::new();
    for (ci, h) in casimirs.iter().enumerate() {
        let deg = h.degree().unwrap_or(0).max(0) as u32;
        let mut cur = h.clone();
        for k in 0..deg {
            if cur.is_zero() || cur.is_constant() {
                break;
            }
            if !elements.contains(&cur) {
                elements.push(cur.clone());
                provenance.push(format!("shift {k} of invariant #{}", ci + 1));
            }
            cur = cur.directional_derivative(gamma);
        }
    }
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if !poisson(l, &elements[i], &elements[j]).is_zero() {
                return Err(ConstructError::Verification(format!(
                    "shifts {} and {} do not Poisson-commute",
                    provenance[i], provenance[j]
                )));
            }
        }
    }
    Ok(GeneratorSet::poisson(elements, provenance))
}

/// Symmetrised MF generators and the outcome of checking them.
#[derive(Clone, Debug)]
pub struct QuantumMf {
    pub generators: GeneratorSet,
    pub commuting: bool,
    pub failing_pairs: Vec<(usize, usize)>,
    /// `gr` of each symmetrised generator equals the Poisson generator.
    pub symbols_match: bool,
}

pub fn quantum_mf(pbw: &Pbw, mf: &GeneratorSet) -> Result<QuantumMf, ConstructError> {
    let polys = mf
        .poisson_elements()
        .ok_or_else(|| ConstructError::Input("quantum lift needs a Poisson set".into()))?;
    let lifted: Vec<PBWElement> = polys.iter().map(|p| pbw.symmetrize(p)).collect();
    let symbols_match = lifted
        .iter()
        .zip(polys)
        .all(|(u, p)| u.principal_symbol() == p.leading_form());
    let failing_pairs = commuting_failures(pbw, &lifted);
    let provenance = mf.provenance.iter().map(|p| format!("symm({p})")).collect();
    Ok(QuantumMf {
        generators: GeneratorSet::associative(lifted, provenance),
        commuting: failing_pairs.is_empty(),
        failing_pairs,
        symbols_match,
    })
}

/// Index pairs whose commutator does not vanish.
pub fn commuting_failures(pbw: &Pbw, gens: &[PBWElement]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !pbw.commutator(&gens[i], &gens[j]).is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Coefficient vector of a homogeneous polynomial over a fixed monomial list.
fn coords(p: &PolyElement, keys: &[Exponent]) -> Vector {
    keys.iter().map(|k| p.coeff(k)).collect()
}

/// Invariants of degree `d` that are not polynomials in `lower`.
fn new_primitives(l: &LieAlgebra, d: u32, lower: &[PolyElement]) -> Vec<PolyElement> {
    let inv = invariants_of_degree(l, d);
    if inv.is_empty() {
        return inv;
    }
    // Products of lower primitives with total degree d.
    let mut products: Vec<PolyElement> = Vec::new();
    let degs: Vec<u32> = lower
        .iter()
        .map(|p| p.degree().unwrap_or(0).max(0) as u32)
        .collect();
    fn rec(
        start: usize,
        left: u32,
        cur: PolyElement,
        count: usize,
        lower: &[PolyElement],
        degs: &[u32],
        out: &mut Vec<PolyElement>,
    ) {
        if left == 0 {
            if count >= 2 {
                out.push(cur);
            }
            return;
        }
        for i in start..lower.len() {
            if degs[i] == 0 || degs[i] > left {
                continue;
            }
            rec(i, left - degs[i], cur.mul(&lower[i]), count + 1, lower, degs, out);
        }
    }
    rec(0, d, PolyElement::one(l.dim()), 0, lower, &degs, &mut products);
    let mut keys: Vec<Exponent> = inv
        .iter()
        .chain(&products)
        .flat_map(|p| p.terms().keys().cloned())
        .collect();
    keys.sort();
    keys.dedup();
    let mut ech = Echelon::new(keys.len());
    for p in &products {
        ech.insert(&coords(p, &keys));
    }
    inv.into_iter()
        .filter(|p| ech.insert(&coords(p, &keys)))
        .collect()
}

/// Result of the reductive branch.
#[derive(Clone, Debug)]
pub struct ReductiveMf {
    pub gamma: LinearForm,
    pub gamma_regular: bool,
    pub casimirs: Vec<PolyElement>,
    pub mf: GeneratorSet,
    pub quantum: QuantumMf,
    pub trdeg: Sampled,
    pub index: usize,
}

/// Primitive invariants degree by degree until the MF set reaches `b`, then
/// the symmetrised lift.
pub fn reductive_mf(
    l: &LieAlgebra,
    pbw: &Pbw,
    gamma: Option<&LinearForm>,
    max_deg: u32,
    sampling: &Sampling,
) -> Result<ReductiveMf, ConstructError> {
    let n = l.dim();
    let ind = index(l, sampling).value;
    let b = (n + ind) / 2;
    let (gamma, gamma_regular) = match gamma {
        Some(g) if crate::invariants::is_regular(l, g, ind) => (g.clone(), true),
        _ => match sample_regular(l, ind, sampling, 64) {
            Some(g) => (g, true),
            None => (vec![FieldElement::zero(); n], false),
        },
    };
    let mut casimirs: Vec<PolyElement> = Vec::new();
    let mut mf = GeneratorSet::poisson(Vec::new(), Vec::new());
    let mut trdeg = trdeg_jacobian(&[], n, sampling);
    for d in 1..=max_deg {
        let fresh = new_primitives(l, d, &casimirs);
        if fresh.is_empty() {
            continue;
        }
        casimirs.extend(fresh);
        mf = mf_subalgebra(l, &casimirs, &gamma)?;
        trdeg = trdeg_jacobian(mf.poisson_elements().unwrap_or(&[]), n, sampling);
        if trdeg.value >= b {
            break;
        }
    }
    let quantum = quantum_mf(pbw, &mf)?;
    Ok(ReductiveMf {
        gamma,
        gamma_regular,
        casimirs,
        mf,
        quantum,
        trdeg,
        index: ind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::presets::preset;
    use crate::polyring::PolyContext;
    use std::sync::Arc;

    #[test]
    fn sl2_shifts() {
        let sl2 = preset("sl2").unwrap();
        let pc = PolyContext::new(&sl2);
        let c = pc.parse("h^2 + 4*e*f").unwrap();
        let mf = mf_subalgebra(&sl2, std::slice::from_ref(&c), &sl2.unit(1)).unwrap();
        assert_eq!(
            mf.poisson_elements().unwrap(),
            &[c.clone(), pc.parse("2*h").unwrap()]
        );
        let zero = vec![FieldElement::zero(); 3];
        let mf0 = mf_subalgebra(&sl2, std::slice::from_ref(&c), &zero).unwrap();
        assert_eq!(mf0.len(), 1);
        assert!(mf_subalgebra(&sl2, &[pc.parse("e").unwrap()], &zero).is_err());

        let pbw = Pbw::new(Arc::new(sl2.clone()));
        let q = quantum_mf(&pbw, &mf).unwrap();
        assert!(q.commuting && q.symbols_match);
        let els = q.generators.associative_elements().unwrap();
        assert_eq!(els[0], pbw.parse("h^2 + 4*e*f - 2*h").unwrap());
    }

    #[test]
    fn sl3_reaches_b() {
        let sl3 = preset("sl3").unwrap();
        let pbw = Pbw::new(Arc::new(sl3.clone()));
        let r = reductive_mf(&sl3, &pbw, None, 3, &Sampling::default()).unwrap();
        assert_eq!(r.casimirs.len(), 2);
        assert_eq!(r.mf.len(), 5);
        assert_eq!(r.trdeg.value, 5);
        assert!(r.quantum.commuting, "{:?}", r.quantum.failing_pairs);
    }

    #[test]
    fn sl2_with_e_star_shift_direction() {
        // With γ = e*, the shift of the Casimir is 4f.
        let sl2 = preset("sl2").unwrap();
        let pc = PolyContext::new(&sl2);
        let c = pc.parse("h^2 + 4*e*f").unwrap();
        let mf = mf_subalgebra(&sl2, &[c], &sl2.unit(0)).unwrap();
        assert_eq!(mf.poisson_elements().unwrap()[1], pc.parse("4*f").unwrap());
    }
}
