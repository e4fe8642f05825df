use crate::field::FieldElement;
use crate::invariants::{trdeg_symbols, GeneratorSet, Sampling};
use crate::pbw::{PBWElement, Pbw};

use super::ConstructError;

/// Outcome of substituting a central generator by a constant.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub value: i64,
    pub generators: GeneratorSet,
    pub trdeg_before: usize,
    pub trdeg_after: usize,
    /// `(candidate, trdeg after)` for every candidate tried.
    pub tried: Vec<(i64, usize)>,
}

/// First candidate `c` for which `A|_{z=c}` loses at most one degree of
/// transcendence. Constants are dropped from the specialised set.
pub fn specialize_search(
    pbw: &Pbw,
    a: &GeneratorSet,
    z: usize,
    candidates: &[i64],
    sampling: &Sampling,
) -> Result<Specialization, ConstructError> {
    let gens = a
        .associative_elements()
        .ok_or_else(|| ConstructError::Input("specialisation needs an associative set".into()))?;
    let before = trdeg_symbols(gens, pbw.dim(), sampling).value;
    let mut tried = Vec::new();
    for &c in candidates {
        let cf = FieldElement::from_int(c);
        let mut elements: Vec<PBWElement> = Vec::new();
        let mut provenance = Vec::new();
        let mut failed = false;
        for (g, p) in gens.iter().zip(&a.provenance) {
            match pbw.specialize_central(g, z, &cf) {
                Ok(s) if s.is_zero() || s.as_constant().is_some() => {}
                Ok(s) => {
                    elements.push(s);
                    provenance.push(format!("{p}|{}={c}", pbw.algebra().labels()[z]));
                }
                Err(_) => failed = true,
            }
        }
        if failed {
            tried.push((c, 0));
            continue;
        }
        let after = trdeg_symbols(&elements, pbw.dim(), sampling).value;
        tried.push((c, after));
        if after + 1 >= before {
            return Ok(Specialization {
                value: c,
                generators: GeneratorSet::associative(elements, provenance),
                trdeg_before: before,
                trdeg_after: after,
                tried,
            });
        }
    }
    Err(ConstructError::NoSpecialization(tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieAlgebra;
    use std::sync::Arc;

    #[test]
    fn central_extension_toy() {
        // K{h, z} abelian: A = {z, z*h} specialises at z = 1 to {h}.
        let l = LieAlgebra::abelian("toy", vec!["h".into(), "z".into()]);
        let pbw = Pbw::new(Arc::new(l));
        let a = GeneratorSet::associative(
            vec![pbw.parse("z").unwrap(), pbw.parse("z*h").unwrap()],
            vec!["z".into(), "zh".into()],
        );
        let s = specialize_search(&pbw, &a, 1, &[1, 2], &Sampling::default()).unwrap();
        assert_eq!(s.value, 1);
        assert_eq!(s.trdeg_before, 2);
        assert_eq!(s.trdeg_after, 1);
        assert_eq!(s.generators.associative_elements().unwrap(), &[pbw.parse("h").unwrap()]);
    }

    #[test]
    fn zero_is_skipped_when_it_kills_too_much() {
        let l = LieAlgebra::abelian("toy", vec!["h".into(), "k".into(), "z".into()]);
        let pbw = Pbw::new(Arc::new(l));
        let a = GeneratorSet::associative(
            vec![pbw.parse("z*h").unwrap(), pbw.parse("z*k").unwrap()],
            vec!["a".into(), "b".into()],
        );
        let s = specialize_search(&pbw, &a, 2, &[0, 3], &Sampling::default()).unwrap();
        assert_eq!(s.value, 3);
        assert_eq!(s.tried, vec![(0, 0), (3, 2)]);
    }
}
