use std::collections::BTreeSet;

use serde::Serialize;

use crate::field::{Echelon, FieldElement, Vector};
use crate::pbw::{PBWElement, Pbw};
use crate::polyring::Exponent;

/// Products `g₁^{a₁}⋯g_k^{a_k}` (including `1`) of filtration degree at
/// most `d`. Constant generators are skipped.
pub fn products_up_to(pbw: &Pbw, gens: &[PBWElement], d: u32) -> Vec<PBWElement> {
    let usable: Vec<(&PBWElement, u32)> = gens
        .iter()
        .filter_map(|g| match g.degree() {
            Some(k) if k > 0 => Some((g, k as u32)),
            _ => None,
        })
        .collect();
    let mut out = Vec::new();
    fn rec(
        pbw: &Pbw,
        usable: &[(&PBWElement, u32)],
        start: usize,
        left: u32,
        cur: PBWElement,
        out: &mut Vec<PBWElement>,
    ) {
        out.push(cur.clone());
        for i in start..usable.len() {
            let (g, k) = usable[i];
            if k <= left {
                rec(pbw, usable, i, left - k, pbw.multiply(&cur, g), out);
            }
        }
    }
    rec(pbw, &usable, 0, d, PBWElement::one(pbw.dim()), &mut out);
    out
}

fn coords(u: &PBWElement, keys: &[Exponent]) -> Vector {
    keys.iter()
        .map(|k| u.terms().get(k).cloned().unwrap_or_else(FieldElement::zero))
        .collect()
}

fn key_list<'a>(items: impl IntoIterator<Item = &'a PBWElement>) -> Vec<Exponent> {
    let set: BTreeSet<Exponent> = items
        .into_iter()
        .flat_map(|u| u.terms().keys().cloned())
        .collect();
    set.into_iter().collect()
}

/// Whether `u` is a polynomial in the (commuting) generators. Products are
/// enumerated up to the degree of `u`, which suffices when the symbols of
/// the generators are algebraically independent.
pub fn in_subalgebra(pbw: &Pbw, gens: &[PBWElement], u: &PBWElement) -> bool {
    let Some(d) = u.degree() else {
        return true;
    };
    if d < 0 {
        return false;
    }
    let prods = products_up_to(pbw, gens, d as u32);
    let keys = key_list(prods.iter().chain(std::iter::once(u)));
    let mut ech = Echelon::new(keys.len());
    for p in &prods {
        ech.insert(&coords(p, &keys));
    }
    ech.contains(&coords(u, &keys))
}

/// Each generator of `a` lies in the algebra generated by `b` and vice versa.
pub fn same_subalgebra(pbw: &Pbw, a: &[PBWElement], b: &[PBWElement]) -> bool {
    a.iter().all(|u| in_subalgebra(pbw, b, u)) && b.iter().all(|u| in_subalgebra(pbw, a, u))
}

/// Centralizer of `A` in `U_d(q)` compared with `A ∩ U_d(q)`.
#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub degree: u32,
    pub centralizer_dim: usize,
    pub subalgebra_dim: usize,
    /// Centralizer elements outside the subalgebra (a basis of a complement).
    pub extra: Vec<PBWElement>,
}

#[derive(Serialize)]
pub struct MaximalitySummary {
    pub degree: u32,
    pub centralizer_dim: usize,
    pub subalgebra_dim: usize,
    pub maximal_up_to_degree: bool,
    pub extra: Vec<String>,
}

impl MaximalityReport {
    pub fn maximal_up_to_degree(&self) -> bool {
        self.extra.is_empty()
    }

    pub fn summary(&self, labels: &[String]) -> MaximalitySummary {
        MaximalitySummary {
            degree: self.degree,
            centralizer_dim: self.centralizer_dim,
            subalgebra_dim: self.subalgebra_dim,
            maximal_up_to_degree: self.maximal_up_to_degree(),
            extra: self.extra.iter().map(|u| u.render(labels)).collect(),
        }
    }
}

/// Degree-bounded probe: no claim is made beyond degree `d`.
pub fn maximality_probe(pbw: &Pbw, gens: &[PBWElement], d: u32) -> MaximalityReport {
    let cent = pbw.centralizer_up_to_degree(gens, d);
    let prods = products_up_to(pbw, gens, d);
    let keys = key_list(prods.iter().chain(&cent));
    let mut ech = Echelon::new(keys.len());
    let mut subalgebra_dim = 0;
    for p in &prods {
        if ech.insert(&coords(p, &keys)) {
            subalgebra_dim += 1;
        }
    }
    let extra = cent
        .iter()
        .filter(|c| ech.insert(&coords(c, &keys)))
        .cloned()
        .collect();
    MaximalityReport {
        degree: d,
        centralizer_dim: cent.len(),
        subalgebra_dim,
        extra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::presets::preset;
    use std::sync::Arc;

    #[test]
    fn products_and_membership() {
        let sl2 = preset("sl2").unwrap();
        let pbw = Pbw::new(Arc::new(sl2));
        let c = pbw.parse("h^2 + 4*e*f - 2*h").unwrap();
        let h = pbw.parse("h").unwrap();
        let gens = vec![c.clone(), h.clone()];
        assert_eq!(products_up_to(&pbw, &gens, 2).len(), 4); // 1, C, h, h²
        assert!(in_subalgebra(&pbw, &gens, &pbw.parse("e*f").unwrap()));
        assert!(!in_subalgebra(&pbw, &gens, &pbw.parse("e").unwrap()));
        assert!(same_subalgebra(
            &pbw,
            &gens,
            &[pbw.parse("4*e*f - 2*h").unwrap(), pbw.parse("3*h").unwrap()]
        ));
    }

    #[test]
    fn sl2_cartan_probe() {
        let sl2 = preset("sl2").unwrap();
        let pbw = Pbw::new(Arc::new(sl2));
        let gens = vec![pbw.parse("h^2 + 4*e*f - 2*h").unwrap(), pbw.parse("h").unwrap()];
        let r = maximality_probe(&pbw, &gens, 2);
        assert!(r.maximal_up_to_degree(), "{:?}", r.extra);
        assert_eq!(r.centralizer_dim, r.subalgebra_dim);
        // {h} alone is not maximal: e*f commutes with it.
        let r = maximality_probe(&pbw, &gens[1..], 2);
        assert!(!r.maximal_up_to_degree());
    }
}
