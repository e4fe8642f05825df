use crate::field::{dot, is_zero_vector, vec_add, vec_scale, vec_sub, FieldElement, Matrix, Vector};

use super::{LieAlgebra, LieError, Subspace};

/// Basis `{x₁…xₙ, y₁…yₙ, z}` of a Heisenberg ideal together with the
/// subalgebra `l` acting on it.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergSplit {
    pub l_basis: Subspace,
    pub x: Vec<Vector>,
    pub y: Vec<Vector>,
    pub z: Vector,
}

impl HeisenbergSplit {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `v = span{x, y}`.
    pub fn v_space(&self) -> Subspace {
        let dim = self.z.len();
        Subspace::span(dim, self.x.iter().chain(&self.y).cloned())
    }

    /// `h = span{x, y, z}`.
    pub fn h_space(&self) -> Subspace {
        let dim = self.z.len();
        Subspace::span(
            dim,
            self.x.iter().chain(&self.y).chain(std::iter::once(&self.z)).cloned(),
        )
    }

    pub fn validate(&self, l: &LieAlgebra) -> Vec<String> {
        let d = l.dim();
        let mut out = Vec::new();
        if self.x.len() != self.y.len() {
            out.push("x and y lists differ in length".into());
            return out;
        }
        let all = self.x.iter().chain(&self.y).chain(std::iter::once(&self.z));
        if all.clone().any(|v| v.len() != d) || self.l_basis.ambient() != d {
            out.push("vector length does not match the algebra".into());
            return out;
        }
        if is_zero_vector(&self.z) {
            out.push("z is zero".into());
        }
        let zero = vec![FieldElement::zero(); d];
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i < j && l.br(&self.x[i], &self.x[j]) != zero {
                    out.push(format!("[x{},x{}] != 0", i + 1, j + 1));
                }
                if i < j && l.br(&self.y[i], &self.y[j]) != zero {
                    out.push(format!("[y{},y{}] != 0", i + 1, j + 1));
                }
                let want = if i == j { self.z.clone() } else { zero.clone() };
                if l.br(&self.x[i], &self.y[j]) != want {
                    out.push(format!("[x{},y{}] has the wrong value", i + 1, j + 1));
                }
            }
        }
        if (0..d).any(|k| !is_zero_vector(&l.br(&l.unit(k), &self.z))) {
            out.push("z is not central".into());
        }
        let h = self.h_space();
        if h.dim() != 2 * self.n() + 1 {
            out.push("x, y, z are linearly dependent".into());
        } else if !l.is_ideal(&h) {
            out.push("span{x,y,z} is not an ideal".into());
        }
        if !l.is_subalgebra(&self.l_basis) {
            out.push("l is not a subalgebra".into());
        }
        let v = self.v_space();
        if !l.bracket_spaces(&self.l_basis, &v).is_zero()
            && !v.contains_space(&l.bracket_spaces(&self.l_basis, &v))
        {
            out.push("span{x,y} is not l-stable".into());
        }
        out
    }
}

/// Output of [`structure_series`].
#[derive(Clone, Debug)]
pub struct StructureSeries {
    pub center: Subspace,
    pub derived: Subspace,
    pub lower_central_series: Vec<Subspace>,
    pub is_nilpotent: bool,
    pub is_abelian: bool,
}

pub fn structure_series(l: &LieAlgebra) -> StructureSeries {
    let full = Subspace::full(l.dim());
    let lcs = l.lower_central_series(&full);
    let derived = l.derived();
    StructureSeries {
        center: l.center(),
        is_abelian: derived.is_zero(),
        derived,
        is_nilpotent: lcs.last().map(|s| s.is_zero()).unwrap_or(true),
        lower_central_series: lcs,
    }
}

/// Case split on the nilradical.
#[derive(Clone, Debug)]
pub enum NilradicalClass {
    Trivial,
    Line(Subspace),
    Heisenberg(HeisenbergSplit),
    AbelianIdeal(Subspace),
}

/// Looks for an abelian ideal `h ⊆ n` with `dim h > 1` or `[q,h] ≠ 0` among
/// the characteristic candidates; otherwise `n` is a line or Heisenberg.
pub fn classify_nilradical(l: &LieAlgebra) -> Result<NilradicalClass, LieError> {
    let nil = l.nilradical();
    if !l.is_ideal(&nil) || !l.is_nilpotent(&nil) {
        return Err(LieError::Verification(
            "nilradical is not a nilpotent ideal".into(),
        ));
    }
    if nil.is_zero() {
        return Ok(NilradicalClass::Trivial);
    }
    let mut candidates = vec![l.centralizer(&nil, &nil)];
    let lcs = l.lower_central_series(&nil);
    if let Some(last) = lcs.iter().rev().find(|s| !s.is_zero()) {
        candidates.push(last.clone());
    }
    candidates.extend(l.derived_series(&nil).into_iter().filter(|s| !s.is_zero()));
    let full = Subspace::full(l.dim());
    for c in candidates {
        if c.is_zero() || !l.is_abelian(&c) || !l.is_ideal(&c) {
            continue;
        }
        if c.dim() > 1 || !l.bracket_spaces(&full, &c).is_zero() {
            return Ok(NilradicalClass::AbelianIdeal(c));
        }
    }
    if nil.dim() == 1 {
        return Ok(NilradicalClass::Line(nil));
    }
    if let Some(split) = &l.annotations.heisenberg_split {
        let errs = split.validate(l);
        if !errs.is_empty() {
            return Err(LieError::Darboux(errs.join("; ")));
        }
        return Ok(NilradicalClass::Heisenberg(split.clone()));
    }
    heisenberg_split_for(l, &nil).map(NilradicalClass::Heisenberg)
}

/// Builds a split for a Heisenberg nilradical, preferring an `l`-stable
/// complement when a Levi factor is annotated.
fn heisenberg_split_for(l: &LieAlgebra, nil: &Subspace) -> Result<HeisenbergSplit, LieError> {
    let zline = l.centralizer(nil, nil);
    if zline.dim() != 1 || !l.bracket_spaces(nil, nil).same_as(&zline) {
        return Err(LieError::Darboux(
            "nilradical is neither abelian nor Heisenberg".into(),
        ));
    }
    let z = zline.basis()[0].clone();
    let generic = zline.extend_with(nil.basis());
    let mut v_basis = generic.clone();
    let mut l_basis = None;
    if let Some(levi) = &l.annotations.levi {
        let w = l.bracket_spaces(levi, nil);
        let stable = |v: &Subspace| v.contains_space(&l.bracket_spaces(levi, v));
        if w.dim() + 1 == nil.dim() && w.intersect(&zline).is_zero() && stable(&w) {
            v_basis = w.basis().to_vec();
            if levi.dim() + nil.dim() == l.dim() {
                l_basis = Some(levi.clone());
            }
        } else if stable(&Subspace::span(l.dim(), generic.clone()))
            && levi.dim() + nil.dim() == l.dim()
        {
            l_basis = Some(levi.clone());
        }
    }
    let (x, y) = darboux(l, &v_basis, &z)?;
    let mut split = HeisenbergSplit {
        l_basis: Subspace::zero(l.dim()),
        x,
        y,
        z,
    };
    split.l_basis = match l_basis {
        Some(lb) => lb,
        None => ltilde(l, &split)?,
    };
    let errs = split.validate(l);
    if !errs.is_empty() {
        return Err(LieError::Darboux(errs.join("; ")));
    }
    Ok(split)
}

/// Greedy symplectic pairing of `v` against the form `[a,b] = ω(a,b)·z`.
pub fn darboux(
    l: &LieAlgebra,
    v: &[Vector],
    z: &[FieldElement],
) -> Result<(Vec<Vector>, Vec<Vector>), LieError> {
    let pivot = z
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| LieError::Darboux("z is zero".into()))?;
    let omega = |a: &[FieldElement], b: &[FieldElement]| -> Result<FieldElement, LieError> {
        let br = l.br(a, b);
        let c = &br[pivot] / &z[pivot];
        if vec_scale(&c, z) != br {
            return Err(LieError::Darboux("bracket on v leaves the z-line".into()));
        }
        Ok(c)
    };
    let mut rest: Vec<Vector> = v.to_vec();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    while !rest.is_empty() {
        let a = rest.remove(0);
        let mut partner = None;
        for (k, b) in rest.iter().enumerate() {
            let w = omega(&a, b)?;
            if !w.is_zero() {
                partner = Some((k, w));
                break;
            }
        }
        let (k, w) = partner
            .ok_or_else(|| LieError::Darboux("form is degenerate on v".into()))?;
        let b = rest.remove(k);
        let y = vec_scale(&w.inv().expect("nonzero"), &b);
        for r in rest.iter_mut() {
            let wy = omega(r, &y)?;
            let wx = omega(r, &a)?;
            *r = vec_add(&vec_sub(r, &vec_scale(&wy, &a)), &vec_scale(&wx, &y));
        }
        xs.push(a);
        ys.push(y);
    }
    Ok((xs, ys))
}

/// `l̃ = {ξ ∈ q : [ξ, v] ⊂ v}`, verified to satisfy `q = l̃ + h`,
/// `l̃ ∩ h = span{z}` and bracket closure.
pub fn ltilde(l: &LieAlgebra, split: &HeisenbergSplit) -> Result<Subspace, LieError> {
    let d = l.dim();
    let v = split.v_space();
    let annihilator = if v.is_zero() {
        Vec::new()
    } else {
        Matrix::from_rows(v.basis().to_vec()).kernel_basis()
    };
    let mut rows = Vec::new();
    for w in v.basis() {
        let images: Vec<Vector> = (0..d).map(|k| l.br(&l.unit(k), w)).collect();
        for a in &annihilator {
            rows.push(images.iter().map(|img| dot(a, img)).collect::<Vector>());
        }
    }
    let lt = if rows.is_empty() {
        Subspace::full(d)
    } else {
        Subspace::span(d, Matrix::from_rows(rows).kernel_basis())
    };
    let h = split.h_space();
    if lt.sum(&h).dim() != d {
        return Err(LieError::Verification("l~ + h does not span q".into()));
    }
    let zline = Subspace::span(d, vec![split.z.clone()]);
    if !lt.intersect(&h).same_as(&zline) {
        return Err(LieError::Verification("l~ meets h outside the z-line".into()));
    }
    if !l.is_subalgebra(&lt) {
        return Err(LieError::Verification("l~ is not bracket-closed".into()));
    }
    Ok(lt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::presets::preset;

    #[test]
    fn series_of_small_algebras() {
        let h3 = preset("heisenberg(1)").unwrap();
        let s = structure_series(&h3);
        assert!(s.is_nilpotent && !s.is_abelian);
        assert!(s.center.same_as(&Subspace::units(3, &[2])));
        assert!(s.derived.same_as(&Subspace::units(3, &[2])));
        let k2 = preset("abelian(2)").unwrap();
        assert_eq!(structure_series(&k2).center.dim(), 2);
        let sl2 = preset("sl2").unwrap();
        let s = structure_series(&sl2);
        assert!(s.center.is_zero());
        assert_eq!(s.derived.dim(), 3);
    }

    #[test]
    fn classification_cases() {
        let q = preset("sl2-semidirect-h3").unwrap();
        match classify_nilradical(&q).unwrap() {
            NilradicalClass::Heisenberg(s) => {
                assert_eq!(s.n(), 1);
                assert!(Subspace::span(6, vec![s.z.clone()]).same_as(&Subspace::units(6, &[5])));
            }
            other => panic!("expected heisenberg, got {other:?}"),
        }
        let aff = preset("aff1").unwrap();
        match classify_nilradical(&aff).unwrap() {
            NilradicalClass::AbelianIdeal(h) => assert!(h.same_as(&Subspace::units(2, &[1]))),
            other => panic!("expected abelian ideal, got {other:?}"),
        }
        let k3 = preset("abelian(3)").unwrap();
        match classify_nilradical(&k3).unwrap() {
            NilradicalClass::AbelianIdeal(h) => assert_eq!(h.dim(), 3),
            other => panic!("expected abelian ideal, got {other:?}"),
        }
        let k1 = preset("abelian(1)").unwrap();
        assert!(matches!(classify_nilradical(&k1).unwrap(), NilradicalClass::Line(_)));
        let sl2 = preset("sl2").unwrap();
        assert!(matches!(classify_nilradical(&sl2).unwrap(), NilradicalClass::Trivial));
    }

    #[test]
    fn ltilde_of_the_semidirect_product() {
        let q = preset("sl2-semidirect-h3").unwrap();
        let split = q.annotations.heisenberg_split.clone().unwrap();
        let lt = ltilde(&q, &split).unwrap();
        assert!(lt.same_as(&Subspace::units(6, &[0, 1, 2, 5])));
    }

    #[test]
    fn ltilde_corrects_by_an_element_of_v() {
        // Basis t, x, y, z with [t,x] = z on top of the Heisenberg relations:
        // t itself moves v out of v, but t + y does not.
        let one = FieldElement::one;
        let zero = FieldElement::zero;
        let l = LieAlgebra::new(
            "t",
            ["t", "x", "y", "z"].iter().map(|s| s.to_string()).collect(),
            Default::default(),
            vec![
                (0, 1, vec![zero(), zero(), zero(), one()]),
                (1, 2, vec![zero(), zero(), zero(), one()]),
            ],
        )
        .unwrap();
        let split = HeisenbergSplit {
            l_basis: Subspace::zero(4),
            x: vec![l.unit(1)],
            y: vec![l.unit(2)],
            z: l.unit(3),
        };
        let lt = ltilde(&l, &split).unwrap();
        assert!(!lt.contains(&l.unit(0)));
        assert!(lt.contains(&vec_add(&l.unit(0), &l.unit(2))));
        assert!(lt.contains(&l.unit(3)));
    }
}
