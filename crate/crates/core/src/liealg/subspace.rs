use crate::field::{is_zero_vector, unit_vector, Echelon, FieldElement, Matrix, Vector};

/// Linear subspace of `K^n` given by an independent spanning list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Span of `vectors`, keeping the first independent ones in order.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut ech = Echelon::new(ambient);
        let mut basis: Vec<Vector> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            if ech.insert(&v) {
                basis.push(v);
            }
        }
        Subspace { ambient, basis }
    }

    /// Takes `basis` as given; the caller guarantees independence.
    pub fn from_basis_unchecked(ambient: usize, basis: Vec<Vector>) -> Self {
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        }
    }

    pub fn units(ambient: usize, indices: &[usize]) -> Self {
        Subspace::span(ambient, indices.iter().map(|&i| unit_vector(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` in the basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[FieldElement]) -> Option<Vector> {
        if self.basis.is_empty() {
            return is_zero_vector(v).then(Vec::new);
        }
        Matrix::from_cols(&self.basis, self.ambient).solve(v)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        is_zero_vector(v) || self.echelon().contains(v)
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for b in &self.basis {
            e.insert(b);
        }
        e
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        let e = self.echelon();
        other.basis.iter().all(|v| e.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_space(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let k = Matrix::from_cols(&cols, self.ambient).kernel_basis();
        Subspace::span(
            self.ambient,
            k.iter().map(|c| self.combine(&c[..self.dim()])),
        )
    }

    /// `Σ cᵢ bᵢ` for basis vectors `bᵢ`.
    pub fn combine(&self, coeffs: &[FieldElement]) -> Vector {
        let mut out = vec![FieldElement::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    /// Unit vector indices completing this basis to one of the ambient space.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut e = self.echelon();
        (0..self.ambient)
            .filter(|&i| e.insert(&unit_vector(self.ambient, i)))
            .collect()
    }

    /// Vectors from `candidates` extending this basis, in order.
    pub fn extend_with(&self, candidates: &[Vector]) -> Vec<Vector> {
        let mut e = self.echelon();
        candidates
            .iter()
            .filter(|v| e.insert(v))
            .cloned()
            .collect()
    }

    /// Index `i` when the subspace is spanned by the unit vector `eᵢ`.
    pub fn as_unit(v: &[FieldElement]) -> Option<usize> {
        let mut idx = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !x.is_one() || idx.is_some() {
                return None;
            }
            idx = Some(i);
        }
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| FieldElement::from_int(x)).collect()
    }

    #[test]
    fn span_drops_dependent_vectors() {
        let s = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[2, 0, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[3, 2, 2])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_and_complement() {
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 1, 0])));
        assert_eq!(a.complement_units(), vec![2]);
        assert!(a.sum(&b).same_as(&Subspace::full(3)));
    }
}
