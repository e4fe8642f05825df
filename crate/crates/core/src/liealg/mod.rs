//! Lie algebras given by structure constants, subspaces, and the structural
//! case analysis driving the constructions.

mod algebra;
pub mod presets;
mod structure;
mod subspace;

pub(crate) use algebra::basis_labels as basis_labels_of;
pub use algebra::{render_combination, Annotations, LieAlgebra, ValidationReport};
pub use structure::{
    classify_nilradical, darboux, ltilde, structure_series, HeisenbergSplit, NilradicalClass,
    StructureSeries,
};
pub use subspace::Subspace;

use thiserror::Error;

use crate::field::{FieldError, ParseError, Vector};

/// Element of the dual space, given by its values on the basis.
pub type LinearForm = Vector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("inconsistent bracket table: {0}")]
    Inconsistent(String),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("{0}")]
    NotAbelianIdeal(String),
    #[error("darboux construction failed: {0}")]
    Darboux(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[cfg(test)]
mod tests {
    use super::presets::preset;
    use super::*;
    use crate::field::{FieldContext, FieldElement, Matrix};

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| fe(x)).collect()
    }

    #[test]
    fn validate_reports_jacobi_failures() {
        assert!(preset("sl2").unwrap().validate().is_valid());
        assert!(preset("abelian(3)").unwrap().validate().is_valid());
        let labels = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let bad = LieAlgebra::new(
            "bad",
            labels,
            FieldContext::default(),
            vec![(0, 1, v(&[0, 0, 1])), (1, 2, v(&[1, 0, 0])), (2, 0, v(&[1, 0, 0]))],
        )
        .unwrap();
        let r = bad.validate();
        assert_eq!(r.jacobi_failures, vec![[0, 1, 2]]);
    }

    #[test]
    fn bracket_examples() {
        let sl2 = preset("sl2").unwrap();
        assert_eq!(sl2.bracket(&sl2.unit(0), &sl2.unit(2)).unwrap(), sl2.unit(1));
        let q = preset("sl2-semidirect-h3").unwrap();
        assert_eq!(q.bracket(&q.unit(0), &q.unit(4)).unwrap(), q.unit(3));
        let a = v(&[1, -2, 3]);
        assert!(sl2.bracket(&a, &a).unwrap().iter().all(|x| x.is_zero()));
        assert!(sl2.bracket(&a, &v(&[1])).is_err());
    }

    #[test]
    fn coadjoint_forms_and_stabilizers() {
        let sl2 = preset("sl2").unwrap();
        assert!(sl2.coadjoint_form(&v(&[0, 0, 0])).is_zero());
        let hstar = v(&[0, 1, 0]);
        let m = sl2.coadjoint_form(&hstar);
        assert_eq!(m.get(0, 2), &fe(1));
        assert!((0..3).all(|k| m.get(1, k).is_zero() && m.get(k, 1).is_zero()));
        assert_eq!(m.rank(), 2);
        assert!(sl2.stabilizer(&hstar).same_as(&Subspace::units(3, &[1])));
        assert_eq!(sl2.stabilizer(&v(&[0, 0, 0])).dim(), 3);

        let h3 = preset("heisenberg(1)").unwrap();
        let zstar = v(&[0, 0, 1]);
        let m = h3.coadjoint_form(&zstar);
        let expected = Matrix::from_rows(vec![v(&[0, 1, 0]), v(&[-1, 0, 0]), v(&[0, 0, 0])]);
        assert_eq!(m, expected);
        assert!(h3.stabilizer(&zstar).same_as(&Subspace::units(3, &[2])));
    }

    #[test]
    fn radicals_of_presets() {
        let aff = preset("aff1").unwrap();
        assert!(aff.computed_nilradical().same_as(&Subspace::units(2, &[1])));
        assert_eq!(aff.computed_solvable_radical().dim(), 2);
        let gl2 = preset("gl2").unwrap();
        assert!(gl2.is_reductive());
        assert!(!preset("borel-sl2").unwrap().is_reductive());
        let q = preset("sl2-semidirect-h3").unwrap();
        assert!(q.computed_nilradical().same_as(&Subspace::units(6, &[3, 4, 5])));
        assert!(q.computed_solvable_radical().same_as(&Subspace::units(6, &[3, 4, 5])));
        let b3 = preset("borel-sl3").unwrap();
        assert_eq!(b3.computed_nilradical().dim(), 3);
    }

    #[test]
    fn subalgebra_and_direct_sum() {
        let q = preset("sl2-semidirect-h3").unwrap();
        let l = q.subalgebra(&Subspace::units(6, &[0, 1, 2]), "l").unwrap();
        assert_eq!(l.labels(), &["e", "h", "f"]);
        assert_eq!(l.brackets(), preset("sl2").unwrap().brackets());
        assert!(q.subalgebra(&Subspace::units(6, &[0, 4]), "bad").is_err());
        let s = preset("sl2").unwrap().direct_sum(&preset("aff1").unwrap());
        assert_eq!(s.dim(), 5);
        assert!(s.validate().is_valid());
    }
}
