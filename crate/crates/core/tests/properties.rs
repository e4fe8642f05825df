mod common;

macro_rules! suite {
    ($name:ident, $f:path) => {
        #[test]
        fn $name() {
            if let Err(e) = $f(common::CASES) {
                panic!("{e}");
            }
        }
    };
}

suite!(lie_bracket_axioms, common::lie_bracket_axioms);
suite!(poisson_axioms, common::poisson_axioms);
suite!(symbol_of_symmetrization, common::symbol_of_symmetrization);
suite!(symmetrization_equivariance, common::symmetrization_equivariance);
suite!(symbol_multiplicativity, common::symbol_multiplicativity);
suite!(trdeg_bounded_by_b, common::trdeg_bounded_by_b);
suite!(index_additive, common::index_additive);
