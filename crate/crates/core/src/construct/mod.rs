//! Commutative subalgebras of maximal transcendence degree in `U(q)`:
//! Mishchenko–Fomenko for reductive algebras, the hat map over Heisenberg
//! ideals, and reduction along abelian ideals over a fraction field.

mod abelian;
mod heisenberg;
mod maximality;
mod mf;
mod specialize;

pub use abelian::{abelian_qhat, HatAlgebra};
pub use heisenberg::{hat_map, heisenberg_lift, verify_hat_lemmas, z_index, HatReport, HeisenbergLift};
pub use maximality::{
    in_subalgebra, maximality_probe, products_up_to, same_subalgebra, MaximalityReport,
    MaximalitySummary,
};
pub use mf::{commuting_failures, mf_subalgebra, quantum_mf, reductive_mf, QuantumMf, ReductiveMf};
pub use specialize::{specialize_search, Specialization};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldElement, Vector, MAX_TOWER_DEPTH};
use crate::invariants::{b_of, trdeg_symbols, GeneratorSet, Sampled, Sampling};
use crate::liealg::{
    basis_labels_of, classify_nilradical, ltilde, HeisenbergSplit, LieAlgebra, LieError,
    LinearForm, NilradicalClass, Subspace,
};
use crate::pbw::{PBWElement, Pbw};

use heisenberg::map_monomials;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("fraction-field tower would exceed depth {0}")]
    DepthExceeded(u8),
    #[error("recursion limit of {0} steps reached")]
    RecursionLimit(usize),
    #[error("no specialisation keeps the transcendence degree (tried {0:?})")]
    NoSpecialization(Vec<(i64, usize)>),
    #[error(transparent)]
    Lie(#[from] LieError),
}

const MAX_STEPS: usize = 32;

#[derive(Clone, Debug)]
pub struct ConstructOptions {
    pub sampling: Sampling,
    /// Highest degree searched for primitive invariants.
    pub max_deg: u32,
    pub max_tower_depth: u8,
    /// Preferred `γ` for reductive steps, by basis label; unknown labels
    /// read as zero. Ignored where it is not regular.
    pub gamma: Option<BTreeMap<String, FieldElement>>,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            sampling: Sampling::default(),
            max_deg: 4,
            max_tower_depth: MAX_TOWER_DEPTH,
            gamma: None,
        }
    }
}

/// One step of the recursion.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    pub algebra: String,
    pub dim: usize,
    pub case: String,
    pub detail: Vec<String>,
}

/// Generators with the checks that certify them.
#[derive(Clone, Debug)]
pub struct ConstructionCertificate {
    pub algebra: String,
    pub labels: Vec<String>,
    pub generators: GeneratorSet,
    pub b: BigRational,
    pub trdeg: Sampled,
    pub failing_pairs: Vec<(usize, usize)>,
    pub trace: Vec<TraceStep>,
}

impl ConstructionCertificate {
    pub fn commutative(&self) -> bool {
        self.failing_pairs.is_empty()
    }

    pub fn trdeg_matches(&self) -> bool {
        self.b.is_integer() && self.b.to_integer().to_usize() == Some(self.trdeg.value)
    }

    pub fn ok(&self) -> bool {
        self.commutative() && self.trdeg_matches()
    }

    pub fn degree_bound(&self) -> i32 {
        self.generators
            .associative_elements()
            .map(|g| g.iter().filter_map(|u| u.degree()).max().unwrap_or(0))
            .unwrap_or(0)
    }

    pub fn rendered(&self) -> Vec<String> {
        self.generators.render(&self.labels)
    }
}

/// A Heisenberg split moved to a basis `[l-part, x, y, z]` of unit vectors.
#[derive(Clone, Debug)]
pub struct NormalizedSplit {
    pub algebra: LieAlgebra,
    pub split: HeisenbergSplit,
    /// New basis vectors in the coordinates of the original algebra.
    pub basis: Vec<Vector>,
    /// `l ⊕ h = q` with `l` as given; otherwise `l` is replaced by `l̃ ∋ z`.
    pub algebraic: bool,
}

pub fn normalize_split(l: &LieAlgebra, split: &HeisenbergSplit) -> Result<NormalizedSplit, ConstructError> {
    let errs = split.validate(l);
    if !errs.is_empty() {
        return Err(ConstructError::Input(errs.join("; ")));
    }
    let d = l.dim();
    let n = split.n();
    let h = split.h_space();
    let algebraic =
        split.l_basis.dim() + h.dim() == d && split.l_basis.sum(&h).dim() == d;
    let core: Vec<Vector> = if algebraic {
        split.l_basis.basis().to_vec()
    } else {
        let lt = ltilde(l, split)?;
        let zline = Subspace::span(d, vec![split.z.clone()]);
        zline.extend_with(lt.basis())
    };
    let k = core.len();
    let basis: Vec<Vector> = core
        .into_iter()
        .chain(split.x.iter().cloned())
        .chain(split.y.iter().cloned())
        .chain(std::iter::once(split.z.clone()))
        .collect();
    let labels = basis_labels_of(l, &basis);
    let algebra = l.rebase(&basis, labels)?;
    let mut l_idx: Vec<usize> = (0..k).collect();
    if !algebraic {
        l_idx.push(d - 1);
    }
    let new_split = HeisenbergSplit {
        l_basis: Subspace::units(d, &l_idx),
        x: (k..k + n).map(|i| algebra.unit(i)).collect(),
        y: (k + n..k + 2 * n).map(|i| algebra.unit(i)).collect(),
        z: algebra.unit(d - 1),
    };
    Ok(NormalizedSplit {
        algebra,
        split: new_split,
        basis,
        algebraic,
    })
}

fn gamma_for(l: &LieAlgebra, opts: &ConstructOptions) -> Option<LinearForm> {
    let map = opts.gamma.as_ref()?;
    let g: LinearForm = l
        .labels()
        .iter()
        .map(|lab| map.get(lab).cloned().unwrap_or_else(FieldElement::zero))
        .collect();
    if g.iter().all(|x| x.is_zero()) {
        None
    } else {
        Some(g)
    }
}

fn render_form(l: &LieAlgebra, g: &[FieldElement]) -> String {
    let labels: Vec<String> = l.labels().iter().map(|s| format!("{s}*")).collect();
    crate::liealg::render_combination(&labels, g)
}

struct Recursion<'a> {
    opts: &'a ConstructOptions,
    trace: Vec<TraceStep>,
    steps: usize,
}

impl Recursion<'_> {
    fn run(&mut self, l: &LieAlgebra, depth: usize) -> Result<GeneratorSet, ConstructError> {
        self.steps += 1;
        if self.steps > MAX_STEPS {
            return Err(ConstructError::RecursionLimit(MAX_STEPS));
        }
        let sampling = &self.opts.sampling;
        let pbw = Pbw::new(Arc::new(l.clone()));
        let mut step = TraceStep {
            depth,
            algebra: l.name().to_string(),
            dim: l.dim(),
            case: String::new(),
            detail: Vec::new(),
        };
        if l.dim() == 0 {
            step.case = "zero".into();
            self.trace.push(step);
            return Ok(GeneratorSet::associative(Vec::new(), Vec::new()));
        }
        if l.is_reductive() {
            let gamma = gamma_for(l, self.opts);
            let r = reductive_mf(l, &pbw, gamma.as_ref(), self.opts.max_deg, sampling)?;
            step.case = "reductive".into();
            step.detail.push(format!("gamma = {}", render_form(l, &r.gamma)));
            step.detail.push(format!(
                "{} primitive invariants, {} shifts, trdeg {} of b = {}",
                r.casimirs.len(),
                r.mf.len(),
                r.trdeg.value,
                (l.dim() + r.index) / 2
            ));
            self.trace.push(step);
            if !r.quantum.commuting {
                return Err(ConstructError::Verification(format!(
                    "symmetrised shifts do not commute: pairs {:?}",
                    r.quantum.failing_pairs
                )));
            }
            return Ok(r.quantum.generators);
        }
        match classify_nilradical(l)? {
            NilradicalClass::AbelianIdeal(h) => self.abelian(l, &pbw, &h, depth, step),
            NilradicalClass::Heisenberg(split) => self.heisenberg(l, &pbw, &split, depth, step),
            NilradicalClass::Trivial | NilradicalClass::Line(_) => Err(ConstructError::Verification(
                "non-reductive algebra without an abelian or Heisenberg ideal".into(),
            )),
        }
    }

    fn abelian(
        &mut self,
        l: &LieAlgebra,
        pbw: &Pbw,
        h: &Subspace,
        depth: usize,
        mut step: TraceStep,
    ) -> Result<GeneratorSet, ConstructError> {
        let sampling = &self.opts.sampling;
        let level = l.field().vars().iter().map(|v| v.level()).max().unwrap_or(0) + 1;
        if level > self.opts.max_tower_depth {
            return Err(ConstructError::DepthExceeded(self.opts.max_tower_depth));
        }
        let hat = abelian_qhat(l, h, sampling)?;
        step.case = "abelian ideal".into();
        step.detail.push(format!(
            "h = span{{{}}}",
            h.basis()
                .iter()
                .map(|v| l.render_vector(v))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        step.detail.push(format!(
            "reduced algebra of dim {} over K({})",
            hat.algebra.dim(),
            hat.vars.iter().map(|v| v.name().to_string()).collect::<Vec<_>>().join(", ")
        ));
        step.detail.push(format!(
            "dim formula {}, b identity {}",
            if hat.dim_formula_holds { "holds" } else { "FAILS" },
            if hat.b_identity_holds { "holds" } else { "FAILS" }
        ));
        self.trace.push(step);
        let sub = self.run(&hat.algebra, depth + 1)?;
        let hat_pbw = Pbw::new(Arc::new(hat.algebra.clone()));
        let spec = specialize_search(&hat_pbw, &sub, hat.delta, &[1], sampling)?;
        let mut out = hat.embed_set(pbw, &spec.generators)?;
        let (mut elements, mut provenance) = match out.elements {
            crate::invariants::GenElements::Associative(v) => (v, out.provenance),
            crate::invariants::GenElements::Poisson(_) => unreachable!("embedding is associative"),
        };
        for v in h.basis() {
            elements.push(pbw.linear(v));
            provenance.push(format!("h: {}", l.render_vector(v)));
        }
        out = GeneratorSet::associative(elements, provenance);
        Ok(out)
    }

    fn heisenberg(
        &mut self,
        l: &LieAlgebra,
        pbw: &Pbw,
        split: &HeisenbergSplit,
        depth: usize,
        mut step: TraceStep,
    ) -> Result<GeneratorSet, ConstructError> {
        let sampling = &self.opts.sampling;
        let ns = normalize_split(l, split)?;
        let qp = &ns.algebra;
        let la = qp.subalgebra(&ns.split.l_basis, &format!("{}_l", l.name()))?;
        let qp_pbw = Pbw::new(Arc::new(qp.clone()));
        let report = verify_hat_lemmas(&qp_pbw, &ns.split)?;
        step.case = if ns.algebraic {
            "heisenberg ideal, l complementary".into()
        } else {
            "heisenberg ideal, via l~".into()
        };
        step.detail.push(format!(
            "n = {}, basis [{}], l = span{{{}}}",
            split.n(),
            qp.labels().join(", "),
            la.labels().join(", ")
        ));
        step.detail.push(format!("hat checks: {} run, {} failed", report.checks, report.failures.len()));
        self.trace.push(step);
        if !report.ok() {
            return Err(ConstructError::Verification(report.failures.join("; ")));
        }
        let sub = self.run(&la, depth + 1)?;
        let bl = b_of(&la, sampling).to_integer().to_usize().unwrap_or(0);
        let target = bl + split.n() + usize::from(ns.algebraic);
        let lift = heisenberg_lift(&qp_pbw, &ns.split, &sub, target, sampling)?;
        if !lift.failing_pairs.is_empty() {
            return Err(ConstructError::Verification(format!(
                "lifted generators do not commute: pairs {:?}",
                lift.failing_pairs
            )));
        }
        let images: Vec<PBWElement> = ns.basis.iter().map(|v| pbw.linear(v)).collect();
        let gens = lift
            .generators
            .associative_elements()
            .expect("lift is associative");
        let mapped = gens
            .iter()
            .map(|g| map_monomials(pbw, g, &images))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorSet::associative(mapped, lift.generators.provenance.clone()))
    }
}

/// Runs the recursive construction and certifies the result.
pub fn construct_theorem(
    l: &LieAlgebra,
    opts: &ConstructOptions,
) -> Result<ConstructionCertificate, ConstructError> {
    let report = l.validate();
    if !report.jacobi_failures.is_empty() {
        return Err(ConstructError::Input(format!(
            "Jacobi identity fails for {:?}",
            report.jacobi_failures
        )));
    }
    let mut rec = Recursion {
        opts,
        trace: Vec::new(),
        steps: 0,
    };
    let generators = rec.run(l, 0)?;
    let pbw = Pbw::new(Arc::new(l.clone()));
    let gens = generators.associative_elements().unwrap_or(&[]);
    let failing_pairs = commuting_failures(&pbw, gens);
    let trdeg = trdeg_symbols(gens, l.dim(), &opts.sampling);
    Ok(ConstructionCertificate {
        algebra: l.name().to_string(),
        labels: l.labels().to_vec(),
        b: b_of(l, &opts.sampling),
        trdeg,
        failing_pairs,
        generators,
        trace: rec.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::presets::preset;

    fn run(name: &str) -> ConstructionCertificate {
        let l = preset(name).unwrap();
        construct_theorem(&l, &ConstructOptions::default()).unwrap()
    }

    #[test]
    fn aff1_gives_the_nilradical() {
        let c = run("aff1");
        assert!(c.ok(), "{:?}", c.trace);
        assert_eq!(c.rendered(), vec!["y"]);
    }

    #[test]
    fn small_presets_certify() {
        for name in ["sl2", "gl2", "h3", "borel-sl2", "abelian(3)", "heisenberg(2)"] {
            let c = run(name);
            assert!(c.ok(), "{name}: {:?} {:?}", c.trace, c.rendered());
        }
    }

    #[test]
    fn sl2_semidirect_h3_contains_the_known_generators() {
        let l = preset("sl2-semidirect-h3").unwrap();
        let mut opts = ConstructOptions::default();
        opts.gamma = Some([("h".to_string(), FieldElement::one())].into());
        let c = construct_theorem(&l, &opts).unwrap();
        assert!(c.ok(), "{:?}", c.trace);
        let pbw = Pbw::new(Arc::new(l.clone()));
        let gens = c.generators.associative_elements().unwrap();
        let golden: Vec<PBWElement> = [
            "z*h + x*y",
            "x",
            "z",
            "z*(h^2 + 4*e*f) + 2*(h*x*y - f*x^2 + e*y^2)",
        ]
        .iter()
        .map(|s| pbw.symmetrize(&crate::polyring::PolyContext::new(&l).parse(s).unwrap()))
        .collect();
        assert!(same_subalgebra(&pbw, gens, &golden), "{:?}", c.rendered());
    }
}
