//! Index, `b(q)`, symmetric invariants and transcendence degrees, with
//! seeded random sampling standing in for genericity.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::{FieldElement, Matrix, Vector};
use crate::liealg::{LieAlgebra, LieError, LinearForm, Subspace};
use crate::pbw::{monomials_up_to, PBWElement};
use crate::polyring::{poisson, PolyElement};

pub const DEFAULT_SEED: u64 = 2020;
pub const DEFAULT_SAMPLES: usize = 5;
pub const DEFAULT_BOUND: i64 = 10_000;

/// Seeded sampling of integer points; each sample draws from its own stream
/// so results do not depend on evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            bound: DEFAULT_BOUND,
        }
    }
}

/// Streams are separated by purpose so that, e.g., index and trdeg checks
/// with the same seed do not reuse points.
#[derive(Clone, Copy, Debug)]
pub enum Purpose {
    Index = 1,
    Trdeg = 2,
    Regular = 3,
    Check = 4,
}

impl Sampling {
    pub fn rng(&self, purpose: Purpose, idx: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((purpose as u64) << 32) | idx);
        rng
    }

    pub fn point(&self, purpose: Purpose, idx: u64, dim: usize, nonzero: bool) -> Vector {
        let mut rng = self.rng(purpose, idx);
        (0..dim)
            .map(|_| loop {
                let k = rng.gen_range(-self.bound..=self.bound);
                if !nonzero || k != 0 {
                    break FieldElement::from_int(k);
                }
            })
            .collect()
    }
}

/// A sampled quantity together with its witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct Sampled {
    pub value: usize,
    pub method: String,
    pub seed: u64,
    /// Number of samples attaining the reported maximum rank.
    pub agreeing: usize,
    pub samples: Vec<SampleRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub point: Vec<String>,
    pub rank: usize,
}

impl Sampled {
    pub fn witness(&self) -> Option<&SampleRecord> {
        self.samples.iter().find(|s| {
            s.rank == self.samples.iter().map(|t| t.rank).max().unwrap_or(0)
        })
    }

    pub fn max_rank(&self) -> usize {
        self.samples.iter().map(|s| s.rank).max().unwrap_or(0)
    }
}

fn record(point: &[FieldElement], rank: usize) -> SampleRecord {
    SampleRecord {
        point: point.iter().map(|x| x.to_string()).collect(),
        rank,
    }
}

/// `ind q = dim q − max rk γ̂` over sampled `γ`.
pub fn index(l: &LieAlgebra, sampling: &Sampling) -> Sampled {
    let n = l.dim();
    let samples: Vec<SampleRecord> = (0..sampling.samples.max(1))
        .map(|i| {
            let g = sampling.point(Purpose::Index, i as u64, n, false);
            let r = l.coadjoint_form(&g).rank();
            record(&g, r)
        })
        .collect();
    let max = samples.iter().map(|s| s.rank).max().unwrap_or(0);
    Sampled {
        value: n - max,
        method: "dim q - max rank of the coadjoint form at sampled points".into(),
        seed: sampling.seed,
        agreeing: samples.iter().filter(|s| s.rank == max).count(),
        samples,
    }
}

/// `b(q) = (ind q + dim q)/2`.
pub fn b_of(l: &LieAlgebra, sampling: &Sampling) -> BigRational {
    let ind = index(l, sampling).value;
    BigRational::new(BigInt::from(ind + l.dim()), BigInt::from(2))
}

/// `bˡ(q) = b(q) − b(l) + ind l`.
pub fn b_rel(l: &LieAlgebra, sub: &Subspace, sampling: &Sampling) -> Result<BigRational, LieError> {
    let la = l.subalgebra(sub, "l")?;
    let ind_l = index(&la, sampling).value;
    Ok(b_of(l, sampling) - b_of(&la, sampling) + BigRational::from_integer(BigInt::from(ind_l)))
}

/// Basis of the invariants `S^d(q)^q` of degree exactly `d`.
pub fn invariants_of_degree(l: &LieAlgebra, d: u32) -> Vec<PolyElement> {
    let n = l.dim();
    let monos: Vec<Vec<i32>> = monomials_up_to(n, d)
        .into_iter()
        .filter(|e| e.iter().sum::<i32>() == d as i32)
        .collect();
    if monos.is_empty() {
        return Vec::new();
    }
    let mut row_of = std::collections::HashMap::new();
    let mut entries: Vec<(usize, usize, FieldElement)> = Vec::new();
    for (j, m) in monos.iter().enumerate() {
        let p = PolyElement::monomial(m.clone(), FieldElement::one());
        for i in 0..n {
            let br = poisson(l, &PolyElement::var(n, i), &p);
            for (e, c) in br.terms() {
                let key = (i, e.clone());
                let len = row_of.len();
                let r = *row_of.entry(key).or_insert(len);
                entries.push((r, j, c.clone()));
            }
        }
    }
    let kernel = if row_of.is_empty() {
        (0..monos.len())
            .map(|j| {
                let mut v = vec![FieldElement::zero(); monos.len()];
                v[j] = FieldElement::one();
                v
            })
            .collect()
    } else {
        let mut m = Matrix::zeros(row_of.len(), monos.len());
        for (r, j, c) in entries {
            m.set(r, j, c);
        }
        m.kernel_basis()
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut p = PolyElement::zero(n);
            for (m, c) in monos.iter().zip(v) {
                if !c.is_zero() {
                    p = p.add(&PolyElement::monomial(m.clone(), c));
                }
            }
            p
        })
        .collect()
}

/// Homogeneous basis of `⊕_{1≤d≤max_deg} S^d(q)^q` (constants omitted).
pub fn symmetric_invariants(l: &LieAlgebra, max_deg: u32) -> Vec<PolyElement> {
    (1..=max_deg).flat_map(|d| invariants_of_degree(l, d)).collect()
}

/// Rank of the Jacobian of `gens` at a point.
pub fn jacobian_rank_at(gens: &[PolyElement], point: &[FieldElement]) -> usize {
    if gens.is_empty() {
        return 0;
    }
    let rows: Vec<Vector> = gens
        .iter()
        .map(|g| g.differential_at(&point.to_vec()).expect("nonzero sample point"))
        .collect();
    Matrix::from_rows(rows).rank()
}

/// Transcendence degree of the algebra generated by `gens` as the maximal
/// Jacobian rank over sampled points.
pub fn trdeg_jacobian(gens: &[PolyElement], dim: usize, sampling: &Sampling) -> Sampled {
    let laurent = gens.iter().any(|g| g.has_laurent());
    let samples: Vec<SampleRecord> = (0..sampling.samples.max(1))
        .map(|i| {
            let p = sampling.point(Purpose::Trdeg, i as u64, dim, laurent);
            let r = jacobian_rank_at(gens, &p);
            record(&p, r)
        })
        .collect();
    let max = samples.iter().map(|s| s.rank).max().unwrap_or(0);
    Sampled {
        value: max,
        method: "max Jacobian rank of the generators at sampled points".into(),
        seed: sampling.seed,
        agreeing: samples.iter().filter(|s| s.rank == max).count(),
        samples,
    }
}

/// Transcendence degree of an associative set through principal symbols.
pub fn trdeg_symbols(gens: &[PBWElement], dim: usize, sampling: &Sampling) -> Sampled {
    let symbols: Vec<PolyElement> = gens.iter().map(|g| g.principal_symbol()).collect();
    trdeg_jacobian(&symbols, dim, sampling)
}

/// `dim q_γ = ind q`.
pub fn is_regular(l: &LieAlgebra, gamma: &LinearForm, index: usize) -> bool {
    l.stabilizer(gamma).dim() == index
}

/// Draws forms until one is regular (bounded attempts).
pub fn sample_regular(l: &LieAlgebra, index: usize, sampling: &Sampling, attempts: u64) -> Option<LinearForm> {
    (0..attempts)
        .map(|i| sampling.point(Purpose::Regular, i, l.dim(), false))
        .find(|g| is_regular(l, g, index))
}

/// Which construction step produced a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenElements {
    Poisson(Vec<PolyElement>),
    Associative(Vec<PBWElement>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Poisson,
    Associative,
}

/// Generators of a (Poisson-)commutative subalgebra with a provenance note
/// for each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub elements: GenElements,
    pub provenance: Vec<String>,
}

impl GeneratorSet {
    pub fn poisson(elements: Vec<PolyElement>, provenance: Vec<String>) -> Self {
        assert_eq!(elements.len(), provenance.len());
        GeneratorSet {
            elements: GenElements::Poisson(elements),
            provenance,
        }
    }

    pub fn associative(elements: Vec<PBWElement>, provenance: Vec<String>) -> Self {
        assert_eq!(elements.len(), provenance.len());
        GeneratorSet {
            elements: GenElements::Associative(elements),
            provenance,
        }
    }

    pub fn flavor(&self) -> Flavor {
        match self.elements {
            GenElements::Poisson(_) => Flavor::Poisson,
            GenElements::Associative(_) => Flavor::Associative,
        }
    }

    pub fn len(&self) -> usize {
        self.provenance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.provenance.is_empty()
    }

    /// Poisson elements, or principal symbols of associative ones.
    pub fn symbols(&self) -> Vec<PolyElement> {
        match &self.elements {
            GenElements::Poisson(v) => v.clone(),
            GenElements::Associative(v) => v.iter().map(|u| u.principal_symbol()).collect(),
        }
    }

    pub fn associative_elements(&self) -> Option<&[PBWElement]> {
        match &self.elements {
            GenElements::Associative(v) => Some(v),
            GenElements::Poisson(_) => None,
        }
    }

    pub fn poisson_elements(&self) -> Option<&[PolyElement]> {
        match &self.elements {
            GenElements::Poisson(v) => Some(v),
            GenElements::Associative(_) => None,
        }
    }

    pub fn trdeg(&self, dim: usize, sampling: &Sampling) -> Sampled {
        trdeg_jacobian(&self.symbols(), dim, sampling)
    }

    pub fn render(&self, labels: &[String]) -> Vec<String> {
        match &self.elements {
            GenElements::Poisson(v) => v.iter().map(|p| p.render(labels)).collect(),
            GenElements::Associative(v) => v.iter().map(|p| p.render(labels)).collect(),
        }
    }
}
