use std::collections::BTreeMap;

use crate::field::{
    is_zero_vector, unit_vector, zero_vector, Echelon, FieldContext, FieldElement, Matrix, Vector,
};

use super::{HeisenbergSplit, LieError, LinearForm, Subspace};

/// Optional structural data attached to an algebra.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Annotations {
    pub central: Option<Vec<usize>>,
    pub levi: Option<Subspace>,
    pub nilradical: Option<Subspace>,
    pub solvable_radical: Option<Subspace>,
    pub heisenberg_split: Option<HeisenbergSplit>,
}

impl Annotations {
    pub fn is_empty(&self) -> bool {
        *self == Annotations::default()
    }
}

/// Failures found by [`LieAlgebra::validate`]; empty iff the algebra is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub jacobi_failures: Vec<[usize; 3]>,
    pub annotation_failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.jacobi_failures.is_empty() && self.annotation_failures.is_empty()
    }
}

/// A finite-dimensional Lie algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    field: FieldContext,
    brackets: BTreeMap<(usize, usize), Vector>,
    // [e_i, e_j] for all ordered pairs, sparse.
    table: Vec<Vec<(usize, FieldElement)>>,
    pub annotations: Annotations,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.brackets == other.brackets
            && self.annotations == other.annotations
    }
}

impl LieAlgebra {
    /// Builds an algebra from bracket entries `[e_i, e_j] = v`. Entries with
    /// `i > j` are read through antisymmetry; repeated pairs must agree.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        field: FieldContext,
        entries: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self, LieError> {
        let n = labels.len();
        let mut brackets: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(LieError::IndexOutOfRange(i.max(j)));
            }
            if v.len() != n {
                return Err(LieError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if i == j {
                if !is_zero_vector(&v) {
                    return Err(LieError::Inconsistent(format!(
                        "[{0},{0}] must vanish",
                        labels[i]
                    )));
                }
                continue;
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.iter().map(|x| -x).collect())
            };
            if let Some(old) = brackets.get(&key) {
                if *old != v {
                    return Err(LieError::Inconsistent(format!(
                        "conflicting entries for [{},{}]",
                        labels[key.0], labels[key.1]
                    )));
                }
            }
            if is_zero_vector(&v) {
                brackets.remove(&key);
            } else {
                brackets.insert(key, v);
            }
        }
        let mut table = vec![Vec::new(); n * n];
        for (&(i, j), v) in &brackets {
            let sparse: Vec<(usize, FieldElement)> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, x.clone()))
                .collect();
            table[j * n + i] = sparse.iter().map(|(k, x)| (*k, -x)).collect();
            table[i * n + j] = sparse;
        }
        Ok(LieAlgebra {
            name: name.into(),
            labels,
            field,
            brackets,
            table,
            annotations: Annotations::default(),
        })
    }

    pub fn abelian(name: impl Into<String>, labels: Vec<String>) -> Self {
        LieAlgebra::new(name, labels, FieldContext::default(), std::iter::empty())
            .expect("abelian algebra")
    }

    pub fn with_annotations(mut self, annotations: Annotations) -> Self {
        self.annotations = annotations;
        self
    }

    pub fn annotations(&self) -> &Annotations {
        &self.annotations
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.brackets
    }

    /// Highest tower level among the structure constants.
    pub fn level(&self) -> u8 {
        self.brackets
            .values()
            .flatten()
            .map(|x| x.level())
            .max()
            .unwrap_or(0)
    }

    /// `[e_i, e_j]` as a sparse list.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, FieldElement)] {
        &self.table[i * self.dim() + j]
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, a: &[FieldElement], b: &[FieldElement]) -> Result<Vector, LieError> {
        for v in [a, b] {
            if v.len() != self.dim() {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self.br(a, b))
    }

    /// Bracket without the length check.
    pub(crate) fn br(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() || i == j {
                    continue;
                }
                let entry = &self.table[i * n + j];
                if entry.is_empty() {
                    continue;
                }
                let c = ai * bj;
                for (k, x) in entry {
                    out[*k] += &(&c * x);
                }
            }
        }
        out
    }

    /// Matrix of `ad a` in the basis: column `j` is `[a, e_j]`.
    pub fn ad(&self, a: &[FieldElement]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.br(a, &self.unit(j))).collect();
        Matrix::from_cols(&cols, n)
    }

    /// `γ̂(e_i, e_j) = γ([e_i, e_j])`.
    pub fn coadjoint_form(&self, gamma: &LinearForm) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (&(i, j), v) in &self.brackets {
            let val = crate::field::dot(gamma, v);
            if !val.is_zero() {
                m.set(j, i, -&val);
                m.set(i, j, val);
            }
        }
        m
    }

    pub fn stabilizer(&self, gamma: &LinearForm) -> Subspace {
        Subspace::span(self.dim(), self.coadjoint_form(gamma).kernel_basis())
    }

    /// Span of all `[a, b]` with `a ∈ A`, `b ∈ B`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.br(x, y));
            }
        }
        Subspace::span(self.dim(), vs)
    }

    /// `{x ∈ within : [x, s] = 0 for all s ∈ S}`.
    pub fn centralizer(&self, s: &Subspace, within: &Subspace) -> Subspace {
        let n = self.dim();
        if within.is_zero() {
            return within.clone();
        }
        // Unknowns are coordinates in the basis of `within`.
        let mut rows: Vec<Vector> = Vec::new();
        for t in s.basis() {
            let images: Vec<Vector> = within.basis().iter().map(|w| self.br(w, t)).collect();
            for k in 0..n {
                rows.push(images.iter().map(|v| v[k].clone()).collect());
            }
        }
        if rows.is_empty() {
            return within.clone();
        }
        let ker = Matrix::from_rows(rows).kernel_basis();
        Subspace::span(n, ker.iter().map(|c| within.combine(c)))
    }

    pub fn center(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.centralizer(&full, &full)
    }

    /// Basis indices `i` with `e_i` central.
    pub fn central_indices(&self) -> Vec<usize> {
        let n = self.dim();
        (0..n)
            .filter(|&i| (0..n).all(|j| self.table[i * n + j].is_empty()))
            .collect()
    }

    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_spaces(&full, &full)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let e = s.echelon();
        s.basis()
            .iter()
            .enumerate()
            .all(|(i, a)| s.basis()[i + 1..].iter().all(|b| e.contains(&self.br(a, b))))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let e = s.echelon();
        s.basis()
            .iter()
            .all(|a| (0..self.dim()).all(|j| e.contains(&self.br(&self.unit(j), a))))
    }

    pub fn is_abelian(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .enumerate()
            .all(|(i, a)| s.basis()[i + 1..].iter().all(|b| is_zero_vector(&self.br(a, b))))
    }

    /// `C⁰ = S, Cᵏ⁺¹ = [S, Cᵏ]` until it stabilises.
    pub fn lower_central_series(&self, s: &Subspace) -> Vec<Subspace> {
        let mut out = vec![s.clone()];
        loop {
            let next = self.bracket_spaces(s, out.last().expect("nonempty"));
            if next.dim() == out.last().expect("nonempty").dim() {
                return out;
            }
            let done = next.is_zero();
            out.push(next);
            if done {
                return out;
            }
        }
    }

    /// `D⁰ = S, Dᵏ⁺¹ = [Dᵏ, Dᵏ]` until it stabilises.
    pub fn derived_series(&self, s: &Subspace) -> Vec<Subspace> {
        let mut out = vec![s.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(last, last);
            if next.dim() == last.dim() {
                return out;
            }
            let done = next.is_zero();
            out.push(next);
            if done {
                return out;
            }
        }
    }

    /// Nilpotency of the subalgebra `S` (as an algebra in its own right).
    pub fn is_nilpotent(&self, s: &Subspace) -> bool {
        self.lower_central_series(s)
            .last()
            .map(|c| c.is_zero())
            .unwrap_or(true)
    }

    pub fn is_solvable(&self, s: &Subspace) -> bool {
        self.derived_series(s)
            .last()
            .map(|c| c.is_zero())
            .unwrap_or(true)
    }

    /// `K(e_i, e_j) = tr(ad e_i ad e_j)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(&self.unit(i))).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).trace();
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    /// Orthogonal complement of `[q,q]` under the Killing form.
    pub fn computed_solvable_radical(&self) -> Subspace {
        let d = self.derived();
        if d.is_zero() {
            return Subspace::full(self.dim());
        }
        let k = self.killing_form();
        let rows: Vec<Vector> = d.basis().iter().map(|v| k.mul_vec(v)).collect();
        Subspace::span(self.dim(), Matrix::from_rows(rows).kernel_basis())
    }

    pub fn solvable_radical(&self) -> Subspace {
        self.annotations
            .solvable_radical
            .clone()
            .unwrap_or_else(|| self.computed_solvable_radical())
    }

    /// Largest nilpotent ideal: elements whose adjoint operator is orthogonal,
    /// under the trace form, to the associative envelope of `ad q`.
    pub fn computed_nilradical(&self) -> Subspace {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(&self.unit(i))).collect();
        let flat = |m: &Matrix| -> Vector {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| m.get(i, j).clone())
                .collect()
        };
        let mut ech = Echelon::new(n * n);
        let mut envelope = vec![Matrix::identity(n)];
        ech.insert(&flat(&envelope[0]));
        let mut frontier = envelope.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in &frontier {
                for a in &ads {
                    let p = a.mul(m);
                    if ech.insert(&flat(&p)) {
                        next.push(p);
                    }
                }
            }
            envelope.extend(next.iter().cloned());
            frontier = next;
        }
        let rows: Vec<Vector> = envelope
            .iter()
            .map(|b| ads.iter().map(|a| a.mul(b).trace()).collect())
            .collect();
        Subspace::span(n, Matrix::from_rows(rows).kernel_basis())
    }

    pub fn nilradical(&self) -> Subspace {
        if let Some(n) = &self.annotations.nilradical {
            return n.clone();
        }
        if self.is_nilpotent(&Subspace::full(self.dim())) {
            return Subspace::full(self.dim());
        }
        self.computed_nilradical()
    }

    /// Reductive iff the solvable radical is the center.
    pub fn is_reductive(&self) -> bool {
        self.solvable_radical().same_as(&self.center())
    }

    /// Structure constants of the subalgebra `S` in the basis of `S`.
    pub fn subalgebra(&self, s: &Subspace, name: &str) -> Result<LieAlgebra, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotSubalgebra);
        }
        let labels = basis_labels(self, s.basis());
        let mut entries = Vec::new();
        for (i, a) in s.basis().iter().enumerate() {
            for (j, b) in s.basis().iter().enumerate().skip(i + 1) {
                let c = s.coords(&self.br(a, b)).ok_or(LieError::NotSubalgebra)?;
                entries.push((i, j, c));
            }
        }
        LieAlgebra::new(name, labels, self.field.clone(), entries)
    }

    /// Same algebra in a new basis (columns of `basis`, expressed in the old one).
    pub fn rebase(&self, basis: &[Vector], labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        let full = Subspace::span(self.dim(), basis.iter().cloned());
        if full.dim() != self.dim() || basis.len() != self.dim() {
            return Err(LieError::Inconsistent("rebase needs a basis".into()));
        }
        let full = Subspace::from_basis_unchecked(self.dim(), basis.to_vec());
        let mut entries = Vec::new();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let c = full
                    .coords(&self.br(&basis[i], &basis[j]))
                    .expect("basis spans");
                entries.push((i, j, c));
            }
        }
        LieAlgebra::new(self.name.clone(), labels, self.field.clone(), entries)
    }

    /// `self ⊕ other`, labels of `other` primed on collision.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim();
        let m = other.dim();
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        let mut entries = Vec::new();
        for (&(i, j), v) in &self.brackets {
            let mut w = v.clone();
            w.extend(zero_vector(m));
            entries.push((i, j, w));
        }
        for (&(i, j), v) in &other.brackets {
            let mut w = zero_vector(n);
            w.extend(v.iter().cloned());
            entries.push((n + i, n + j, w));
        }
        let mut vars: Vec<_> = self.field.vars().to_vec();
        for v in other.field.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        LieAlgebra::new(
            format!("{}+{}", self.name, other.name),
            labels,
            FieldContext::new(vars),
            entries,
        )
        .expect("direct sum of valid tables")
    }

    /// Jacobi identity on basis triples plus every annotation validator.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let s1 = self.br(&a, &self.br(&b, &c));
                    let s2 = self.br(&b, &self.br(&c, &a));
                    let s3 = self.br(&c, &self.br(&a, &b));
                    if s1.iter().zip(&s2).zip(&s3).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                        report.jacobi_failures.push([i, j, k]);
                    }
                }
            }
        }
        report.annotation_failures = self.annotation_failures();
        report
    }

    fn annotation_failures(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        let ann = &self.annotations;
        let check_dim = |what: &str, s: &Subspace, out: &mut Vec<String>| {
            if s.ambient() != n {
                out.push(format!("{what}: ambient dimension {} != {n}", s.ambient()));
                false
            } else {
                true
            }
        };
        if let Some(c) = &ann.central {
            let actual = self.central_indices();
            for &i in c {
                if i >= n || !actual.contains(&i) {
                    out.push(format!("central: basis index {i} is not central"));
                }
            }
        }
        if let Some(r) = &ann.solvable_radical {
            if check_dim("solvable_radical", r, &mut out) {
                if !self.is_ideal(r) {
                    out.push("solvable_radical: not an ideal".into());
                }
                if !self.is_solvable(r) {
                    out.push("solvable_radical: not solvable".into());
                }
                if !r.same_as(&self.computed_solvable_radical()) {
                    out.push("solvable_radical: differs from the Killing-form radical".into());
                }
            }
        }
        if let Some(nr) = &ann.nilradical {
            if check_dim("nilradical", nr, &mut out) {
                if !self.is_ideal(nr) {
                    out.push("nilradical: not an ideal".into());
                }
                if !self.is_nilpotent(nr) {
                    out.push("nilradical: not nilpotent".into());
                }
            }
        }
        if let Some(l) = &ann.levi {
            if check_dim("levi", l, &mut out) {
                if !self.is_subalgebra(l) {
                    out.push("levi: not a subalgebra".into());
                }
                let r = self.solvable_radical();
                if l.dim() + r.dim() != n || !l.intersect(&r).is_zero() {
                    out.push("levi: not complementary to the solvable radical".into());
                }
            }
        }
        if let Some(split) = &ann.heisenberg_split {
            out.extend(
                split
                    .validate(self)
                    .into_iter()
                    .map(|e| format!("heisenberg_split: {e}")),
            );
        }
        out
    }

    /// Renders a vector as a linear combination of basis labels.
    pub fn render_vector(&self, v: &[FieldElement]) -> String {
        render_combination(&self.labels, v)
    }
}

/// Labels for vectors: the basis label for unit vectors, `w{i}` otherwise.
pub(crate) fn basis_labels(l: &LieAlgebra, vs: &[Vector]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let mut label = match Subspace::as_unit(v) {
            Some(k) => l.labels()[k].clone(),
            None => format!("w{}", i + 1),
        };
        while out.contains(&label) {
            label.push('\'');
        }
        out.push(label);
    }
    out
}

pub fn render_combination(labels: &[String], v: &[FieldElement]) -> String {
    let mut s = String::new();
    for (x, l) in v.iter().zip(labels) {
        if x.is_zero() {
            continue;
        }
        let neg = x.leading_sign() < 0;
        let a = if neg { -x } else { x.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a.is_one() {
            s.push_str(l);
        } else {
            s.push_str(&format!("{}*{}", a.render_factor(), l));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
