//! Built-in algebras and a generator of random Heisenberg extensions.

use rand::Rng;

use crate::field::{zero_vector, FieldContext, FieldElement, Matrix, Vector};

use super::{Annotations, HeisenbergSplit, LieAlgebra, LieError, Subspace};

pub const PRESET_NAMES: &[&str] = &[
    "abelian(n)",
    "heisenberg(n)",
    "aff1",
    "sl2",
    "sl3",
    "gl2",
    "gl3",
    "gl4",
    "borel-sl2",
    "borel-sl3",
    "sl2-semidirect-h3",
    "so3",
    "so4",
];

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn sparse(n: usize, entries: &[(usize, i64)]) -> Vector {
    let mut v = zero_vector(n);
    for &(k, c) in entries {
        v[k] = FieldElement::from_int(c);
    }
    v
}

fn parametrised(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    inner.trim().parse().ok()
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<LieAlgebra, LieError> {
    if let Some(n) = parametrised(name, "abelian") {
        return Ok(abelian(n));
    }
    if let Some(n) = parametrised(name, "heisenberg") {
        return Ok(heisenberg(n));
    }
    let q = match name {
        "h3" => heisenberg(1),
        "aff1" => {
            
            LieAlgebra::new(
                "aff1",
                labels(&["t", "y"]),
                FieldContext::default(),
                vec![(0, 1, sparse(2, &[(1, 1)]))],
            )?
        }
        "sl2" => sl2(),
        "sl3" => gl_like("sl3", 3, true)?,
        "gl2" => gl_like("gl2", 2, false)?,
        "gl3" => gl_like("gl3", 3, false)?,
        "gl4" => gl_like("gl4", 4, false)?,
        "borel-sl2" => LieAlgebra::new(
            "borel-sl2",
            labels(&["h", "e"]),
            FieldContext::default(),
            vec![(0, 1, sparse(2, &[(1, 2)]))],
        )?,
        "borel-sl3" => {
            let sl3 = gl_like("sl3", 3, true)?;
            // e1, e2, e3, h1, h2 occupy the first five slots of sl3.
            let mut b = sl3.subalgebra(&Subspace::units(8, &[3, 4, 0, 1, 2]), "borel-sl3")?;
            b.set_name("borel-sl3");
            b
        }
        "sl2-semidirect-h3" => semidirect(),
        "so3" => LieAlgebra::new(
            "so3",
            labels(&["l1", "l2", "l3"]),
            FieldContext::default(),
            vec![
                (0, 1, sparse(3, &[(2, 1)])),
                (1, 2, sparse(3, &[(0, 1)])),
                (2, 0, sparse(3, &[(1, 1)])),
            ],
        )?,
        "so4" => so4()?,
        _ => return Err(LieError::UnknownPreset(name.to_string())),
    };
    Ok(q)
}

pub fn abelian(n: usize) -> LieAlgebra {
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    LieAlgebra::abelian(format!("abelian({n})"), names)
}

/// `h_{2n+1}` with basis `x₁…xₙ, y₁…yₙ, z`.
pub fn heisenberg(n: usize) -> LieAlgebra {
    let d = 2 * n + 1;
    let names: Vec<String> = if n == 1 {
        labels(&["x", "y", "z"])
    } else {
        (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .chain(std::iter::once("z".to_string()))
            .collect()
    };
    let entries = (0..n).map(|i| (i, n + i, sparse(d, &[(2 * n, 1)])));
    let l = LieAlgebra::new(format!("heisenberg({n})"), names, FieldContext::default(), entries)
        .expect("heisenberg table");
    let ann = Annotations {
        central: Some(vec![2 * n]),
        ..Default::default()
    };
    l.with_annotations(ann)
}

fn sl2() -> LieAlgebra {
    LieAlgebra::new(
        "sl2",
        labels(&["e", "h", "f"]),
        FieldContext::default(),
        vec![
            (1, 0, sparse(3, &[(0, 2)])),
            (1, 2, sparse(3, &[(2, -2)])),
            (0, 2, sparse(3, &[(1, 1)])),
        ],
    )
    .expect("sl2 table")
}

/// The semidirect product `sl2 ⋉ h₃` with `v = span{x, y}` the standard
/// representation.
fn semidirect() -> LieAlgebra {
    let s = |e: &[(usize, i64)]| sparse(6, e);
    let (e, h, f, x, y, z) = (0, 1, 2, 3, 4, 5);
    let l = LieAlgebra::new(
        "sl2-semidirect-h3",
        labels(&["e", "h", "f", "x", "y", "z"]),
        FieldContext::default(),
        vec![
            (h, e, s(&[(e, 2)])),
            (h, f, s(&[(f, -2)])),
            (e, f, s(&[(h, 1)])),
            (e, y, s(&[(x, 1)])),
            (f, x, s(&[(y, 1)])),
            (h, x, s(&[(x, 1)])),
            (h, y, s(&[(y, -1)])),
            (x, y, s(&[(z, 1)])),
        ],
    )
    .expect("semidirect table");
    let levi = Subspace::units(6, &[e, h, f]);
    let nil = Subspace::units(6, &[x, y, z]);
    let ann = Annotations {
        central: Some(vec![z]),
        levi: Some(levi.clone()),
        nilradical: Some(nil.clone()),
        solvable_radical: Some(nil),
        heisenberg_split: Some(HeisenbergSplit {
            l_basis: levi,
            x: vec![l.unit(x)],
            y: vec![l.unit(y)],
            z: l.unit(z),
        }),
    };
    l.with_annotations(ann)
}

fn elementary(k: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(k, k);
    m.set(i, j, FieldElement::one());
    m
}

fn flatten(m: &Matrix) -> Vector {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).clone())
        .collect()
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j) - b.get(i, j)).collect())
        .collect();
    Matrix::from_rows(rows)
}

/// Linear Lie algebra spanned by `mats` under the commutator.
pub fn from_matrices(
    name: &str,
    names: Vec<String>,
    mats: &[Matrix],
) -> Result<LieAlgebra, LieError> {
    let flat: Vec<Vector> = mats.iter().map(flatten).collect();
    let width = flat.first().map(|v| v.len()).unwrap_or(0);
    let span = Subspace::span(width, flat.iter().cloned());
    if span.dim() != mats.len() {
        return Err(LieError::Inconsistent("matrices are linearly dependent".into()));
    }
    let span = Subspace::from_basis_unchecked(width, flat);
    let mut entries = Vec::new();
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let c = sub(&mats[i].mul(&mats[j]), &mats[j].mul(&mats[i]));
            let coords = span
                .coords(&flatten(&c))
                .ok_or_else(|| LieError::Inconsistent("matrices not closed under commutator".into()))?;
            entries.push((i, j, coords));
        }
    }
    LieAlgebra::new(name, names, FieldContext::default(), entries)
}

/// `gl_k` in the basis `e_ij`, or `sl_k` in the Chevalley-style basis
/// `e…, h…, f…` (positive roots, Cartan, negative roots).
fn gl_like(name: &str, k: usize, traceless: bool) -> Result<LieAlgebra, LieError> {
    let mut mats = Vec::new();
    let mut names = Vec::new();
    if traceless {
        // Positive roots ordered by height: simple ones first.
        let mut pos: Vec<(usize, usize)> = Vec::new();
        for height in 1..k {
            for i in 0..k - height {
                pos.push((i, i + height));
            }
        }
        for (idx, &(i, j)) in pos.iter().enumerate() {
            mats.push(elementary(k, i, j));
            names.push(format!("e{}", idx + 1));
        }
        for i in 0..k - 1 {
            mats.push(sub(&elementary(k, i, i), &elementary(k, i + 1, i + 1)));
            names.push(format!("h{}", i + 1));
        }
        for (idx, &(i, j)) in pos.iter().enumerate() {
            mats.push(elementary(k, j, i));
            names.push(format!("f{}", idx + 1));
        }
    } else {
        for i in 0..k {
            for j in 0..k {
                mats.push(elementary(k, i, j));
                names.push(format!("e{}{}", i + 1, j + 1));
            }
        }
    }
    from_matrices(name, names, &mats)
}

fn so4() -> Result<LieAlgebra, LieError> {
    let mut mats = Vec::new();
    let mut names = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            mats.push(sub(&elementary(4, i, j), &elementary(4, j, i)));
            names.push(format!("m{}{}", i + 1, j + 1));
        }
    }
    from_matrices("so4", names, &mats)
}

/// Matrix of `w ↦ {Q, w}` on `v = span{x, y}` for the quadratic form with
/// symmetric Gram matrix `s`, where `{xᵢ, yⱼ} = δᵢⱼ`.
fn hamiltonian(s: &Matrix) -> Matrix {
    let n2 = s.rows();
    let n = n2 / 2;
    let mut j = Matrix::zeros(n2, n2);
    for i in 0..n {
        j.set(i, n + i, FieldElement::one());
        j.set(n + i, i, -FieldElement::one());
    }
    j.mul(s)
}

fn symmetric_from(n2: usize, entries: &[(usize, usize, i64)]) -> Matrix {
    let mut s = Matrix::zeros(n2, n2);
    for &(a, b, c) in entries {
        let c = FieldElement::from_int(c);
        s.set(a, b, s.get(a, b) + &c);
        if a != b {
            s.set(b, a, s.get(b, a) + &c);
        }
    }
    s
}

/// Random `l ⋉ h_{2n+1}` with `l ⊂ sp(2n)` of dimension `l_dim ∈ 1..=3`.
///
/// `l` is a standard subalgebra (a line, a Borel of `sl2`, `sl2`, or a torus)
/// conjugated by random symplectic transvections.
pub fn random_heisenberg_extension<R: Rng>(
    rng: &mut R,
    n: usize,
    l_dim: usize,
) -> (LieAlgebra, HeisenbergSplit) {
    assert!(n >= 1 && (1..=3).contains(&l_dim));
    let n2 = 2 * n;
    let mut small = || FieldElement::from_int(rng.gen_range(-3..=3));
    let base: Vec<Matrix> = if l_dim == 1 {
        let mut s = Matrix::zeros(n2, n2);
        for a in 0..n2 {
            for b in a..n2 {
                let c = small();
                s.set(a, b, c.clone());
                s.set(b, a, c);
            }
        }
        if s.is_zero() {
            s.set(0, 0, FieldElement::one());
        }
        vec![hamiltonian(&s)]
    } else {
        // x1*y1, x1^2, y1^2 span an sl2; the first two a Borel.
        let xy = hamiltonian(&symmetric_from(n2, &[(0, n, 1)]));
        let xx = hamiltonian(&symmetric_from(n2, &[(0, 0, 1)]));
        let yy = hamiltonian(&symmetric_from(n2, &[(n, n, 1)]));
        match (l_dim, n) {
            (2, _) => vec![xy, xx],
            (3, 3) if small().is_zero() => (0..3)
                .map(|i| hamiltonian(&symmetric_from(n2, &[(i, n + i, 1)])))
                .collect(),
            _ => vec![xy, xx, yy],
        }
    };
    // Conjugate by transvections T_u = 1 + u uᵀJ.
    let mut j = Matrix::zeros(n2, n2);
    for i in 0..n {
        j.set(i, n + i, FieldElement::one());
        j.set(n + i, i, -FieldElement::one());
    }
    let mut g = Matrix::identity(n2);
    let mut g_inv = Matrix::identity(n2);
    for _ in 0..2 {
        let u: Vector = (0..n2).map(|_| FieldElement::from_int(rng.gen_range(-2..=2))).collect();
        let ucol = Matrix::from_cols(std::slice::from_ref(&u), n2);
        let outer = ucol.mul(&ucol.transpose()).mul(&j);
        let t = add(&Matrix::identity(n2), &outer);
        let t_inv = sub(&Matrix::identity(n2), &outer);
        g = t.mul(&g);
        g_inv = g_inv.mul(&t_inv);
    }
    let mats: Vec<Matrix> = base.iter().map(|x| g.mul(x).mul(&g_inv)).collect();

    let k = mats.len();
    let d = k + n2 + 1;
    let lalg = from_matrices(
        "l",
        (1..=k).map(|i| format!("l{i}")).collect(),
        &mats,
    )
    .expect("conjugated subalgebra is closed");
    let mut entries = Vec::new();
    for (&(a, b), c) in lalg.brackets() {
        let mut v = c.clone();
        v.extend(zero_vector(n2 + 1));
        entries.push((a, b, v));
    }
    for (a, m) in mats.iter().enumerate() {
        for w in 0..n2 {
            let mut v = zero_vector(d);
            for r in 0..n2 {
                v[k + r] = m.get(r, w).clone();
            }
            entries.push((a, k + w, v));
        }
    }
    for i in 0..n {
        entries.push((k + i, k + n + i, sparse(d, &[(d - 1, 1)])));
    }
    let names: Vec<String> = (1..=k)
        .map(|i| format!("l{i}"))
        .chain((1..=n).map(|i| format!("x{i}")))
        .chain((1..=n).map(|i| format!("y{i}")))
        .chain(std::iter::once("z".to_string()))
        .collect();
    let q = LieAlgebra::new(
        format!("random-l{k}-h{}", 2 * n + 1),
        names,
        FieldContext::default(),
        entries,
    )
    .expect("random extension table");
    let unit = |i: usize| q.unit(i);
    let split = HeisenbergSplit {
        l_basis: Subspace::units(d, &(0..k).collect::<Vec<_>>()),
        x: (0..n).map(|i| unit(k + i)).collect(),
        y: (0..n).map(|i| unit(k + n + i)).collect(),
        z: unit(d - 1),
    };
    (q, split)
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j) + b.get(i, j)).collect())
        .collect();
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_preset_is_valid() {
        for name in [
            "abelian(3)",
            "heisenberg(2)",
            "aff1",
            "sl2",
            "sl3",
            "gl2",
            "gl3",
            "gl4",
            "borel-sl2",
            "borel-sl3",
            "sl2-semidirect-h3",
            "so3",
            "so4",
        ] {
            let q = preset(name).unwrap();
            let r = q.validate();
            assert!(r.is_valid(), "{name}: {r:?}");
        }
        assert!(preset("nope").is_err());
    }

    #[test]
    fn sl3_basis_layout() {
        let q = preset("sl3").unwrap();
        assert_eq!(q.labels(), &["e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"]);
        // [e1, e2] = e3
        assert_eq!(q.br(&q.unit(0), &q.unit(1)), q.unit(2));
        let b = preset("borel-sl3").unwrap();
        assert_eq!(b.labels(), &["h1", "h2", "e1", "e2", "e3"]);
    }

    #[test]
    fn random_extensions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            for l_dim in 1..=3 {
                let (q, split) = random_heisenberg_extension(&mut rng, n, l_dim);
                assert!(q.validate().is_valid());
                assert!(split.validate(&q).is_empty(), "{:?}", split.validate(&q));
            }
        }
    }
}
