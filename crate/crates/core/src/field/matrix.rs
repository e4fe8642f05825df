//! Dense matrices over the field tower with fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::FieldElement;
use super::poly::MPoly;

pub type Vector = Vec<FieldElement>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Row echelon form produced by Bareiss elimination.
struct Echelon {
    m: Matrix,
    pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vector], nrows: usize) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> FieldElement {
        let mut acc = FieldElement::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    /// Map every entry, e.g. to evaluate tower variables at a point.
    pub fn try_map(&self, f: impl Fn(&FieldElement) -> Option<FieldElement>) -> Option<Matrix> {
        let data = self.data.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Bareiss elimination after clearing row denominators.
    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        for i in 0..m.rows {
            let scale = clearing_multiplier(m.row(i));
            if !scale.is_one() {
                for j in 0..m.cols {
                    let v = m.get(i, j) * &scale;
                    m.set(i, j, v);
                }
            }
        }
        let mut prev = FieldElement::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let piv = m.get(r, c).clone();
            for i in (r + 1)..m.rows {
                let lead = m.get(i, c).clone();
                for j in (c + 1)..m.cols {
                    let a = &piv * m.get(i, j);
                    let b = &lead * m.get(r, j);
                    let v = if a == b {
                        FieldElement::zero()
                    } else {
                        &(&a - &b) / &prev
                    };
                    m.set(i, j, v);
                }
                m.set(i, c, FieldElement::zero());
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, each vector cleared of
    /// denominators and content.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Echelon { m, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![FieldElement::zero(); self.cols];
                x[f] = FieldElement::one();
                for (row, &pc) in pivots.iter().enumerate().rev() {
                    let mut acc = FieldElement::zero();
                    for j in (pc + 1)..self.cols {
                        if !x[j].is_zero() && !m.get(row, j).is_zero() {
                            acc += &(m.get(row, j) * &x[j]);
                        }
                    }
                    x[pc] = -(&acc / m.get(row, pc));
                }
                clear_vector(x)
            })
            .collect()
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        if rows.is_empty() {
            return Some(vec![FieldElement::zero(); self.cols]);
        }
        let aug = Matrix::from_rows(std::mem::take(&mut rows));
        let Echelon { m, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElement::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = m.get(row, self.cols).clone();
            for j in (pc + 1)..self.cols {
                if !x[j].is_zero() && !m.get(row, j).is_zero() {
                    acc -= &(m.get(row, j) * &x[j]);
                }
            }
            x[pc] = &acc / m.get(row, pc);
        }
        Some(x)
    }

    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut sign = FieldElement::one();
        let mut prev = FieldElement::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return FieldElement::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                sign = -sign;
            }
            let piv = m.get(c, c).clone();
            for i in (c + 1)..n {
                let lead = m.get(i, c).clone();
                for j in (c + 1)..n {
                    let v = &(&(&piv * m.get(i, j)) - &(&lead * m.get(c, j))) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, c, FieldElement::zero());
            }
            prev = piv;
        }
        if n == 0 {
            return FieldElement::one();
        }
        &sign * m.get(n - 1, n - 1)
    }
}

/// Multiplier clearing all denominators in a row.
fn clearing_multiplier(row: &[FieldElement]) -> FieldElement {
    if row.iter().all(|x| x.as_rational().is_some()) {
        let l = row.iter().fold(BigInt::one(), |acc, x| {
            acc.lcm(x.as_rational().expect("rational").denom())
        });
        return FieldElement::from_rational(BigRational::from_integer(l));
    }
    let mut poly_lcm = MPoly::one();
    let mut int_lcm = BigInt::one();
    for x in row.iter().filter(|x| !x.is_zero()) {
        poly_lcm = poly_lcm.lcm(&x.denom());
        int_lcm = int_lcm.lcm(&x.numer().coeff_denominator_lcm());
    }
    FieldElement::from_poly(poly_lcm.scale(&BigRational::from_integer(int_lcm)))
}

/// Scale a vector so its entries are polynomials with no common factor and
/// its first nonzero entry has positive leading coefficient.
pub fn clear_vector(x: Vector) -> Vector {
    if x.iter().all(|e| e.is_zero()) {
        return x;
    }
    let mult = clearing_multiplier(&x);
    let x: Vector = x.iter().map(|e| e * &mult).collect();
    let content = if x.iter().all(|e| e.as_rational().is_some()) {
        let g = x.iter().fold(BigInt::zero(), |acc, e| {
            acc.gcd(e.as_rational().expect("rational").numer())
        });
        FieldElement::from_rational(BigRational::from_integer(g))
    } else {
        let g = x
            .iter()
            .filter(|e| !e.is_zero())
            .fold(MPoly::zero(), |acc, e| acc.gcd(&e.numer()));
        FieldElement::from_poly(g)
    };
    let sign = x
        .iter()
        .find(|e| !e.is_zero())
        .map(|e| e.leading_sign())
        .unwrap_or(1);
    let content = if sign < 0 { -content } else { content };
    x.iter().map(|e| e / &content).collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
