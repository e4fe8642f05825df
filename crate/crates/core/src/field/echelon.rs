use super::{FieldElement, Vector};

/// Incrementally built row echelon form, for membership and independence
/// tests against a growing span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    width: usize,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Remainder of `v` after eliminating every stored pivot.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (k, r) in row.iter().enumerate().skip(*p) {
                if !r.is_zero() {
                    v[k] -= &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.width);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        let r: Vector = r.iter().map(|x| x * &inv).collect();
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_rank_and_membership() {
        let v = |xs: &[i64]| xs.iter().map(|&x| FieldElement::from_int(x)).collect::<Vector>();
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(e.insert(&v(&[1, 2, 0])));
        assert!(!e.insert(&v(&[2, 5, 1])));
        assert!(e.contains(&v(&[1, 3, 1])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        assert_eq!(e.rank(), 2);
    }
}
