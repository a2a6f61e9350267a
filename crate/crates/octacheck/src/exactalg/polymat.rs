//! Matrices of polynomials: carriers for differentials and chain maps.

use super::{Field, Poly, Scalar};

/// A row-major grid of polynomials. Acts on column vectors, so a matrix
/// representing `C^k -> C^{k+1}` has `rows = rank(C^{k+1})`,
/// `cols = rank(C^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    pub fn from_rows(rows_vec: Vec<Vec<Poly>>) -> PolyMatrix {
        let rows = rows_vec.len();
        let cols = rows_vec.first().map_or(0, Vec::len);
        assert!(rows_vec.iter().all(|r| r.len() == cols), "ragged rows");
        PolyMatrix {
            rows,
            cols,
            entries: rows_vec.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self, field: Field) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c) == &Poly::one(field)
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn add(&self, field: Field, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(field, b))
                .collect(),
        }
    }

    pub fn sub(&self, field: Field, other: &PolyMatrix) -> PolyMatrix {
        self.add(field, &other.neg(field))
    }

    pub fn neg(&self, field: Field) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.neg(field)).collect(),
        }
    }

    pub fn scale(&self, field: Field, c: &Scalar) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.scale(field, c)).collect(),
        }
    }

    pub fn mul(&self, field: Field, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = PolyMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(field, &a.mul(field, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Largest entry degree, or `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block2x2(
        field: Field,
        a: &PolyMatrix,
        b: &PolyMatrix,
        c: &PolyMatrix,
        d: &PolyMatrix,
    ) -> PolyMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let _ = field;
        let mut out = PolyMatrix::zero(a.rows + c.rows, a.cols + b.cols);
        let mut put = |m: &PolyMatrix, r0: usize, c0: usize| {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.set(r0 + r, c0 + c, m.get(r, c).clone());
                }
            }
        };
        put(a, 0, 0);
        put(b, 0, a.cols);
        put(c, a.rows, 0);
        put(d, a.rows, a.cols);
        out
    }

    /// Row and column selection, preserving order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                out.set(ri, ci, self.get(r, c).clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_shapes_and_values() {
        let f = Field::Q;
        let a = PolyMatrix::from_rows(vec![vec![Poly::x_pow(f, 1), Poly::one(f)]]);
        let b = PolyMatrix::from_rows(vec![vec![Poly::x_pow(f, 2)], vec![Poly::x_pow(f, 3)]]);
        let p = a.mul(f, &b);
        assert_eq!((p.rows, p.cols), (1, 1));
        assert_eq!(p.get(0, 0), &Poly::x_pow(f, 3).scale(f, &f.from_i64(2)));
    }

    #[test]
    fn identity_and_zero() {
        let f = Field::fp(3).unwrap();
        let id = PolyMatrix::identity(f, 2);
        assert!(id.is_identity(f));
        let z = PolyMatrix::zero(2, 2);
        assert!(z.is_zero());
        assert_eq!(id.mul(f, &z), z);
    }
}
