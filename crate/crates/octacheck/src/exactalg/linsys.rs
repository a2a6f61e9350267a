//! Dense exact linear algebra over the field: matrices, reduced row echelon
//! form, and affine solution spaces of linear systems.

use super::{Field, Scalar};

/// A dense matrix of field scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> ScalarMat {
        ScalarMat {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> ScalarMat {
        let mut m = ScalarMat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> ScalarMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ScalarMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
        .assert_field(field)
    }

    fn assert_field(self, _field: Field) -> ScalarMat {
        self
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self, field: Field) -> bool {
        self.data.iter().all(|v| field.is_zero(v))
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn add(&self, field: Field, other: &ScalarMat) -> ScalarMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ScalarMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, field: Field, other: &ScalarMat) -> ScalarMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ScalarMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, field: Field) -> ScalarMat {
        ScalarMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.neg(a)).collect(),
        }
    }

    pub fn scale(&self, field: Field, c: &Scalar) -> ScalarMat {
        ScalarMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, field: Field, other: &ScalarMat) -> ScalarMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = ScalarMat::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), &field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, field: Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for j in 0..self.cols {
                    acc = field.add(&acc, &field.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self, _field: Field) -> ScalarMat {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        ScalarMat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self, field: Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !field.is_zero(self.get(r, col))) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = field.inv(self.get(row, col)).unwrap();
            for c in col..self.cols {
                let v = field.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || field.is_zero(self.get(r, col)) {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = field.sub(self.get(r, c), &field.mul(&factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, field: Field) -> usize {
        let mut m = self.clone();
        m.rref(field).len()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, field: Field) -> Option<ScalarMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = ScalarMat::zero(field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, field.one());
        }
        let pivots = aug.rref(field);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = ScalarMat::zero(field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, field: Field) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    /// A basis of `ker(self)` as column vectors.
    pub fn kernel_basis(&self, field: Field) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = field.neg(m.get(prow, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Is `v` in the column span of `self`?
    pub fn column_space_contains(&self, field: Field, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.rows);
        let mut aug = ScalarMat::zero(field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, v[r].clone());
        }
        !aug.rref(field).contains(&self.cols)
    }
}

/// A system of affine-linear equations `sum_j a_ij t_j = b_i`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub unknowns: usize,
    rows: Vec<(Vec<(usize, Scalar)>, Scalar)>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> LinearSystem {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
        }
    }

    /// Adds one equation with sparse left-hand side and right-hand constant.
    pub fn add_equation(&mut self, lhs: Vec<(usize, Scalar)>, rhs: Scalar) {
        debug_assert!(lhs.iter().all(|(j, _)| *j < self.unknowns));
        self.rows.push((lhs, rhs));
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    /// Gaussian elimination over the exact field.
    pub fn solve_affine(&self, field: Field) -> AffineSolutionSpace {
        let n = self.unknowns;
        let mut aug = ScalarMat::zero(field, self.rows.len(), n + 1);
        for (r, (lhs, rhs)) in self.rows.iter().enumerate() {
            for (j, c) in lhs {
                let v = field.add(aug.get(r, *j), c);
                aug.set(r, *j, v);
            }
            aug.set(r, n, rhs.clone());
        }
        let pivots = aug.rref(field);
        if pivots.contains(&n) {
            return AffineSolutionSpace {
                ambient_dim: n,
                particular: None,
                basis: Vec::new(),
            };
        }
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut particular = vec![field.zero(); n];
        for (prow, &pcol) in pivots.iter().enumerate() {
            particular[pcol] = aug.get(prow, n).clone();
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); n];
            v[free] = field.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = field.neg(aug.get(prow, free));
            }
            basis.push(v);
        }
        AffineSolutionSpace {
            ambient_dim: n,
            particular: Some(particular),
            basis,
        }
    }
}

/// The solution set of an affine-linear system: empty, or
/// `particular + span(basis)` with an independent homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    pub ambient_dim: usize,
    /// `None` marks an infeasible system.
    pub particular: Option<Vec<Scalar>>,
    pub basis: Vec<Vec<Scalar>>,
}

impl AffineSolutionSpace {
    pub fn is_infeasible(&self) -> bool {
        self.particular.is_none()
    }

    /// Dimension of the solution set (0 for a unique solution).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `particular + sum_i coeffs[i] * basis[i]`.
    pub fn point(&self, field: Field, coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
        let part = self.particular.as_ref()?;
        assert_eq!(coeffs.len(), self.basis.len());
        let mut v = part.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if field.is_zero(c) {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = field.add(vi, &field.mul(c, bi));
            }
        }
        Some(v)
    }

    /// Exhaustively enumerates all points over a finite field, when the count
    /// `p^dim` does not exceed `cap`. Returns `None` over `Q` or above cap.
    pub fn enumerate(&self, field: Field, cap: u64) -> Option<Vec<Vec<Scalar>>> {
        let p = field.order()?;
        self.particular.as_ref()?;
        let d = self.basis.len() as u32;
        let total = p.checked_pow(d)?;
        if total > cap {
            return None;
        }
        let mut points = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u64; d as usize];
        loop {
            let cs: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::Fp(c)).collect();
            points.push(self.point(field, &cs).unwrap());
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return Some(points);
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    /// Streams every point of the solution set over a finite field, calling
    /// `accept` on each; stops early on acceptance. Returns `None` when the
    /// space is not enumerable within `cap` points, `Some(Some(p))` for an
    /// accepted point, `Some(None)` when the whole space was rejected.
    ///
    /// Enumeration is odometer-style: incrementing coefficient `i` adds
    /// `basis[i]` to the running point, and a wraparound adds it a final
    /// time (`p * b = 0`), so each step costs one vector addition.
    pub fn find_point(
        &self,
        field: Field,
        cap: u64,
        mut accept: impl FnMut(&[Scalar]) -> bool,
    ) -> Option<Option<Vec<Scalar>>> {
        let p = field.order()?;
        let particular = self.particular.as_ref()?;
        let d = self.basis.len() as u32;
        let total = p.checked_pow(d)?;
        if total > cap {
            return None;
        }
        let mut point = particular.clone();
        let mut coeffs = vec![0u64; d as usize];
        loop {
            if accept(&point) {
                return Some(Some(point));
            }
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return Some(None);
                }
                for (x, b) in point.iter_mut().zip(&self.basis[i]) {
                    *x = field.add(x, b);
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    /// True iff `v` solves the system (lies in `particular + span(basis)`).
    pub fn contains(&self, field: Field, v: &[Scalar]) -> bool {
        let Some(part) = &self.particular else {
            return false;
        };
        assert_eq!(v.len(), self.ambient_dim);
        let diff: Vec<Scalar> = v.iter().zip(part).map(|(a, b)| field.sub(a, b)).collect();
        if self.basis.is_empty() {
            return diff.iter().all(|c| field.is_zero(c));
        }
        let cols: Vec<Vec<Scalar>> = self.basis.clone();
        let mut m = ScalarMat::zero(field, self.ambient_dim, cols.len());
        for (c, b) in cols.iter().enumerate() {
            for (r, val) in b.iter().enumerate() {
                m.set(r, c, val.clone());
            }
        }
        m.column_space_contains(field, &diff)
    }
}
