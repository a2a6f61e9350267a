//! Dense univariate polynomials over the configured field.

use super::{Field, Scalar};
use crate::{Error, Result};

/// A polynomial in `x` with dense coefficients, index = exponent.
///
/// Invariant: no trailing zero coefficient; the zero polynomial is the empty
/// sequence, so `Eq` is structural equality of canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field, field.one())
    }

    /// `c * x^deg`.
    pub fn monomial(field: Field, c: Scalar, deg: usize) -> Poly {
        if field.is_zero(&c) {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// `x^deg`.
    pub fn x_pow(field: Field, deg: usize) -> Poly {
        Poly::monomial(field, field.one(), deg)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, field: Field, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, field: Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn neg(&self, field: Field) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, field: Field, other: &Poly) -> Poly {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: Field, c: &Scalar) -> Poly {
        if field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, field: Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Poly::from_coeffs(field, coeffs)
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, field: Field, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::Domain("division by zero polynomial".into()));
        }
        let db = b.degree().unwrap();
        let lead_inv = field.inv(b.leading().unwrap())?;
        let mut rem = self.clone();
        let mut q = vec![field.zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let c = field.mul(rem.leading().unwrap(), &lead_inv);
            let shift = dr - db;
            q[shift] = c.clone();
            let sub = b.mul(field, &Poly::monomial(field, c, shift));
            rem = rem.sub(field, &sub);
        }
        Ok((Poly::from_coeffs(field, q), rem))
    }

    /// True iff `b` divides `self` exactly.
    pub fn divisible_by(&self, field: Field, b: &Poly) -> Result<bool> {
        Ok(self.divmod(field, b)?.1.is_zero())
    }

    /// If `self = c * x^n` with `c` a nonzero constant, returns `(c, n)`.
    pub fn as_unit_monomial(&self, field: Field) -> Option<(Scalar, usize)> {
        let d = self.degree()?;
        for i in 0..d {
            if !field.is_zero(&self.coeffs[i]) {
                return None;
            }
        }
        Some((self.coeffs[d].clone(), d))
    }

    /// True iff the polynomial is a nonzero constant.
    pub fn is_unit(&self, field: Field) -> bool {
        matches!(self.as_unit_monomial(field), Some((_, 0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::fp(5).unwrap()
    }

    #[test]
    fn monomial_division() {
        let f = f5();
        let a = Poly::x_pow(f, 3);
        let b = Poly::x_pow(f, 2);
        let (q, r) = a.divmod(f, &b).unwrap();
        assert_eq!(q, Poly::x_pow(f, 1));
        assert!(r.is_zero());
    }

    #[test]
    fn division_with_remainder() {
        // (x^3 + x) / x^2 = (x, x), checked by the multiplication oracle.
        let f = Field::Q;
        let a = Poly::x_pow(f, 3).add(f, &Poly::x_pow(f, 1));
        let b = Poly::x_pow(f, 2);
        let (q, r) = a.divmod(f, &b).unwrap();
        assert_eq!(q, Poly::x_pow(f, 1));
        assert_eq!(r, Poly::x_pow(f, 1));
        assert_eq!(q.mul(f, &b).add(f, &r), a);
    }

    #[test]
    fn zero_dividend() {
        let f = f5();
        let (q, r) = Poly::zero().divmod(f, &Poly::x_pow(f, 1)).unwrap();
        assert!(q.is_zero());
        assert!(r.is_zero());
    }

    #[test]
    fn division_by_zero_rejected() {
        let f = f5();
        assert!(Poly::one(f).divmod(f, &Poly::zero()).is_err());
    }

    #[test]
    fn degree_is_additive_on_products() {
        let f = f5();
        let a = Poly::from_coeffs(f, vec![f.from_i64(1), f.from_i64(2)]);
        let b = Poly::from_coeffs(f, vec![f.from_i64(3), f.from_i64(0), f.from_i64(4)]);
        let p = a.mul(f, &b);
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn unit_monomial_detection() {
        let f = Field::Q;
        let p = Poly::monomial(f, f.from_i64(-2), 3);
        assert_eq!(p.as_unit_monomial(f), Some((f.from_i64(-2), 3)));
        let q = Poly::x_pow(f, 2).add(f, &Poly::one(f));
        assert_eq!(q.as_unit_monomial(f), None);
        assert!(Poly::constant(f, f.from_i64(7)).is_unit(f));
    }

    // 1000 random pairs over F_5 with degrees <= 8: a = q*b + r, deg r < deg b.
    #[test]
    fn random_divmod_identity() {
        use rand::{Rng, SeedableRng};
        let f = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let da = rng.gen_range(0..=8);
            let db = rng.gen_range(0..=8);
            let a = Poly::from_coeffs(f, (0..=da).map(|_| f.sample(&mut rng)).collect());
            let mut b = Poly::from_coeffs(f, (0..=db).map(|_| f.sample(&mut rng)).collect());
            if b.is_zero() {
                b = Poly::one(f);
            }
            let (q, r) = a.divmod(f, &b).unwrap();
            assert_eq!(q.mul(f, &b).add(f, &r), a);
            match (r.degree(), b.degree()) {
                (Some(dr), Some(db)) => assert!(dr < db),
                (None, _) => {}
                _ => unreachable!(),
            }
        }
    }
}
