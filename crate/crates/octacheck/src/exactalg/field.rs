//! Runtime-configured exact fields: `Q` with big rationals, or `F_p`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;

use crate::{Error, Result};

/// An exact coefficient field, chosen at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    /// The rational numbers with arbitrary-precision integers.
    Q,
    /// The prime field with `p` elements, `p` prime.
    Fp(u64),
}

/// An element of the configured field.
///
/// Rationals are kept reduced by `BigRational`; prime-field elements are the
/// least nonnegative residue. A `Scalar` does not remember its field, so all
/// arithmetic goes through [`Field`] methods.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// A prime field, validating primality of `p`.
    pub fn fp(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Field::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Q, Scalar::Q(x)) => Scalar::Q(-x),
            (Field::Fp(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Field::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(match (self, a) {
            (Field::Q, Scalar::Q(x)) => Scalar::Q(x.recip()),
            (Field::Fp(p), Scalar::Fp(x)) => {
                // extended Euclid on (x, p)
                let (mut r0, mut r1) = (*x as i128, *p as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                Scalar::Fp(s0.rem_euclid(*p as i128) as u64)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// All field elements, for exhaustive enumeration; `None` over `Q`.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Field::Q => None,
            Field::Fp(p) => Some((0..*p).map(Scalar::Fp)),
        }
    }

    /// Number of elements, `None` over `Q`.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Q => None,
            Field::Fp(p) => Some(*p),
        }
    }

    /// A random element; over `Q` a small integer in `[-4, 4]`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Q => self.from_i64(rng.gen_range(-4..=4)),
            Field::Fp(p) => Scalar::Fp(rng.gen_range(0..*p)),
        }
    }

    /// Renders a scalar as `"n"`, `"n/d"` or the residue.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => v.to_string(),
        }
    }

    /// Parses `"n"` or `"n/d"` into a field element.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        fn bad<E>(s: &str) -> impl FnOnce(E) -> Error + '_ {
            move |_| Error::Parse(format!("invalid scalar {s:?}"))
        }
        match self {
            Field::Q => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(bad(s))?;
                    let d: BigInt = d.trim().parse().map_err(bad(s))?;
                    if d.is_zero() {
                        return Err(Error::Parse(format!("zero denominator in {s:?}")));
                    }
                    Ok(Scalar::Q(BigRational::new(n, d)))
                } else {
                    let n: BigInt = s.parse().map_err(bad(s))?;
                    Ok(Scalar::Q(BigRational::from_integer(n)))
                }
            }
            Field::Fp(_) => {
                let n: i64 = s.parse().map_err(bad(s))?;
                Ok(self.from_i64(n))
            }
        }
    }

    /// Renders the field descriptor as accepted by `--field` (`q` or `fp:<p>`).
    pub fn descriptor(&self) -> String {
        match self {
            Field::Q => "q".into(),
            Field::Fp(p) => format!("fp:{p}"),
        }
    }

    /// Parses `q` or `fp:<p>`.
    pub fn from_descriptor(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Q);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("invalid field descriptor {s:?}")))?;
            return Field::fp(p);
        }
        Err(Error::Parse(format!("invalid field descriptor {s:?}")))
    }
}

impl Scalar {
    /// True for the canonical zero of either representation.
    pub fn is_zero_repr(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    /// Signum information used only for display of rationals.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_requires_prime() {
        assert!(Field::fp(5).is_ok());
        assert!(Field::fp(6).is_err());
        assert!(Field::fp(1).is_err());
        assert!(Field::fp(2).is_ok());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::fp(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(2));
        assert_eq!(f.neg(&a), f.from_i64(2));
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert_eq!(f.from_i64(-7), f.from_i64(3));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Q;
        let third = f.div(&f.one(), &f.from_i64(3)).unwrap();
        let sum = f.add(&f.add(&third, &third), &third);
        assert_eq!(sum, f.one());
    }

    #[test]
    fn scalar_round_trip() {
        let f = Field::Q;
        for s in ["2/3", "-7", "0", "10/4"] {
            let v = f.parse(s).unwrap();
            let v2 = f.parse(&f.format(&v)).unwrap();
            assert_eq!(v, v2);
        }
        let f5 = Field::fp(5).unwrap();
        assert_eq!(f5.parse("9").unwrap(), f5.from_i64(4));
    }

    #[test]
    fn field_descriptor_round_trip() {
        for f in [Field::Q, Field::fp(7).unwrap()] {
            assert_eq!(Field::from_descriptor(&f.descriptor()).unwrap(), f);
        }
    }
}
