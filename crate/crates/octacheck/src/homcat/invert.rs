//! Invertibility in the presented category.
//!
//! End rings of the summands are local (`End(P_n) = K[x]/(x^n)`), so a
//! morphism between direct sums is invertible iff the source and target
//! have the same summand multiset and, per isomorphism class, the matrix of
//! `x^0`-coefficients between matching summands is invertible over `K`.
//! Everything else lies in the radical, which is nilpotent, and the inverse
//! is assembled by a terminating Neumann series.

use super::{BasisMor, HomElement, HomMatrix};
use crate::exactalg::{Field, ScalarMat};

/// Returns a verified two-sided inverse when `u` is invertible.
pub fn is_invertible(field: Field, u: &HomMatrix) -> Option<HomMatrix> {
    if u.src.isotype_multiset() != u.tgt.isotype_multiset() {
        return None;
    }
    let src_pos = u.src.isotype_positions();
    let tgt_pos = u.tgt.isotype_positions();

    // per class: the K-matrix of x^0 coefficients, then its inverse
    let mut v0 = HomMatrix::zero(u.tgt.clone(), u.src.clone());
    for (class, srcs) in &src_pos {
        let tgts = &tgt_pos[class];
        let k = srcs.len();
        let mut m = ScalarMat::zero(field, k, k);
        for (rr, &r) in tgts.iter().enumerate() {
            for (cc, &c) in srcs.iter().enumerate() {
                m.set(rr, cc, u.entry(r, c).coeff(field, 0));
            }
        }
        let inv = m.inverse(field)?;
        for (rr, &r) in srcs.iter().enumerate() {
            for (cc, &c) in tgts.iter().enumerate() {
                let coeff = inv.get(rr, cc).clone();
                if field.is_zero(&coeff) {
                    continue;
                }
                let s = u.tgt.summands[c];
                let t = u.src.summands[r];
                v0.set_entry(
                    r,
                    c,
                    HomElement::from_basis(field, &BasisMor::x(0, s, t), coeff),
                );
            }
        }
    }

    // v0 . u = 1 + r with r nilpotent; invert by the Neumann series
    let id_src = HomMatrix::identity(field, &u.src);
    let id_tgt = HomMatrix::identity(field, &u.tgt);
    let r = HomMatrix::compose(field, &v0, u)
        .unwrap()
        .sub(field, &id_src);
    let cap = 2 * u.src.summands.iter().map(|s| s.n).sum::<usize>() + 4;
    let mut series = id_src.clone();
    let mut power = r.neg(field);
    let mut steps = 0;
    while !power.is_zero() {
        series = series.add(field, &power);
        power = HomMatrix::compose(field, &power, &r.neg(field)).unwrap();
        steps += 1;
        assert!(steps <= cap, "radical failed to nilpotate");
    }
    let inv = HomMatrix::compose(field, &series, &v0).unwrap();

    // the criterion is exact; both verifications must pass
    let left = HomMatrix::compose(field, &inv, u).unwrap();
    let right = HomMatrix::compose(field, u, &inv).unwrap();
    assert_eq!(left, id_src, "left inverse verification failed");
    assert_eq!(right, id_tgt, "right inverse verification failed");
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{LinearSystem, Scalar};
    use crate::homcat::{HomUnknowns, PObject, Summand};

    #[test]
    fn identity_is_invertible() {
        let f = Field::Q;
        let e = PObject::from_summands(vec![(2, 1), (2, 0)]);
        let id = HomMatrix::identity(f, &e);
        let inv = is_invertible(f, &id).unwrap();
        assert_eq!(inv, id);
    }

    #[test]
    fn unipotent_perturbation_is_invertible() {
        // 1 + eps with eps the y^2 corner entry of End(P_2[1] + P_2)
        let f = Field::Q;
        let e = PObject::from_summands(vec![(2, 1), (2, 0)]);
        let mut eps = HomMatrix::zero(e.clone(), e.clone());
        eps.set_entry(
            0,
            1,
            HomElement::from_basis(
                f,
                &BasisMor::y(2, Summand::new(2, 0), Summand::new(2, 1)),
                f.one(),
            ),
        );
        let u = HomMatrix::identity(f, &e).add(f, &eps);
        let inv = is_invertible(f, &u).unwrap();
        let expected = HomMatrix::identity(f, &e).sub(f, &eps);
        assert_eq!(inv, expected);
    }

    #[test]
    fn radical_elements_are_not_invertible() {
        let f = Field::Q;
        let p3 = PObject::single(3, 0);
        let mut u = HomMatrix::zero(p3.clone(), p3.clone());
        u.set_entry(
            0,
            0,
            HomElement::from_basis(
                f,
                &BasisMor::x(1, Summand::new(3, 0), Summand::new(3, 0)),
                f.one(),
            ),
        );
        assert!(is_invertible(f, &u).is_none());
    }

    #[test]
    fn mismatched_objects_are_never_isomorphic() {
        let f = Field::Q;
        let a = PObject::single(3, 0);
        let b = PObject::single(2, 0);
        let u = HomUnknowns::new(&a, &b);
        let m = u.matrix_from(f, &vec![f.one(); u.len()]);
        assert!(is_invertible(f, &m).is_none());
    }

    // agreement with a brute-force two-sided-inverse search through the
    // composition equations, on random endomorphisms over F_3
    #[test]
    fn agrees_with_linear_inverse_search_on_octahedron_objects() {
        use rand::SeedableRng;
        let f = Field::fp(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        // the object types appearing in the built-in octahedra
        let objects = [
            PObject::single(3, 0),
            PObject::from_summands(vec![(1, 1), (1, 0)]),
            PObject::from_summands(vec![(2, 1), (2, 0)]),
        ];
        for obj in &objects {
            for _ in 0..30 {
                let unk = HomUnknowns::new(obj, obj);
                let vals: Vec<Scalar> = (0..unk.len()).map(|_| f.sample(&mut rng)).collect();
                let u = unk.matrix_from(f, &vals);
                let mut sys = LinearSystem::new(unk.len());
                let id = HomMatrix::identity(f, obj);
                for eq_slot in 0..unk.len() {
                    let mut lhs = Vec::new();
                    for k in 0..unk.len() {
                        let prod = HomMatrix::compose(f, &unk.unit(f, k), &u).unwrap();
                        let c = unk.coeffs_of(f, &prod)[eq_slot].clone();
                        if !f.is_zero(&c) {
                            lhs.push((k, c));
                        }
                    }
                    sys.add_equation(lhs, unk.coeffs_of(f, &id)[eq_slot].clone());
                }
                // left-invertibility in a finite-dimensional algebra is
                // equivalent to invertibility
                let solvable = !sys.solve_affine(f).is_infeasible();
                assert_eq!(is_invertible(f, &u).is_some(), solvable);
            }
        }
    }

    #[test]
    fn agrees_with_linear_inverse_search() {
        use rand::{Rng, SeedableRng};
        let f = Field::fp(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let obj = PObject::from_summands(vec![
                (rng.gen_range(1..=3), 0),
                (rng.gen_range(1..=3), rng.gen_range(0..=1)),
            ]);
            let unk = HomUnknowns::new(&obj, &obj);
            let vals: Vec<Scalar> = (0..unk.len()).map(|_| f.sample(&mut rng)).collect();
            let u = unk.matrix_from(f, &vals);

            // solve v.u = 1 and u.v = 1 simultaneously via linear algebra
            let vu_unk = HomUnknowns::new(&obj, &obj);
            let mut sys = LinearSystem::new(vu_unk.len());
            let id = HomMatrix::identity(f, &obj);
            for (probe, rhs_of) in [(true, &id), (false, &id)] {
                for eq_slot in 0..vu_unk.len() {
                    let mut lhs = Vec::new();
                    for k in 0..vu_unk.len() {
                        let unit = vu_unk.unit(f, k);
                        let prod = if probe {
                            HomMatrix::compose(f, &unit, &u).unwrap()
                        } else {
                            HomMatrix::compose(f, &u, &unit).unwrap()
                        };
                        let c = vu_unk.coeffs_of(f, &prod)[eq_slot].clone();
                        if !f.is_zero(&c) {
                            lhs.push((k, c));
                        }
                    }
                    let rhs = vu_unk.coeffs_of(f, rhs_of)[eq_slot].clone();
                    sys.add_equation(lhs, rhs);
                }
            }
            let solvable = !sys.solve_affine(f).is_infeasible();
            assert_eq!(is_invertible(f, &u).is_some(), solvable);
        }
    }
}
