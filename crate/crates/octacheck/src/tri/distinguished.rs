//! Distinguishedness certification by comparison with the mapping cone.
//!
//! A triangle `(f, g, h)` is distinguished iff there is an isomorphism
//! `phi: Z -> cone(f)` with `phi . g = j` and `q . phi = h`, where `(j, q)`
//! are the canonical cone maps. The cone is brought to normal form first, so
//! `phi` lives in a presented Hom space and the two conditions become an
//! affine-linear system in its coefficients.

use std::collections::BTreeMap;

use super::{search_space, SearchOutcome, SearchPolicy, Triangle};
use crate::complex::{cone_of, normal_form, piece_layout, ChainMap, Piece};
use crate::exactalg::{Field, LinearSystem, Poly, PolyMatrix};
use crate::homcat::{
    is_invertible, presentify, realize, realize_pobject, BasisMor, HomElement, HomMatrix,
    HomUnknowns, PObject, Summand,
};
use crate::{Error, Result};

/// Certification outcome. `CertifiedYes`/`CertifiedNo` are proof-grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedYes,
    CertifiedNo,
    Inconclusive,
}

/// Outcome of [`is_distinguished`], with the data backing the verdict.
#[derive(Clone, Debug)]
pub struct DistinguishedReport {
    pub verdict: Verdict,
    /// A verified isomorphism `Z -> cone(f)` when the verdict is yes.
    pub witness: Option<HomMatrix>,
    /// Normal-form pieces of the cone, with multiplicity.
    pub cone_pieces: BTreeMap<Piece, usize>,
    /// Dimension of the affine space of comparison morphisms, when feasible.
    pub solution_dim: Option<usize>,
}

/// The completed triangle on the basis morphism `x^i: P_m -> P_n`:
/// `P_m -> P_n -> P_{m-n+i}[1] (+) P_i -> P_m[1]`, with zero-object summands
/// dropped.
pub fn basis_triangle(field: Field, m: usize, n: usize, i: usize) -> Result<Triangle> {
    if m < 1 || n < 1 || i < n.saturating_sub(m) || i >= n {
        return Err(Error::Domain(format!(
            "x^{i} is not a basis morphism P_{m} -> P_{n}"
        )));
    }
    let sm = Summand::new(m, 0);
    let sn = Summand::new(n, 0);
    let x_obj = PObject::single(m, 0);
    let y_obj = PObject::single(n, 0);

    let mut z_summands: Vec<Summand> = Vec::new();
    let top = m + i - n; // exponent of the shifted piece
    if top >= 1 {
        z_summands.push(Summand::new(top, 1));
    }
    if i >= 1 {
        z_summands.push(Summand::new(i, 0));
    }
    let z_obj = PObject {
        summands: z_summands.clone(),
    };

    let mut f = HomMatrix::zero(x_obj, y_obj.clone());
    f.set_entry(
        0,
        0,
        HomElement::from_basis(field, &BasisMor::x(i, sm, sn), field.one()),
    );

    let mut g = HomMatrix::zero(y_obj, z_obj.clone());
    for (r, zs) in z_summands.iter().enumerate() {
        let el = if zs.shift == 1 {
            HomElement::from_basis(field, &BasisMor::y(n, sn, *zs), field.one())
        } else {
            HomElement::from_basis(field, &BasisMor::x(0, sn, *zs), field.one())
        };
        g.set_entry(r, 0, el);
    }

    let sx1 = Summand::new(m, 1);
    let mut h = HomMatrix::zero(z_obj, PObject::single(m, 1));
    for (c, zs) in z_summands.iter().enumerate() {
        let el = if zs.shift == 1 {
            HomElement::from_basis(field, &BasisMor::x(n - i, *zs, sx1), field.from_i64(-1))
        } else {
            HomElement::from_basis(field, &BasisMor::y(i, *zs, sx1), field.one())
        };
        h.set_entry(0, c, el);
    }

    Triangle::new(f, g, h)
}

/// Certifies whether a triangle is distinguished.
///
/// Builds `cone(realize(f))`, brings it to normal form, transports the
/// canonical inclusion and projection back to presented morphisms, and
/// solves for a comparison morphism; the verdict follows the search for an
/// invertible solution.
pub fn is_distinguished(
    field: Field,
    t: &Triangle,
    policy: &SearchPolicy,
) -> Result<DistinguishedReport> {
    let rf = realize(field, &t.f);
    let (_cone, incl, proj) = cone_of(field, &rf)?;
    let nf = normal_form(field, &incl.target)?;
    assert!(
        !nf.summands
            .iter()
            .any(|p| matches!(p, Piece::FreeStalk { .. })),
        "cone of a torsion morphism acquired a free stalk"
    );

    let z_cone = PObject {
        summands: nf
            .torsion_pieces()
            .into_iter()
            .map(|(n, s)| Summand::new(n, s))
            .collect(),
    };

    // projection/inclusion between the normal form and its torsion part
    let (reduce, include) = torsion_projection(field, &nf.summands, &z_cone);

    let j_chain = ChainMap::compose(field, &reduce, &ChainMap::compose(field, &nf.iso_to, &incl));
    let j_pres = presentify(field, &j_chain, &t.y, &z_cone)?;

    let q_chain = ChainMap::compose(
        field,
        &proj,
        &ChainMap::compose(field, &nf.iso_from, &include),
    );
    let x1 = t.x.shifted(1);
    debug_assert_eq!(q_chain.target, realize_pobject(field, &x1));
    let q_pres = presentify(field, &q_chain, &z_cone, &x1)?;

    // solve phi . g = j and q . phi = h for phi in Hom(Z, Z_cone)
    let unknowns = HomUnknowns::new(&t.z, &z_cone);
    let eq_left = HomUnknowns::new(&t.y, &z_cone);
    let eq_right = HomUnknowns::new(&t.z, &x1);
    let mut sys = LinearSystem::new(unknowns.len());
    let mut columns: Vec<(Vec<crate::exactalg::Scalar>, Vec<crate::exactalg::Scalar>)> =
        Vec::with_capacity(unknowns.len());
    for k in 0..unknowns.len() {
        let unit = unknowns.unit(field, k);
        let lhs1 = HomMatrix::compose(field, &unit, &t.g)?;
        let lhs2 = HomMatrix::compose(field, &q_pres, &unit)?;
        columns.push((
            eq_left.coeffs_of(field, &lhs1),
            eq_right.coeffs_of(field, &lhs2),
        ));
    }
    let rhs1 = eq_left.coeffs_of(field, &j_pres);
    for (slot, rhs) in rhs1.iter().enumerate() {
        let lhs: Vec<(usize, crate::exactalg::Scalar)> = columns
            .iter()
            .enumerate()
            .filter_map(|(k, (c1, _))| (!field.is_zero(&c1[slot])).then(|| (k, c1[slot].clone())))
            .collect();
        sys.add_equation(lhs, rhs.clone());
    }
    let rhs2 = eq_right.coeffs_of(field, &t.h);
    for (slot, rhs) in rhs2.iter().enumerate() {
        let lhs: Vec<(usize, crate::exactalg::Scalar)> = columns
            .iter()
            .enumerate()
            .filter_map(|(k, (_, c2))| (!field.is_zero(&c2[slot])).then(|| (k, c2[slot].clone())))
            .collect();
        sys.add_equation(lhs, rhs.clone());
    }

    let space = sys.solve_affine(field);
    let cone_pieces = nf.piece_multiset();
    if space.is_infeasible() {
        return Ok(DistinguishedReport {
            verdict: Verdict::CertifiedNo,
            witness: None,
            cone_pieces,
            solution_dim: None,
        });
    }
    let solution_dim = Some(space.dim());

    // no invertible morphism can exist between different summand multisets
    if t.z.isotype_multiset() != z_cone.isotype_multiset() {
        return Ok(DistinguishedReport {
            verdict: Verdict::CertifiedNo,
            witness: None,
            cone_pieces,
            solution_dim,
        });
    }

    let outcome = search_space(field, &space, policy, |coeffs| {
        let phi = unknowns.matrix_from(field, coeffs);
        is_invertible(field, &phi).is_some()
    });
    Ok(match outcome {
        SearchOutcome::Found(coeffs) => {
            let phi = unknowns.matrix_from(field, &coeffs);
            // re-verify the witness end to end before certifying
            assert_eq!(HomMatrix::compose(field, &phi, &t.g)?, j_pres);
            assert_eq!(HomMatrix::compose(field, &q_pres, &phi)?, t.h);
            assert!(is_invertible(field, &phi).is_some());
            DistinguishedReport {
                verdict: Verdict::CertifiedYes,
                witness: Some(phi),
                cone_pieces,
                solution_dim,
            }
        }
        SearchOutcome::ExhaustedNone => DistinguishedReport {
            verdict: Verdict::CertifiedNo,
            witness: None,
            cone_pieces,
            solution_dim,
        },
        SearchOutcome::Unknown => DistinguishedReport {
            verdict: Verdict::Inconclusive,
            witness: None,
            cone_pieces,
            solution_dim,
        },
    })
}

/// Chain maps between the realization of all normal-form pieces and the
/// realization of only the torsion (two-term, n >= 1) pieces.
fn torsion_projection(
    field: Field,
    pieces: &[Piece],
    torsion_obj: &PObject,
) -> (ChainMap, ChainMap) {
    let full = crate::complex::realize_pieces(field, pieces);
    let reduced = realize_pobject(field, torsion_obj);
    let full_layout = piece_layout(pieces);

    // torsion pieces keep their relative order, so per degree the reduced
    // coordinates are the torsion slots of the full layout in order
    let torsion_indices: Vec<usize> = pieces
        .iter()
        .enumerate()
        .filter_map(|(i, p)| matches!(p, Piece::TwoTerm { .. }).then_some(i))
        .collect();

    let mut reduce_comps = BTreeMap::new();
    let mut include_comps = BTreeMap::new();
    for (&deg, coords) in &full_layout {
        let reduced_rank = reduced.rank(deg);
        if reduced_rank == 0 {
            continue;
        }
        let mut reduce_m = PolyMatrix::zero(reduced_rank, full.rank(deg));
        let mut include_m = PolyMatrix::zero(full.rank(deg), reduced_rank);
        let mut red_row = 0;
        for (full_idx, &(piece_idx, _slot)) in coords.iter().enumerate() {
            if torsion_indices.contains(&piece_idx) {
                reduce_m.set(red_row, full_idx, Poly::one(field));
                include_m.set(full_idx, red_row, Poly::one(field));
                red_row += 1;
            }
        }
        assert_eq!(red_row, reduced_rank, "torsion layout mismatch");
        reduce_comps.insert(deg, reduce_m);
        include_comps.insert(deg, include_m);
    }
    let reduce = ChainMap::new(full.clone(), reduced.clone(), reduce_comps)
        .expect("projection shapes agree");
    let include = ChainMap::new(reduced, full, include_comps).expect("inclusion shapes agree");
    debug_assert!(crate::complex::validate_chain_map(field, &reduce));
    debug_assert!(crate::complex::validate_chain_map(field, &include));
    (reduce, include)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_triangle_instances() {
        let f = Field::Q;
        let t = basis_triangle(f, 3, 3, 1).unwrap();
        assert_eq!(t.z, PObject::from_summands(vec![(1, 1), (1, 0)]));
        let t = basis_triangle(f, 3, 3, 2).unwrap();
        assert_eq!(t.z, PObject::from_summands(vec![(2, 1), (2, 0)]));
        // P_0 summands are dropped
        let t = basis_triangle(f, 3, 1, 0).unwrap();
        assert_eq!(t.z, PObject::from_summands(vec![(2, 1)]));
        assert!(basis_triangle(f, 3, 3, 3).is_err());
        assert!(basis_triangle(f, 1, 3, 0).is_err());
    }

    #[test]
    fn basis_triangles_are_certified_yes() {
        let field = Field::fp(5).unwrap();
        let policy = SearchPolicy::default();
        for (m, n, i) in [(3, 3, 1), (3, 3, 2), (3, 1, 0), (2, 4, 2), (1, 1, 0)] {
            let t = basis_triangle(field, m, n, i).unwrap();
            let rep = is_distinguished(field, &t, &policy).unwrap();
            assert_eq!(rep.verdict, Verdict::CertifiedYes, "x^{i}: P_{m} -> P_{n}");
            assert!(rep.witness.is_some());
        }
    }

    #[test]
    fn identity_extension_with_zero_cone() {
        let field = Field::Q;
        let p3 = PObject::single(3, 0);
        let t = Triangle::new(
            HomMatrix::identity(field, &p3),
            HomMatrix::zero(p3.clone(), PObject::zero()),
            HomMatrix::zero(PObject::zero(), p3.shifted(1)),
        )
        .unwrap();
        let rep = is_distinguished(field, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);
    }

    #[test]
    fn non_distinguished_extension_is_certified_no() {
        // (x^1, 0, 0) with Z = 0: the cone is P_1[1] + P_1, not zero
        let field = Field::Q;
        let p3 = PObject::single(3, 0);
        let s3 = Summand::new(3, 0);
        let mut f = HomMatrix::zero(p3.clone(), p3.clone());
        f.set_entry(
            0,
            0,
            HomElement::from_basis(field, &BasisMor::x(1, s3, s3), field.one()),
        );
        let t = Triangle::new(
            f,
            HomMatrix::zero(p3.clone(), PObject::zero()),
            HomMatrix::zero(PObject::zero(), p3.shifted(1)),
        )
        .unwrap();
        let rep = is_distinguished(field, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedNo);
        assert_eq!(
            rep.cone_pieces.get(&Piece::TwoTerm { n: 1, shift: 1 }),
            Some(&1)
        );
        assert_eq!(
            rep.cone_pieces.get(&Piece::TwoTerm { n: 1, shift: 0 }),
            Some(&1)
        );
    }

    #[test]
    fn rotation_preserves_certification() {
        let field = Field::fp(3).unwrap();
        let policy = SearchPolicy::default();
        let t = basis_triangle(field, 3, 3, 1).unwrap();
        let r = t.rotate(field);
        let rep = is_distinguished(field, &r, &policy).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);
    }
}
