//! Triangle classification in the octahedron category: a triangle is
//! distinguished iff it is isomorphic to the canonical completed extension
//! of its first morphism, which is a direct sum of the generating triangles
//! (up to rotation) and trivial pieces.

use super::{
    canonical_from_pieces, decompose_morphism, direct_sum_smor, PresCategory, SArrows,
    SMorUnknowns, SMorphism, SPiece, SumObject,
};
use crate::exactalg::{Field, LinearSystem, Scalar};
use crate::tri::{search_space, SearchPolicy, Verdict};
use crate::{Error, Result};

/// A triangle `X -> Y -> Z -> X[1]` of sum morphisms.
#[derive(Clone, Debug)]
pub struct STriangle {
    pub f: SMorphism,
    pub g: SMorphism,
    pub h: SMorphism,
}

impl STriangle {
    pub fn new(f: SMorphism, g: SMorphism, h: SMorphism) -> Result<STriangle> {
        if g.src != f.tgt || h.src != g.tgt || h.tgt != f.src.shifted(1) {
            return Err(Error::Domain("triangle endpoints do not match".into()));
        }
        Ok(STriangle { f, g, h })
    }

    /// The rotation `(g, h, -f[1])`.
    pub fn rotate(&self, field: Field) -> STriangle {
        STriangle::new(self.g.clone(), self.h.clone(), self.f.shifted(1).neg(field))
            .expect("rotation endpoints are compatible")
    }
}

/// Verdict plus the comparison data used to reach it.
#[derive(Clone, Debug)]
pub struct STriangleReport {
    pub verdict: Verdict,
    pub witness: Option<SMorphism>,
    pub solution_dim: Option<usize>,
    /// Pieces of the first morphism, determining the canonical extension.
    pub pieces: Vec<SPiece>,
}

/// The canonical completion `(second, third)` of one indecomposable piece.
fn piece_extension(
    field: Field,
    cat: &PresCategory,
    ids: &SArrows,
    piece: &SPiece,
) -> (SMorphism, SMorphism) {
    let arrow = |x: usize, n: i64| SPiece::Arrow { arrow: x, shift: n };
    let mor = |p: SPiece| p.canonical_smor(field, cat, ids);
    let neg = |p: SPiece| p.canonical_smor(field, cat, ids).neg(field);
    match *piece {
        SPiece::Identity { obj, shift } => {
            let x = SumObject::single(obj, shift);
            (
                SMorphism::zero(x.clone(), SumObject::zero()),
                SMorphism::zero(SumObject::zero(), x.shifted(1)),
            )
        }
        SPiece::ZeroSrc { obj, shift } => {
            let x1 = SumObject::single(obj, shift + 1);
            (
                SMorphism::zero(SumObject::zero(), x1.clone()),
                SMorphism::identity(field, &x1).neg(field),
            )
        }
        SPiece::ZeroTgt { obj, shift } => {
            let x = SumObject::single(obj, shift);
            (
                SMorphism::identity(field, &x),
                SMorphism::zero(x, SumObject::zero()),
            )
        }
        SPiece::Arrow { arrow: x, shift: n } => {
            let a = ids;
            match x {
                x if x == a.f => (mor(arrow(a.fp, n)), mor(arrow(a.fpp, n))),
                x if x == a.g => (mor(arrow(a.gp, n)), mor(arrow(a.gpp, n))),
                x if x == a.h => (mor(arrow(a.hp, n)), mor(arrow(a.hpp, n))),
                x if x == a.fp => (mor(arrow(a.fpp, n)), neg(arrow(a.f, n + 1))),
                x if x == a.fpp => (neg(arrow(a.f, n + 1)), neg(arrow(a.fp, n + 1))),
                x if x == a.hp => (mor(arrow(a.hpp, n)), neg(arrow(a.h, n + 1))),
                x if x == a.hpp => (neg(arrow(a.h, n + 1)), neg(arrow(a.hp, n + 1))),
                x if x == a.gp => (mor(arrow(a.gpp, n)), neg(arrow(a.g, n + 1))),
                x if x == a.gpp => (neg(arrow(a.g, n + 1)), neg(arrow(a.gp, n + 1))),
                x if x == a.k => (mor(arrow(a.kp, n)), mor(arrow(a.kpp, n))),
                x if x == a.kp => (mor(arrow(a.kpp, n)), neg(arrow(a.k, n + 1))),
                x if x == a.kpp => (neg(arrow(a.k, n + 1)), neg(arrow(a.kp, n + 1))),
                x if x == a.l => (
                    mor(SPiece::PairKH { shift: n }),
                    mor(SPiece::PairGSF { shift: n }),
                ),
                x if x == a.lp => (
                    neg(SPiece::PairGF { shift: n + 1 }),
                    neg(SPiece::PairHK { shift: n + 1 }),
                ),
                _ => unreachable!("unknown arrow index {x}"),
            }
        }
        SPiece::PairGF { shift: n } => (mor(SPiece::PairHK { shift: n }), mor(arrow(ids.lp, n))),
        SPiece::PairHK { shift: n } => {
            (mor(arrow(ids.lp, n)), neg(SPiece::PairGF { shift: n + 1 }))
        }
        SPiece::PairKH { shift: n } => {
            (mor(SPiece::PairGSF { shift: n }), neg(arrow(ids.l, n + 1)))
        }
        SPiece::PairGSF { shift: n } => (
            neg(arrow(ids.l, n + 1)),
            neg(SPiece::PairKH { shift: n + 1 }),
        ),
    }
}

/// Certifies whether a triangle is distinguished by comparing with the
/// canonical distinguished extension of its (decomposed) first morphism.
pub fn is_distinguished_s(
    field: Field,
    cat: &PresCategory,
    ids: &SArrows,
    t: &STriangle,
    policy: &SearchPolicy,
) -> Result<STriangleReport> {
    let dec = decompose_morphism(field, cat, ids, &t.f)?;

    // canonical extension of the canonical form, then conjugated so that it
    // extends t.f itself
    let mut second_canon = SMorphism::zero(SumObject::zero(), SumObject::zero());
    let mut third_canon = SMorphism::zero(SumObject::zero(), SumObject::zero());
    for p in &dec.pieces {
        let (s, t3) = piece_extension(field, cat, ids, p);
        second_canon = direct_sum_smor(field, cat, &second_canon, &s);
        third_canon = direct_sum_smor(field, cat, &third_canon, &t3);
    }
    {
        // the extension must glue onto the canonical direct sum
        let canon = canonical_from_pieces(field, cat, ids, &dec.pieces);
        assert_eq!(second_canon.src, canon.tgt);
        assert_eq!(third_canon.src, second_canon.tgt);
        assert_eq!(third_canon.tgt, canon.src.shifted(1));
    }
    let cone_obj = second_canon.tgt.clone();
    let second_ext = SMorphism::compose(field, cat, &second_canon, &dec.tgt_iso);
    let third_ext = SMorphism::compose(field, cat, &dec.src_iso.shifted(1), &third_canon);

    // solve psi . g = second_ext and third_ext . psi = h
    let z_obj = t.g.tgt.clone();
    let unknowns = SMorUnknowns::new(cat, &z_obj, &cone_obj);
    let eq1 = SMorUnknowns::new(cat, &t.g.src, &cone_obj);
    let eq2 = SMorUnknowns::new(cat, &z_obj, &third_ext.tgt);
    let mut sys = LinearSystem::new(unknowns.len());
    let mut cols: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::with_capacity(unknowns.len());
    for k in 0..unknowns.len() {
        let unit = unknowns.unit(field, cat, k);
        let lhs1 = SMorphism::compose(field, cat, &unit, &t.g);
        let lhs2 = SMorphism::compose(field, cat, &third_ext, &unit);
        cols.push((
            eq1.coeffs_of(field, cat, &lhs1),
            eq2.coeffs_of(field, cat, &lhs2),
        ));
    }
    for (slot, rhs) in eq1.coeffs_of(field, cat, &second_ext).iter().enumerate() {
        let lhs: Vec<(usize, Scalar)> = cols
            .iter()
            .enumerate()
            .filter_map(|(k, (c1, _))| (!field.is_zero(&c1[slot])).then(|| (k, c1[slot].clone())))
            .collect();
        sys.add_equation(lhs, rhs.clone());
    }
    for (slot, rhs) in eq2.coeffs_of(field, cat, &t.h).iter().enumerate() {
        let lhs: Vec<(usize, Scalar)> = cols
            .iter()
            .enumerate()
            .filter_map(|(k, (_, c2))| (!field.is_zero(&c2[slot])).then(|| (k, c2[slot].clone())))
            .collect();
        sys.add_equation(lhs, rhs.clone());
    }

    let space = sys.solve_affine(field);
    if space.is_infeasible() {
        return Ok(STriangleReport {
            verdict: Verdict::CertifiedNo,
            witness: None,
            solution_dim: None,
            pieces: dec.pieces,
        });
    }
    let solution_dim = Some(space.dim());
    if z_obj.classes().collect::<Vec<_>>() != cone_obj.classes().collect::<Vec<_>>() {
        return Ok(STriangleReport {
            verdict: Verdict::CertifiedNo,
            witness: None,
            solution_dim,
            pieces: dec.pieces,
        });
    }

    let outcome = search_space(field, &space, policy, |coeffs| {
        let psi = unknowns.matrix_from(field, cat, coeffs);
        psi.inverse(field, cat).is_some()
    });
    Ok(match outcome {
        crate::tri::SearchOutcome::Found(coeffs) => {
            let psi = unknowns.matrix_from(field, cat, &coeffs);
            assert_eq!(SMorphism::compose(field, cat, &psi, &t.g), second_ext);
            assert_eq!(SMorphism::compose(field, cat, &third_ext, &psi), t.h);
            assert!(psi.inverse(field, cat).is_some());
            STriangleReport {
                verdict: Verdict::CertifiedYes,
                witness: Some(psi),
                solution_dim,
                pieces: dec.pieces,
            }
        }
        crate::tri::SearchOutcome::ExhaustedNone => STriangleReport {
            verdict: Verdict::CertifiedNo,
            witness: None,
            solution_dim,
            pieces: dec.pieces,
        },
        crate::tri::SearchOutcome::Unknown => STriangleReport {
            verdict: Verdict::Inconclusive,
            witness: None,
            solution_dim,
            pieces: dec.pieces,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::{build_category, BuiltinCategory};

    fn setup() -> (Field, PresCategory, SArrows) {
        let field = Field::fp(5).unwrap();
        let cat = build_category(field, BuiltinCategory::S).unwrap();
        let ids = SArrows::lookup(&cat);
        (field, cat, ids)
    }

    fn arrow_mor(field: Field, cat: &PresCategory, ids: &SArrows, x: usize, n: i64) -> SMorphism {
        SPiece::Arrow { arrow: x, shift: n }.canonical_smor(field, cat, ids)
    }

    #[test]
    fn generating_triangle_is_distinguished() {
        let (field, cat, ids) = setup();
        let t = STriangle::new(
            arrow_mor(field, &cat, &ids, ids.f, 0),
            arrow_mor(field, &cat, &ids, ids.fp, 0),
            arrow_mor(field, &cat, &ids, ids.fpp, 0),
        )
        .unwrap();
        let rep = is_distinguished_s(field, &cat, &ids, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);

        // rotations stay distinguished
        let rep = is_distinguished_s(
            field,
            &cat,
            &ids,
            &t.rotate(field),
            &SearchPolicy::default(),
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);
    }

    #[test]
    fn contractible_triangle_is_distinguished() {
        let (field, cat, ids) = setup();
        let a = SumObject::single(ids.a, 0);
        let t = STriangle::new(
            SMorphism::identity(field, &a),
            SMorphism::zero(a.clone(), SumObject::zero()),
            SMorphism::zero(SumObject::zero(), a.shifted(1)),
        )
        .unwrap();
        let rep = is_distinguished_s(field, &cat, &ids, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);
    }

    #[test]
    fn truncating_the_extension_is_refuted() {
        // (f, 0, 0) with third object 0: the canonical extension has third
        // object D, so no isomorphism exists
        let (field, cat, ids) = setup();
        let f = arrow_mor(field, &cat, &ids, ids.f, 0);
        let b = f.tgt.clone();
        let a1 = f.src.shifted(1);
        let t = STriangle::new(
            f,
            SMorphism::zero(b, SumObject::zero()),
            SMorphism::zero(SumObject::zero(), a1),
        )
        .unwrap();
        let rep = is_distinguished_s(field, &cat, &ids, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedNo);
    }

    #[test]
    fn goodness_triangles_are_distinguished() {
        let (field, cat, ids) = setup();
        // B --l--> E --(k';-h'')--> F + A[1] --(g'', f[1])--> B[1]
        let t = STriangle::new(
            arrow_mor(field, &cat, &ids, ids.l, 0),
            SPiece::PairKH { shift: 0 }.canonical_smor(field, &cat, &ids),
            SPiece::PairGSF { shift: 0 }.canonical_smor(field, &cat, &ids),
        )
        .unwrap();
        let rep = is_distinguished_s(field, &cat, &ids, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);

        // B --(g;f')--> C + D --(h',-k)--> E --l'--> B[1]
        let t = STriangle::new(
            SPiece::PairGF { shift: 0 }.canonical_smor(field, &cat, &ids),
            SPiece::PairHK { shift: 0 }.canonical_smor(field, &cat, &ids),
            arrow_mor(field, &cat, &ids, ids.lp, 0),
        )
        .unwrap();
        let rep = is_distinguished_s(field, &cat, &ids, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);
    }

    // conjugating a sum of generating triangles by invertible base changes
    // on all three objects must stay certified distinguished
    #[test]
    fn conjugated_sums_stay_certified() {
        use crate::scat::SMorUnknowns;
        use rand::{Rng, SeedableRng};
        let (field, cat, ids) = setup();
        let policy = SearchPolicy::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        let random_auto = |obj: &SumObject, rng: &mut rand_chacha::ChaCha8Rng| loop {
            let unk = SMorUnknowns::new(&cat, obj, obj);
            let vals: Vec<crate::exactalg::Scalar> =
                (0..unk.len()).map(|_| field.sample(rng)).collect();
            let m = unk.matrix_from(field, &cat, &vals);
            if m.inverse(field, &cat).is_some() {
                return m;
            }
        };
        let generating: Vec<(usize, usize, usize)> = vec![
            (ids.f, ids.fp, ids.fpp),
            (ids.h, ids.hp, ids.hpp),
            (ids.g, ids.gp, ids.gpp),
            (ids.k, ids.kp, ids.kpp),
        ];
        for round in 0..20 {
            // a sum of one or two generating triangles at random shifts
            let count = rng.gen_range(1..=2);
            let mut f = SMorphism::zero(SumObject::zero(), SumObject::zero());
            let mut g = f.clone();
            let mut h = f.clone();
            for _ in 0..count {
                let (a, b, c) = generating[rng.gen_range(0..generating.len())];
                let n = rng.gen_range(-1..=1);
                f = direct_sum_smor(field, &cat, &f, &arrow_mor(field, &cat, &ids, a, n));
                g = direct_sum_smor(field, &cat, &g, &arrow_mor(field, &cat, &ids, b, n));
                h = direct_sum_smor(field, &cat, &h, &arrow_mor(field, &cat, &ids, c, n));
            }
            let p0 = random_auto(&f.src, &mut rng);
            let p1 = random_auto(&f.tgt, &mut rng);
            let p2 = random_auto(&g.tgt, &mut rng);
            let comp = |a: &SMorphism, b: &SMorphism| SMorphism::compose(field, &cat, a, b);
            let t = STriangle::new(
                comp(&p1, &comp(&f, &p0.inverse(field, &cat).unwrap())),
                comp(&p2, &comp(&g, &p1.inverse(field, &cat).unwrap())),
                comp(&p0.shifted(1), &comp(&h, &p2.inverse(field, &cat).unwrap())),
            )
            .unwrap();
            let rep = is_distinguished_s(field, &cat, &ids, &t, &policy).unwrap();
            assert_eq!(rep.verdict, Verdict::CertifiedYes, "round {round}");
        }
    }

    #[test]
    fn direct_sums_of_distinguished_triangles_pass() {
        let (field, cat, ids) = setup();
        let f1 = arrow_mor(field, &cat, &ids, ids.f, 0);
        let f2 = arrow_mor(field, &cat, &ids, ids.k, 1);
        let g1 = arrow_mor(field, &cat, &ids, ids.fp, 0);
        let g2 = arrow_mor(field, &cat, &ids, ids.kp, 1);
        let h1 = arrow_mor(field, &cat, &ids, ids.fpp, 0);
        let h2 = arrow_mor(field, &cat, &ids, ids.kpp, 1);
        let t = STriangle::new(
            direct_sum_smor(field, &cat, &f1, &f2),
            direct_sum_smor(field, &cat, &g1, &g2),
            direct_sum_smor(field, &cat, &h1, &h2),
        )
        .unwrap();
        let rep = is_distinguished_s(field, &cat, &ids, &t, &SearchPolicy::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedYes);
    }
}
