//! Chain-level realization of presented morphisms and its inverse modulo
//! homotopy (coefficient extraction by divisibility).

use std::collections::BTreeMap;

use super::{HomElement, HomMatrix, MorKind, PObject};
use crate::complex::{
    piece_layout, realize_pieces, validate_chain_map, ChainMap, FreeComplex, Piece, Slot,
};
use crate::exactalg::{Field, Poly, PolyMatrix};
use crate::{Error, Result};

fn pieces_of(obj: &PObject) -> Vec<Piece> {
    obj.summands
        .iter()
        .map(|s| Piece::TwoTerm {
            n: s.n,
            shift: s.shift,
        })
        .collect()
}

/// The canonical complex underlying a formal direct sum.
pub fn realize_pobject(field: Field, obj: &PObject) -> FreeComplex {
    realize_pieces(field, &pieces_of(obj))
}

fn coord(
    layout: &BTreeMap<i64, Vec<(usize, Slot)>>,
    degree: i64,
    piece: usize,
    slot: Slot,
) -> usize {
    layout[&degree]
        .iter()
        .position(|&(p, sl)| {
            p == piece
                && matches!(
                    (sl, slot),
                    (Slot::Top, Slot::Top) | (Slot::Bottom, Slot::Bottom)
                )
        })
        .expect("summand coordinate")
}

/// The chain map whose homotopy class is `u`.
///
/// An `x^i` term between `(m, s)` and `(n, s)` contributes `x^i` on the top
/// coordinates (degree `-s`) and `x^{i+m-n}` on the bottom ones; a `y^i`
/// term between `(m, s)` and `(n, s+1)` contributes `x^{m-i}` from the
/// source bottom coordinate to the target top coordinate, both in degree
/// `-1-s`.
pub fn realize(field: Field, u: &HomMatrix) -> ChainMap {
    let src = realize_pobject(field, &u.src);
    let tgt = realize_pobject(field, &u.tgt);
    let src_layout = piece_layout(&pieces_of(&u.src));
    let tgt_layout = piece_layout(&pieces_of(&u.tgt));

    let mut comps: BTreeMap<i64, PolyMatrix> = BTreeMap::new();
    let mut add_at = |deg: i64, row: usize, col: usize, p: Poly| {
        if p.is_zero() {
            return;
        }
        let m = comps
            .entry(deg)
            .or_insert_with(|| PolyMatrix::zero(tgt.rank(deg), src.rank(deg)));
        let v = m.get(row, col).add(field, &p);
        m.set(row, col, v);
    };

    for (r, t) in u.tgt.summands.iter().enumerate() {
        for (c, s) in u.src.summands.iter().enumerate() {
            let el = u.entry(r, c);
            for (b, coeff) in el.terms() {
                match b.kind {
                    MorKind::X => {
                        let top = -s.shift;
                        let bottom = -1 - s.shift;
                        let row_top = coord(&tgt_layout, top, r, Slot::Top);
                        let col_top = coord(&src_layout, top, c, Slot::Top);
                        add_at(
                            top,
                            row_top,
                            col_top,
                            Poly::monomial(field, coeff.clone(), b.i),
                        );
                        let row_bot = coord(&tgt_layout, bottom, r, Slot::Bottom);
                        let col_bot = coord(&src_layout, bottom, c, Slot::Bottom);
                        add_at(
                            bottom,
                            row_bot,
                            col_bot,
                            Poly::monomial(field, coeff.clone(), b.i + s.n - t.n),
                        );
                    }
                    MorKind::Y => {
                        let deg = -1 - s.shift;
                        let row = coord(&tgt_layout, deg, r, Slot::Top);
                        let col = coord(&src_layout, deg, c, Slot::Bottom);
                        add_at(
                            deg,
                            row,
                            col,
                            Poly::monomial(field, coeff.clone(), s.n - b.i),
                        );
                    }
                }
            }
        }
    }

    let f = ChainMap::new(src, tgt, comps).expect("realization shapes agree");
    debug_assert!(validate_chain_map(field, &f));
    f
}

/// Extracts the homotopy class of a chain map between realized objects.
///
/// `presentify(realize(u)) = u` exactly; `realize(presentify(f))` differs
/// from `f` by a null-homotopic map. Extraction uses the divisibility normal
/// form: the class of an `x`-component is its top entry mod `x^n`, the class
/// of a `y`-component is its degree-offset entry mod `x^{min(m,n)}`.
pub fn presentify(
    field: Field,
    f: &ChainMap,
    src_obj: &PObject,
    tgt_obj: &PObject,
) -> Result<HomMatrix> {
    if f.source != realize_pobject(field, src_obj) || f.target != realize_pobject(field, tgt_obj) {
        return Err(Error::Validation(
            "chain map endpoints are not the canonical realizations".into(),
        ));
    }
    if !validate_chain_map(field, f) {
        return Err(Error::Validation("not a chain map".into()));
    }
    let src_layout = piece_layout(&pieces_of(src_obj));
    let tgt_layout = piece_layout(&pieces_of(tgt_obj));

    let mut out = HomMatrix::zero(src_obj.clone(), tgt_obj.clone());
    for (r, t) in tgt_obj.summands.iter().enumerate() {
        for (c, s) in src_obj.summands.iter().enumerate() {
            let mut el = HomElement::zero(*s, *t);
            match t.shift - s.shift {
                0 => {
                    let top = -s.shift;
                    let row = coord(&tgt_layout, top, r, Slot::Top);
                    let col = coord(&src_layout, top, c, Slot::Top);
                    let a0 = f.comp(top);
                    let entry = a0.get(row, col);
                    let lo = t.n.saturating_sub(s.n);
                    for e in 0..t.n.min(entry.coeffs().len()) {
                        let coeff = entry.coeff(field, e);
                        if field.is_zero(&coeff) {
                            continue;
                        }
                        // the chain condition forces x^{n-m} | a_0
                        assert!(
                            e >= lo,
                            "top entry violates the divisibility forced by the chain condition"
                        );
                        el.add_term(field, e, coeff);
                    }
                }
                1 => {
                    let deg = -1 - s.shift;
                    let row = coord(&tgt_layout, deg, r, Slot::Top);
                    let col = coord(&src_layout, deg, c, Slot::Bottom);
                    let comp = f.comp(deg);
                    let entry = comp.get(row, col);
                    let cutoff = s.n.min(t.n);
                    for q in 0..cutoff.min(entry.coeffs().len()) {
                        let coeff = entry.coeff(field, q);
                        if field.is_zero(&coeff) {
                            continue;
                        }
                        el.add_term(field, s.n - q, coeff);
                    }
                }
                _ => {
                    // the Hom space is zero; nothing to extract
                }
            }
            out.set_entry(r, c, el);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{apply_homotopy, default_homotopy_bound, make_p, null_homotopy};
    use crate::exactalg::Scalar;
    use crate::homcat::{BasisMor, HomUnknowns};

    fn sm(n: usize, shift: i64) -> crate::homcat::Summand {
        crate::homcat::Summand::new(n, shift)
    }

    fn single(field: Field, b: BasisMor) -> HomMatrix {
        let src = PObject {
            summands: vec![b.src],
        };
        let tgt = PObject {
            summands: vec![b.tgt],
        };
        let mut m = HomMatrix::zero(src, tgt);
        m.set_entry(0, 0, HomElement::from_basis(field, &b, field.one()));
        m
    }

    #[test]
    fn realize_x1_33_has_the_displayed_square() {
        let f = Field::Q;
        let u = single(f, BasisMor::x(1, sm(3, 0), sm(3, 0)));
        let r = realize(f, &u);
        assert_eq!(r.comp(0).get(0, 0), &Poly::x_pow(f, 1));
        assert_eq!(r.comp(-1).get(0, 0), &Poly::x_pow(f, 1));
        assert!(validate_chain_map(f, &r));
    }

    #[test]
    fn realize_y3_31_is_the_unit_entry() {
        let f = Field::Q;
        let u = single(f, BasisMor::y(3, sm(3, 0), sm(1, 1)));
        let r = realize(f, &u);
        // single component in degree -1: x^{m-i} = x^0 = 1
        assert_eq!(r.comp(-1).get(0, 0), &Poly::one(f));
        assert!(r.comp(0).is_zero());
        assert_eq!(r.target, make_p(f, 1, 1));
    }

    #[test]
    fn realize_zero_is_zero() {
        let f = Field::Q;
        let src = PObject::from_summands(vec![(2, 0), (3, 0)]);
        let tgt = PObject::from_summands(vec![(1, 1)]);
        let z = HomMatrix::zero(src, tgt);
        assert!(realize(f, &z).is_zero());
    }

    #[test]
    fn presentify_round_trip() {
        let f = Field::fp(5).unwrap();
        let u = single(f, BasisMor::x(1, sm(3, 0), sm(3, 0)));
        let back = presentify(f, &realize(f, &u), &u.src, &u.tgt).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn null_homotopic_top_entries_extract_to_zero() {
        let f = Field::Q;
        let p3 = make_p(f, 3, 0);
        // chain map with a_0 = x^3 is null-homotopic, so the class is 0
        let mut comps = BTreeMap::new();
        comps.insert(0, PolyMatrix::from_rows(vec![vec![Poly::x_pow(f, 3)]]));
        comps.insert(-1, PolyMatrix::from_rows(vec![vec![Poly::x_pow(f, 3)]]));
        let g = ChainMap::new(p3.clone(), p3.clone(), comps).unwrap();
        let obj = PObject::single(3, 0);
        let cls = presentify(f, &g, &obj, &obj).unwrap();
        assert!(cls.is_zero());

        // a_0 = x + x^3 extracts to x^1; the dropped part is witnessed
        // null-homotopic by the generic solver
        let mut comps = BTreeMap::new();
        comps.insert(
            0,
            PolyMatrix::from_rows(vec![vec![Poly::x_pow(f, 1).add(f, &Poly::x_pow(f, 3))]]),
        );
        comps.insert(
            -1,
            PolyMatrix::from_rows(vec![vec![Poly::x_pow(f, 1).add(f, &Poly::x_pow(f, 3))]]),
        );
        let g = ChainMap::new(p3.clone(), p3, comps).unwrap();
        let cls = presentify(f, &g, &obj, &obj).unwrap();
        assert_eq!(cls, single(f, BasisMor::x(1, sm(3, 0), sm(3, 0))));
        let diff = g.sub(f, &realize(f, &cls));
        let h = null_homotopy(f, &diff, default_homotopy_bound(&diff))
            .expect("difference must be null-homotopic");
        assert_eq!(apply_homotopy(f, &h), diff);
    }

    // completeness: the difference between any chain map and the
    // realization of its class is witnessed null-homotopic within the
    // guaranteed degree bound
    #[test]
    fn presentify_zero_classes_are_witnessed_null_homotopic() {
        use crate::complex::{FreeComplex, Homotopy};
        use rand::{Rng, SeedableRng};
        let f = Field::fp(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..40 {
            let src = PObject::from_summands(vec![
                (rng.gen_range(1..=4), 0),
                (rng.gen_range(1..=4), rng.gen_range(0..=1)),
            ]);
            let tgt = PObject::from_summands(vec![
                (rng.gen_range(1..=4), 0),
                (rng.gen_range(1..=4), rng.gen_range(0..=1)),
            ]);
            let unk = HomUnknowns::new(&src, &tgt);
            let vals: Vec<Scalar> = (0..unk.len()).map(|_| f.sample(&mut rng)).collect();
            let u = unk.matrix_from(f, &vals);
            // perturb the realization by a random boundary d.h + h.d
            let rs: FreeComplex = realize_pobject(f, &src);
            let rt: FreeComplex = realize_pobject(f, &tgt);
            let mut comps = BTreeMap::new();
            for k in rs.degrees() {
                let rows = rt.rank(k - 1);
                let cols = rs.rank(k);
                if rows == 0 || cols == 0 {
                    continue;
                }
                let mut m = crate::exactalg::PolyMatrix::zero(rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        let deg = rng.gen_range(0..=2);
                        let coeffs = (0..=deg).map(|_| f.sample(&mut rng)).collect();
                        m.set(r, c, crate::exactalg::Poly::from_coeffs(f, coeffs));
                    }
                }
                comps.insert(k, m);
            }
            let h = Homotopy {
                source: rs.clone(),
                target: rt.clone(),
                comps,
            };
            let boundary = apply_homotopy(f, &h);
            let g = realize(f, &u).add(f, &boundary);
            assert!(validate_chain_map(f, &g));
            // the class ignores the boundary
            let class = presentify(f, &g, &src, &tgt).unwrap();
            assert_eq!(class, u);
            // and the difference from the realization is witnessed
            let diff = g.sub(f, &realize(f, &class));
            let witness = null_homotopy(f, &diff, default_homotopy_bound(&diff))
                .expect("zero class must be witnessed within the bound");
            assert_eq!(apply_homotopy(f, &witness), diff);
        }
    }

    #[test]
    fn random_round_trips_and_realization_classes() {
        use rand::{Rng, SeedableRng};
        let f = Field::fp(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let src = PObject::from_summands(vec![
                (rng.gen_range(1..=4), rng.gen_range(0..=1)),
                (rng.gen_range(1..=4), 0),
            ]);
            let tgt = PObject::from_summands(vec![
                (rng.gen_range(1..=4), rng.gen_range(0..=1)),
                (rng.gen_range(1..=4), 1),
            ]);
            let unk = HomUnknowns::new(&src, &tgt);
            let vals: Vec<Scalar> = (0..unk.len()).map(|_| f.sample(&mut rng)).collect();
            let u = unk.matrix_from(f, &vals);
            let back = presentify(f, &realize(f, &u), &src, &tgt).unwrap();
            assert_eq!(back, u);
        }
    }
}
