//! Normal-form decomposition of a bounded complex over the PID `K[x]`.
//!
//! Every bounded complex of finitely generated free `K[x]`-modules is
//! chain-isomorphic to a direct sum of two-term complexes and stalks. The
//! reduction proceeds from the top differential down: Smith-reducing `d_k`
//! splits off one `P_n[-k-1]` per nonzero invariant factor, and `d . d = 0`
//! guarantees the split summands do not interact with the rest.

use std::collections::BTreeMap;

use super::{piece_layout, realize_pieces, ChainMap, FreeComplex, Piece, Slot};
use crate::exactalg::{matrix_smith_reduce, Field, Poly, PolyMatrix};
use crate::{Error, Result};

/// A complete decomposition: the piece multiset together with an exact chain
/// isomorphism in both directions (not merely a homotopy equivalence).
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub summands: Vec<Piece>,
    /// Chain isomorphism from the input complex to [`realize_pieces`] of
    /// `summands`.
    pub iso_to: ChainMap,
    /// Its exact two-sided inverse.
    pub iso_from: ChainMap,
}

impl NormalForm {
    /// Pieces with multiplicity, for basis-independent comparisons.
    pub fn piece_multiset(&self) -> BTreeMap<Piece, usize> {
        let mut m = BTreeMap::new();
        for p in &self.summands {
            *m.entry(*p).or_insert(0) += 1;
        }
        m
    }

    /// Only the noncontractible two-term pieces, in summand order.
    pub fn torsion_pieces(&self) -> Vec<(usize, i64)> {
        self.summands
            .iter()
            .filter_map(|p| match *p {
                Piece::TwoTerm { n, shift } => Some((n, shift)),
                _ => None,
            })
            .collect()
    }
}

struct Reduction {
    field: Field,
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, PolyMatrix>,
    // new coordinates = w[k] * original coordinates
    w: BTreeMap<i64, PolyMatrix>,
    w_inv: BTreeMap<i64, PolyMatrix>,
    active: BTreeMap<i64, Vec<bool>>,
}

impl Reduction {
    fn diff(&self, k: i64) -> PolyMatrix {
        match self.diffs.get(&k) {
            Some(m) => m.clone(),
            None => PolyMatrix::zero(
                self.ranks.get(&(k + 1)).copied().unwrap_or(0),
                self.ranks.get(&k).copied().unwrap_or(0),
            ),
        }
    }
}

/// Computes the Krull-Schmidt normal form of `c`.
///
/// Errors with [`Error::Domain`] if some invariant factor of a differential
/// is not a monomial up to a unit: such complexes fall outside the torsion
/// world this crate works in, and their two-term pieces cannot be named by a
/// single exponent.
pub fn normal_form(field: Field, c: &FreeComplex) -> Result<NormalForm> {
    let degrees: Vec<i64> = c.degrees().collect();
    let mut red = Reduction {
        field,
        ranks: c.ranks().clone(),
        diffs: c.stored_diffs().clone(),
        w: degrees
            .iter()
            .map(|&k| (k, PolyMatrix::identity(field, c.rank(k))))
            .collect(),
        w_inv: degrees
            .iter()
            .map(|&k| (k, PolyMatrix::identity(field, c.rank(k))))
            .collect(),
        active: degrees
            .iter()
            .map(|&k| (k, vec![true; c.rank(k)]))
            .collect(),
    };

    // (bottom degree k, bottom coord, top coord, exponent n)
    let mut two_terms: Vec<(i64, usize, usize, usize)> = Vec::new();

    for &k in degrees.iter().rev() {
        if c.rank(k) == 0 || c.rank(k + 1) == 0 {
            continue;
        }
        step(&mut red, k, &mut two_terms)?;
    }

    // remaining active coordinates are stalks
    let mut entries: Vec<(i64, usize, PieceAt)> = Vec::new();
    for &(k, col, row, n) in &two_terms {
        entries.push((k, col, PieceAt::TwoTerm { row, n }));
    }
    for (&k, mask) in &red.active {
        for (idx, &alive) in mask.iter().enumerate() {
            if alive {
                entries.push((k, idx, PieceAt::Stalk));
            }
        }
    }
    entries.sort_by_key(|&(k, col, _)| (k, col));

    let mut pieces = Vec::new();
    // (degree, coordinate) -> (piece index, slot)
    let mut coord_of: BTreeMap<(i64, usize), (usize, Slot)> = BTreeMap::new();
    for (k, col, at) in &entries {
        let idx = pieces.len();
        match at {
            PieceAt::TwoTerm { row, n } => {
                let shift = -k - 1;
                pieces.push(if *n == 0 {
                    Piece::Contractible { shift }
                } else {
                    Piece::TwoTerm { n: *n, shift }
                });
                coord_of.insert((*k, *col), (idx, Slot::Bottom));
                coord_of.insert((*k + 1, *row), (idx, Slot::Top));
            }
            PieceAt::Stalk => {
                pieces.push(Piece::FreeStalk { shift: -k });
                coord_of.insert((*k, *col), (idx, Slot::Top));
            }
        }
    }

    let canonical = realize_pieces(field, &pieces);
    let layout = piece_layout(&pieces);

    // permutation from final working coordinates to canonical layout
    let mut to_comps = BTreeMap::new();
    let mut from_comps = BTreeMap::new();
    for &k in &degrees {
        let rank = c.rank(k);
        let can_rank = canonical.rank(k);
        assert_eq!(rank, can_rank, "coordinate bookkeeping lost a summand");
        let mut perm = PolyMatrix::zero(rank, rank);
        for (target_row, &(piece_idx, slot)) in layout.get(&k).into_iter().flatten().enumerate() {
            let (&(_, full_idx), _) = coord_of
                .iter()
                .find(|(&(deg, _), &(pi, sl))| deg == k && pi == piece_idx && slot_eq(sl, slot))
                .expect("piece coordinate present");
            perm.set(target_row, full_idx, Poly::one(field));
        }
        let w = &red.w[&k];
        let w_inv = &red.w_inv[&k];
        to_comps.insert(k, perm.mul(field, w));
        from_comps.insert(k, w_inv.mul(field, &perm_transpose(field, &perm)));
    }

    let iso_to = ChainMap::new(c.clone(), canonical.clone(), to_comps)?;
    let iso_from = ChainMap::new(canonical, c.clone(), from_comps)?;

    // exact chain isomorphism both ways, verified before returning
    if !super::validate_chain_map(field, &iso_to) || !super::validate_chain_map(field, &iso_from) {
        return Err(Error::Validation(
            "normal form transforms are not chain maps".into(),
        ));
    }
    assert!(ChainMap::compose(field, &iso_from, &iso_to).is_identity(field));
    assert!(ChainMap::compose(field, &iso_to, &iso_from).is_identity(field));

    Ok(NormalForm {
        summands: pieces,
        iso_to,
        iso_from,
    })
}

enum PieceAt {
    TwoTerm { row: usize, n: usize },
    Stalk,
}

fn slot_eq(a: Slot, b: Slot) -> bool {
    matches!(
        (a, b),
        (Slot::Top, Slot::Top) | (Slot::Bottom, Slot::Bottom)
    )
}

fn perm_transpose(field: Field, m: &PolyMatrix) -> PolyMatrix {
    let mut out = PolyMatrix::zero(m.cols, m.rows);
    for r in 0..m.rows {
        for c in 0..m.cols {
            if !m.get(r, c).is_zero() {
                out.set(c, r, Poly::one(field));
            }
        }
    }
    out
}

fn step(
    red: &mut Reduction,
    k: i64,
    two_terms: &mut Vec<(i64, usize, usize, usize)>,
) -> Result<()> {
    let field = red.field;
    let full = red.diff(k);
    let row_mask = red.active[&(k + 1)].clone();
    let col_mask = red.active[&k].clone();
    assert!(col_mask.iter().all(|&a| a), "lower degree already touched");

    let rows: Vec<usize> = (0..full.rows).filter(|&r| row_mask[r]).collect();
    let cols: Vec<usize> = (0..full.cols).collect();
    for r in 0..full.rows {
        if !row_mask[r] {
            for c in 0..full.cols {
                assert!(full.get(r, c).is_zero(), "split row re-entered the complex");
            }
        }
    }

    let sub = full.submatrix(&rows, &cols);
    let dec = matrix_smith_reduce(field, &sub);

    // embed the Smith transforms into full coordinates
    let l_full = embed(field, &dec.left, &rows, full.rows);
    let l_inv_full = embed(field, &dec.left_inv, &rows, full.rows);
    // columns are all active, the right transforms embed as themselves
    let r_full = dec.right.clone();
    let r_inv_full = dec.right_inv.clone();

    // update the complex and the accumulated transforms
    let new_dk = l_full.mul(field, &full).mul(field, &r_full);
    set_diff(red, k, new_dk.clone());
    if red.ranks.get(&(k - 1)).copied().unwrap_or(0) > 0 {
        let prev = red.diff(k - 1);
        set_diff(red, k - 1, r_inv_full.mul(field, &prev));
    }
    if red.ranks.get(&(k + 2)).copied().unwrap_or(0) > 0 {
        let next = red.diff(k + 1);
        set_diff(red, k + 1, next.mul(field, &l_inv_full));
    }
    update_w(red, k, &r_inv_full, &r_full);
    update_w(red, k + 1, &l_full, &l_inv_full);

    // split off one two-term piece per nonzero invariant factor
    let shift = -k - 1;
    let want_sign = if shift.rem_euclid(2) == 1 {
        field.from_i64(-1)
    } else {
        field.one()
    };
    for (t, factor) in dec.invariant_factors().iter().enumerate() {
        let (unit, n) = factor.as_unit_monomial(field).ok_or_else(|| {
            Error::Domain(format!(
                "invariant factor {factor:?} at degree {k} is not a monomial up to a unit; \
                 the complex is not in the torsion subcategory"
            ))
        })?;
        let row = rows[t];
        let col = t;
        // normalize the entry to (-1)^shift x^n by scaling the target row
        let scale = field.div(&want_sign, &unit).unwrap();
        if !field.is_one(&scale) {
            scale_row(red, k, row, &scale);
        }
        debug_assert_eq!(
            red.diff(k).get(row, col),
            &Poly::monomial(field, want_sign.clone(), n)
        );
        two_terms.push((k, col, row, n));
        red.active.get_mut(&k).unwrap()[col] = false;
        red.active.get_mut(&(k + 1)).unwrap()[row] = false;
    }
    Ok(())
}

fn set_diff(red: &mut Reduction, k: i64, m: PolyMatrix) {
    if m.is_zero() {
        red.diffs.remove(&k);
    } else {
        red.diffs.insert(k, m);
    }
}

fn update_w(red: &mut Reduction, k: i64, apply: &PolyMatrix, apply_inv: &PolyMatrix) {
    let field = red.field;
    if let Some(w) = red.w.get_mut(&k) {
        *w = apply.mul(field, w);
    }
    if let Some(wi) = red.w_inv.get_mut(&k) {
        *wi = wi.mul(field, apply_inv);
    }
}

fn scale_row(red: &mut Reduction, k: i64, row: usize, scale: &crate::exactalg::Scalar) {
    let field = red.field;
    // row scaling at degree k+1: acts as a left transform there
    let rank = red.ranks[&(k + 1)];
    let mut e = PolyMatrix::identity(field, rank);
    e.set(row, row, Poly::constant(field, scale.clone()));
    let mut e_inv = PolyMatrix::identity(field, rank);
    e_inv.set(row, row, Poly::constant(field, field.inv(scale).unwrap()));
    let dk = red.diff(k);
    set_diff(red, k, e.mul(field, &dk));
    if red.ranks.get(&(k + 2)).copied().unwrap_or(0) > 0 {
        let next = red.diff(k + 1);
        set_diff(red, k + 1, next.mul(field, &e_inv));
    }
    update_w(red, k + 1, &e, &e_inv);
}

fn embed(field: Field, sub: &PolyMatrix, coords: &[usize], full: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(field, full);
    for (ri, &r) in coords.iter().enumerate() {
        for (ci, &c) in coords.iter().enumerate() {
            m.set(r, c, sub.get(ri, ci).clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cone_of, make_p};
    use crate::exactalg::Scalar;

    fn x_map(field: Field, i: usize, m: usize, n: usize) -> ChainMap {
        let src = make_p(field, m, 0);
        let tgt = make_p(field, n, 0);
        let mut comps = BTreeMap::new();
        comps.insert(
            -1,
            PolyMatrix::from_rows(vec![vec![Poly::x_pow(field, i + m - n)]]),
        );
        comps.insert(0, PolyMatrix::from_rows(vec![vec![Poly::x_pow(field, i)]]));
        ChainMap::new(src, tgt, comps).unwrap()
    }

    #[test]
    fn cone_x1_33_decomposes_as_p1_shift_plus_p1() {
        let f = Field::Q;
        let (cone, _, _) = cone_of(f, &x_map(f, 1, 3, 3)).unwrap();
        let nf = normal_form(f, &cone).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(Piece::TwoTerm { n: 1, shift: 1 }, 1);
        expected.insert(Piece::TwoTerm { n: 1, shift: 0 }, 1);
        assert_eq!(nf.piece_multiset(), expected);
    }

    #[test]
    fn cone_x0_31_decomposes_as_p2_shift_plus_contractible() {
        let f = Field::Q;
        let (cone, _, _) = cone_of(f, &x_map(f, 0, 3, 1)).unwrap();
        let nf = normal_form(f, &cone).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(Piece::TwoTerm { n: 2, shift: 1 }, 1);
        expected.insert(Piece::Contractible { shift: 0 }, 1);
        assert_eq!(nf.piece_multiset(), expected);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let f = Field::fp(5).unwrap();
        let p3 = make_p(f, 3, 0);
        let (cone, _, _) = cone_of(f, &ChainMap::identity(f, &p3)).unwrap();
        let nf = normal_form(f, &cone).unwrap();
        assert!(nf
            .summands
            .iter()
            .all(|p| matches!(p, Piece::Contractible { .. })));
        assert_eq!(nf.summands.len(), 2);
    }

    #[test]
    fn all_basis_cones_for_small_ranks() {
        // normal_form(cone(x^i_{m,n})) = TwoTerm(m-n+i, 1) + TwoTerm(i, 0),
        // with exponent-0 pieces reported as contractibles.
        let f = Field::fp(3).unwrap();
        for m in 1..=6usize {
            for n in 1..=6usize {
                for i in (n.saturating_sub(m))..n {
                    let (cone, _, _) = cone_of(f, &x_map(f, i, m, n)).unwrap();
                    let nf = normal_form(f, &cone).unwrap();
                    let mut expected: BTreeMap<Piece, usize> = BTreeMap::new();
                    let top = m + i - n;
                    let first = if top == 0 {
                        Piece::Contractible { shift: 1 }
                    } else {
                        Piece::TwoTerm { n: top, shift: 1 }
                    };
                    let second = if i == 0 {
                        Piece::Contractible { shift: 0 }
                    } else {
                        Piece::TwoTerm { n: i, shift: 0 }
                    };
                    *expected.entry(first).or_insert(0) += 1;
                    *expected.entry(second).or_insert(0) += 1;
                    assert_eq!(nf.piece_multiset(), expected, "cone(x^{i}_{{{m},{n}}})");
                }
            }
        }
    }

    #[test]
    fn round_trip_is_the_identity_on_random_complexes() {
        use rand::{Rng, SeedableRng};
        let f = Field::fp(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..40 {
            // random three-degree complex built from a chain map cone to
            // guarantee d.d = 0
            let m = rng.gen_range(1..=4usize);
            let n = rng.gen_range(1..=4usize);
            let lo = n.saturating_sub(m);
            if lo >= n {
                continue;
            }
            let i = rng.gen_range(lo..n);
            let (cone, _, _) = cone_of(f, &x_map(f, i, m, n)).unwrap();
            let with_sum = cone.direct_sum(f, &make_p(f, rng.gen_range(1..=3), 0));
            let nf = normal_form(f, &with_sum).unwrap();
            assert!(ChainMap::compose(f, &nf.iso_from, &nf.iso_to).is_identity(f));
            assert!(ChainMap::compose(f, &nf.iso_to, &nf.iso_from).is_identity(f));
        }
    }

    #[test]
    fn zero_matrix_complex_gives_stalks() {
        let f = Field::Q;
        let mut ranks = BTreeMap::new();
        ranks.insert(0, 2);
        let c = FreeComplex::new(f, ranks, BTreeMap::new()).unwrap();
        let nf = normal_form(f, &c).unwrap();
        assert_eq!(
            nf.summands,
            vec![Piece::FreeStalk { shift: 0 }, Piece::FreeStalk { shift: 0 }]
        );
    }

    #[test]
    fn non_monomial_factors_are_rejected() {
        let f = Field::Q;
        let mut ranks = BTreeMap::new();
        ranks.insert(-1, 1);
        ranks.insert(0, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(
            -1,
            PolyMatrix::from_rows(vec![vec![Poly::x_pow(f, 1).add(f, &Poly::one(f))]]),
        );
        let c = FreeComplex::new(f, ranks, diffs).unwrap();
        assert!(matches!(normal_form(f, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn units_are_normalized() {
        let f = Field::Q;
        let mut ranks = BTreeMap::new();
        ranks.insert(-1, 1);
        ranks.insert(0, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(
            -1,
            PolyMatrix::from_rows(vec![vec![Poly::monomial(
                f,
                Scalar::Q(num::BigRational::new(
                    num::BigInt::from(7),
                    num::BigInt::from(2),
                )),
                2,
            )]]),
        );
        let c = FreeComplex::new(f, ranks, diffs).unwrap();
        let nf = normal_form(f, &c).unwrap();
        assert_eq!(nf.summands, vec![Piece::TwoTerm { n: 2, shift: 0 }]);
    }
}
