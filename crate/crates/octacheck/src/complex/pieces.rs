//! Indecomposable pieces of the normal form and their canonical realization.

use std::collections::BTreeMap;

use super::FreeComplex;
use crate::exactalg::{Field, Poly, PolyMatrix};

/// A summand of a complex in normal form.
///
/// `TwoTerm { n, shift }` realizes `P_n[shift]` with `n >= 1`;
/// `Contractible { shift }` is `P_0[shift] = (R -> R)` with an invertible
/// differential; `FreeStalk { shift }` is a single `R` in degree `-shift`
/// with zero differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    TwoTerm { n: usize, shift: i64 },
    Contractible { shift: i64 },
    FreeStalk { shift: i64 },
}

/// Which coordinate of a two-term piece a degree hits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// Degree `-shift`, the codomain of the differential.
    Top,
    /// Degree `-1-shift`, the domain of the differential.
    Bottom,
}

impl Piece {
    /// Degrees occupied by the piece, with their slot.
    pub fn slots(&self) -> Vec<(i64, Slot)> {
        match *self {
            Piece::TwoTerm { shift, .. } | Piece::Contractible { shift } => {
                vec![(-1 - shift, Slot::Bottom), (-shift, Slot::Top)]
            }
            Piece::FreeStalk { shift } => vec![(-shift, Slot::Top)],
        }
    }

    /// Exponent of the differential, `None` for stalks.
    pub fn diff_exponent(&self) -> Option<usize> {
        match *self {
            Piece::TwoTerm { n, .. } => Some(n),
            Piece::Contractible { .. } => Some(0),
            Piece::FreeStalk { .. } => None,
        }
    }

    pub fn shift(&self) -> i64 {
        match *self {
            Piece::TwoTerm { shift, .. }
            | Piece::Contractible { shift }
            | Piece::FreeStalk { shift } => shift,
        }
    }
}

/// Coordinate layout of the canonical realization: for every degree, the
/// ordered list of `(piece index, slot)` occupying it. Pieces are laid out
/// in list order, one coordinate per degree each.
pub fn piece_layout(pieces: &[Piece]) -> BTreeMap<i64, Vec<(usize, Slot)>> {
    let mut layout: BTreeMap<i64, Vec<(usize, Slot)>> = BTreeMap::new();
    for (idx, piece) in pieces.iter().enumerate() {
        for (deg, slot) in piece.slots() {
            layout.entry(deg).or_default().push((idx, slot));
        }
    }
    layout
}

/// The canonical complex realizing a list of pieces, using [`piece_layout`].
/// Differentials carry the shift sign `(-1)^shift x^n`.
pub fn realize_pieces(field: Field, pieces: &[Piece]) -> FreeComplex {
    let layout = piece_layout(pieces);
    let ranks: BTreeMap<i64, usize> = layout.iter().map(|(&d, v)| (d, v.len())).collect();
    let mut diffs = BTreeMap::new();
    for (&d, coords) in &layout {
        let rows = layout.get(&(d + 1)).map_or(0, Vec::len);
        if rows == 0 {
            continue;
        }
        let mut m = PolyMatrix::zero(rows, coords.len());
        for (col, &(idx, slot)) in coords.iter().enumerate() {
            if !matches!(slot, Slot::Bottom) {
                continue;
            }
            let piece = &pieces[idx];
            let n = piece.diff_exponent().expect("bottom slot implies two-term");
            let row = layout[&(d + 1)]
                .iter()
                .position(|&(j, s)| j == idx && matches!(s, Slot::Top))
                .expect("top slot one degree up");
            let sign = if piece.shift().rem_euclid(2) == 1 {
                field.from_i64(-1)
            } else {
                field.one()
            };
            m.set(row, col, Poly::monomial(field, sign, n));
        }
        if !m.is_zero() {
            diffs.insert(d, m);
        }
    }
    FreeComplex::new(field, ranks, diffs).expect("piece realization is a complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::make_p;

    #[test]
    fn single_two_term_matches_make_p() {
        let f = Field::Q;
        for (n, s) in [(3usize, 0i64), (2, 1), (1, -2)] {
            let c = realize_pieces(f, &[Piece::TwoTerm { n, shift: s }]);
            assert_eq!(c, make_p(f, n, s));
        }
    }

    #[test]
    fn layout_orders_by_piece_index() {
        let f = Field::Q;
        let pieces = [
            Piece::TwoTerm { n: 2, shift: 1 },
            Piece::TwoTerm { n: 2, shift: 0 },
        ];
        let c = realize_pieces(f, &pieces);
        // degrees: -2 (bottom of first), -1 (top of first, bottom of second), 0
        assert_eq!(c.rank(-2), 1);
        assert_eq!(c.rank(-1), 2);
        assert_eq!(c.rank(0), 1);
        let layout = piece_layout(&pieces);
        assert_eq!(layout[&-1].len(), 2);
        assert_eq!(layout[&-1][0].0, 0);
        assert_eq!(layout[&-1][1].0, 1);
        // first piece top coordinate comes first at degree -1
        let d = c.diff(f, -2);
        assert_eq!(d.get(0, 0), &Poly::x_pow(f, 2).neg(f));
        assert!(d.get(1, 0).is_zero());
    }

    #[test]
    fn stalks_have_no_differential() {
        let f = Field::Q;
        let c = realize_pieces(f, &[Piece::FreeStalk { shift: 0 }]);
        assert_eq!(c.rank(0), 1);
        assert!(c.stored_diffs().is_empty());
    }
}
