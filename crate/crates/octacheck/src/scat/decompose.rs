//! Krull-Schmidt decomposition of morphisms between formal sums in the
//! octahedron category.
//!
//! The reduction splits off indecomposable pieces in a fixed stage order:
//! identity components first; then the kernel comparisons for the pairs
//! `(g, f')` out of `B` and `(k', -h'')` out of `E`; then the image
//! comparisons for `(h', -k)` into `E` and `(g'', f[1])` into `B[1]`; then
//! the six remaining single arrows; what survives is zero and falls apart
//! into stalks. Every split is an application of the two-sided factoring
//! lemma [`deccrit_split`], with the factorizations found by exact linear
//! solving, so a violated stage invariant surfaces as an error instead of a
//! wrong answer.

use std::collections::BTreeMap;

use super::{PresCategory, SArrows, SMorUnknowns, SMorphism, SumObject};
use crate::exactalg::{Field, LinearSystem, Scalar, ScalarMat};
use crate::{Error, Result};

/// An indecomposable morphism of the octahedron category, up to shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SPiece {
    /// `id` of `X[n]`.
    Identity { obj: usize, shift: i64 },
    /// A single basis arrow applied at shift `n`.
    Arrow { arrow: usize, shift: i64 },
    /// `(g; f'): B -> C (+) D` at shift `n`.
    PairGF { shift: i64 },
    /// `(h', -k): C (+) D -> E` at shift `n`.
    PairHK { shift: i64 },
    /// `(k'; -h''): E -> F (+) A[1]` at shift `n`.
    PairKH { shift: i64 },
    /// `(g'', f[1]): F (+) A[1] -> B[1]` at shift `n`.
    PairGSF { shift: i64 },
    /// `X[n] -> 0`.
    ZeroSrc { obj: usize, shift: i64 },
    /// `0 -> X[n]`.
    ZeroTgt { obj: usize, shift: i64 },
}

impl SPiece {
    pub fn src_object(&self, ids: &SArrows, cat: &PresCategory) -> SumObject {
        match *self {
            SPiece::Identity { obj, shift } | SPiece::ZeroSrc { obj, shift } => {
                SumObject::single(obj, shift)
            }
            SPiece::ZeroTgt { .. } => SumObject::zero(),
            SPiece::Arrow { arrow, shift } => SumObject::single(cat.arrows[arrow].src, shift),
            SPiece::PairGF { shift } => SumObject::single(ids.b, shift),
            SPiece::PairHK { shift } => {
                SumObject::from_mults(vec![((ids.c, shift), 1), ((ids.d, shift), 1)])
            }
            SPiece::PairKH { shift } => SumObject::single(ids.e, shift),
            SPiece::PairGSF { shift } => {
                SumObject::from_mults(vec![((ids.f_obj, shift), 1), ((ids.a, shift + 1), 1)])
            }
        }
    }

    pub fn tgt_object(&self, ids: &SArrows, cat: &PresCategory) -> SumObject {
        match *self {
            SPiece::Identity { obj, shift } | SPiece::ZeroTgt { obj, shift } => {
                SumObject::single(obj, shift)
            }
            SPiece::ZeroSrc { .. } => SumObject::zero(),
            SPiece::Arrow { arrow, shift } => {
                let decl = &cat.arrows[arrow];
                SumObject::single(decl.tgt, shift + decl.degree)
            }
            SPiece::PairGF { shift } => {
                SumObject::from_mults(vec![((ids.c, shift), 1), ((ids.d, shift), 1)])
            }
            SPiece::PairHK { shift } => SumObject::single(ids.e, shift),
            SPiece::PairKH { shift } => {
                SumObject::from_mults(vec![((ids.f_obj, shift), 1), ((ids.a, shift + 1), 1)])
            }
            SPiece::PairGSF { shift } => SumObject::single(ids.b, shift + 1),
        }
    }

    /// The canonical matrix data of the piece.
    pub fn canonical_smor(&self, field: Field, cat: &PresCategory, ids: &SArrows) -> SMorphism {
        let src = self.src_object(ids, cat);
        let tgt = self.tgt_object(ids, cat);
        let mut m = SMorphism::zero(src, tgt);
        let unit = |v: i64| {
            let mut mat = ScalarMat::zero(field, 1, 1);
            mat.set(0, 0, field.from_i64(v));
            mat
        };
        match *self {
            SPiece::Identity { obj, shift } => {
                m.set_ipart(field, (obj, shift), unit(1));
            }
            SPiece::Arrow { arrow, shift } => {
                m.set_apart(field, cat, arrow, shift, unit(1));
            }
            SPiece::PairGF { shift } => {
                m.set_apart(field, cat, ids.g, shift, unit(1));
                m.set_apart(field, cat, ids.fp, shift, unit(1));
            }
            SPiece::PairHK { shift } => {
                m.set_apart(field, cat, ids.hp, shift, unit(1));
                m.set_apart(field, cat, ids.k, shift, unit(-1));
            }
            SPiece::PairKH { shift } => {
                m.set_apart(field, cat, ids.kp, shift, unit(1));
                m.set_apart(field, cat, ids.hpp, shift, unit(-1));
            }
            SPiece::PairGSF { shift } => {
                m.set_apart(field, cat, ids.gpp, shift, unit(1));
                m.set_apart(field, cat, ids.f, shift + 1, unit(1));
            }
            SPiece::ZeroSrc { .. } | SPiece::ZeroTgt { .. } => {}
        }
        m
    }
}

/// Direct sum of the canonical pieces, in list order.
pub fn canonical_from_pieces(
    field: Field,
    cat: &PresCategory,
    ids: &SArrows,
    pieces: &[SPiece],
) -> SMorphism {
    let mut acc = SMorphism::zero(SumObject::zero(), SumObject::zero());
    for p in pieces {
        acc = direct_sum_smor(field, cat, &acc, &p.canonical_smor(field, cat, ids));
    }
    acc
}

/// Block-diagonal sum of sum-morphisms (first summand's coordinates first
/// within every class).
pub fn direct_sum_smor(
    field: Field,
    cat: &PresCategory,
    a: &SMorphism,
    b: &SMorphism,
) -> SMorphism {
    let src = a.src.direct_sum(&b.src);
    let tgt = a.tgt.direct_sum(&b.tgt);
    let mut out = SMorphism::zero(src.clone(), tgt.clone());
    let mut fill = |which: usize, m: &SMorphism| {
        for (class, _) in m.src.classes() {
            if m.tgt.dim(class) == 0 {
                continue;
            }
            let block = m.ipart(field, class);
            let mut big = out.ipart(field, class);
            let (r0, c0) = if which == 0 {
                (0, 0)
            } else {
                (a.tgt.dim(class), a.src.dim(class))
            };
            for r in 0..block.rows {
                for c in 0..block.cols {
                    big.set(r0 + r, c0 + c, block.get(r, c).clone());
                }
            }
            out.set_ipart(field, class, big);
        }
        for (&(x, n), block) in m.stored_aparts() {
            let decl = &cat.arrows[x];
            let mut big = out.apart(field, cat, x, n);
            let (r0, c0) = if which == 0 {
                (0, 0)
            } else {
                (
                    a.tgt.dim((decl.tgt, n + decl.degree)),
                    a.src.dim((decl.src, n)),
                )
            };
            for r in 0..block.rows {
                for c in 0..block.cols {
                    big.set(r0 + r, c0 + c, block.get(r, c).clone());
                }
            }
            out.set_apart(field, cat, x, n, big);
        }
    };
    fill(0, a);
    fill(1, b);
    out
}

fn sum_minus(total: &SumObject, first: &SumObject) -> SumObject {
    let items: Vec<((usize, i64), usize)> = total
        .classes()
        .map(|(c, m)| {
            let f = first.dim(c);
            assert!(f <= m, "partition exceeds the object");
            (c, m - f)
        })
        .collect();
    SumObject::from_mults(items)
}

/// Extracts the block of `u` between the chosen parts of prefix partitions
/// `(src_first, rest)` and `(tgt_first, rest)`; `si`/`ti` select the part.
pub(crate) fn block_of(
    field: Field,
    cat: &PresCategory,
    u: &SMorphism,
    src_first: &SumObject,
    si: usize,
    tgt_first: &SumObject,
    ti: usize,
) -> SMorphism {
    let src_part = if si == 0 {
        src_first.clone()
    } else {
        sum_minus(&u.src, src_first)
    };
    let tgt_part = if ti == 0 {
        tgt_first.clone()
    } else {
        sum_minus(&u.tgt, tgt_first)
    };
    let src_range = |class: (usize, i64)| -> (usize, usize) {
        let off = src_first.dim(class);
        if si == 0 {
            (0, off)
        } else {
            (off, u.src.dim(class))
        }
    };
    let tgt_range = |class: (usize, i64)| -> (usize, usize) {
        let off = tgt_first.dim(class);
        if ti == 0 {
            (0, off)
        } else {
            (off, u.tgt.dim(class))
        }
    };
    let mut out = SMorphism::zero(src_part.clone(), tgt_part.clone());
    for (class, _) in src_part.classes() {
        if tgt_part.dim(class) == 0 {
            continue;
        }
        let big = u.ipart(field, class);
        let (r0, r1) = tgt_range(class);
        let (c0, c1) = src_range(class);
        let mut m = ScalarMat::zero(field, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m.set(r - r0, c - c0, big.get(r, c).clone());
            }
        }
        out.set_ipart(field, class, m);
    }
    for (x, decl) in cat.arrows.iter().enumerate() {
        for ((o, n), _) in src_part.classes() {
            if o != decl.src {
                continue;
            }
            let tclass = (decl.tgt, n + decl.degree);
            if tgt_part.dim(tclass) == 0 {
                continue;
            }
            let big = u.apart(field, cat, x, n);
            let (r0, r1) = tgt_range(tclass);
            let (c0, c1) = src_range((o, n));
            let mut m = ScalarMat::zero(field, r1 - r0, c1 - c0);
            for r in r0..r1 {
                for c in c0..c1 {
                    m.set(r - r0, c - c0, big.get(r, c).clone());
                }
            }
            out.set_apart(field, cat, x, n, m);
        }
    }
    out
}

/// Embeds a part-to-part morphism into the zero morphism of the full
/// objects, at the positions given by the prefix partitions.
pub(crate) fn embed_block(
    field: Field,
    cat: &PresCategory,
    full_src: &SumObject,
    src_first: &SumObject,
    si: usize,
    full_tgt: &SumObject,
    tgt_first: &SumObject,
    ti: usize,
    block: &SMorphism,
) -> SMorphism {
    let mut out = SMorphism::zero(full_src.clone(), full_tgt.clone());
    let src_off = |class: (usize, i64)| if si == 0 { 0 } else { src_first.dim(class) };
    let tgt_off = |class: (usize, i64)| if ti == 0 { 0 } else { tgt_first.dim(class) };
    for (class, _) in block.src.classes() {
        if block.tgt.dim(class) == 0 {
            continue;
        }
        let m = block.ipart(field, class);
        if m.is_zero(field) {
            continue;
        }
        let mut big = out.ipart(field, class);
        let (r0, c0) = (tgt_off(class), src_off(class));
        for r in 0..m.rows {
            for c in 0..m.cols {
                big.set(r0 + r, c0 + c, m.get(r, c).clone());
            }
        }
        out.set_ipart(field, class, big);
    }
    for (&(x, n), m) in block.stored_aparts() {
        let decl = &cat.arrows[x];
        let tclass = (decl.tgt, n + decl.degree);
        let mut big = out.apart(field, cat, x, n);
        let (r0, c0) = (tgt_off(tclass), src_off((decl.src, n)));
        for r in 0..m.rows {
            for c in 0..m.cols {
                big.set(r0 + r, c0 + c, m.get(r, c).clone());
            }
        }
        out.set_apart(field, cat, x, n, big);
    }
    out
}

/// The conjugating data produced by the splitting lemma: with
/// `u = (alpha, beta; gamma, delta)` and both off-diagonal blocks factoring
/// through `alpha`, `conjugated = target_auto . u . source_auto` is
/// `alpha (+) delta~`.
#[derive(Clone, Debug)]
pub struct DeccritWitness {
    pub source_auto: SMorphism,
    pub target_auto: SMorphism,
    pub conjugated: SMorphism,
}

/// Applies the splitting lemma to the prefix 2x2 block structure of `u`.
///
/// The factorizations `beta = alpha . beta~` and `gamma = gamma~ . alpha`
/// are taken as supplied or found by exact linear solving; if none exists
/// the lemma does not apply and a precondition error is returned.
pub fn deccrit_split(
    field: Field,
    cat: &PresCategory,
    u: &SMorphism,
    src_first: &SumObject,
    tgt_first: &SumObject,
    beta_tilde: Option<SMorphism>,
    gamma_tilde: Option<SMorphism>,
) -> Result<DeccritWitness> {
    let alpha = block_of(field, cat, u, src_first, 0, tgt_first, 0);
    let beta = block_of(field, cat, u, src_first, 1, tgt_first, 0);
    let gamma = block_of(field, cat, u, src_first, 0, tgt_first, 1);

    let beta_tilde = match beta_tilde {
        Some(bt) => {
            if SMorphism::compose(field, cat, &alpha, &bt) != beta {
                return Err(Error::Precondition(
                    "supplied beta~ does not factor beta through alpha".into(),
                ));
            }
            bt
        }
        None => solve_post_factor(field, cat, &alpha, &beta)
            .ok_or_else(|| Error::Precondition("beta does not factor through alpha".into()))?,
    };
    let gamma_tilde = match gamma_tilde {
        Some(gt) => {
            if SMorphism::compose(field, cat, &gt, &alpha) != gamma {
                return Err(Error::Precondition(
                    "supplied gamma~ does not factor gamma through alpha".into(),
                ));
            }
            gt
        }
        None => solve_pre_factor(field, cat, &alpha, &gamma)
            .ok_or_else(|| Error::Precondition("gamma does not factor through alpha".into()))?,
    };

    // (1, -beta~; 0, 1) on the source, (1, 0; -gamma~, 1) on the target
    let source_auto = SMorphism::identity(field, &u.src).sub(
        field,
        &embed_block(
            field,
            cat,
            &u.src,
            src_first,
            1,
            &u.src,
            src_first,
            0,
            &beta_tilde,
        ),
    );
    let target_auto = SMorphism::identity(field, &u.tgt).sub(
        field,
        &embed_block(
            field,
            cat,
            &u.tgt,
            tgt_first,
            0,
            &u.tgt,
            tgt_first,
            1,
            &gamma_tilde,
        ),
    );
    let conjugated = SMorphism::compose(
        field,
        cat,
        &target_auto,
        &SMorphism::compose(field, cat, u, &source_auto),
    );
    // the lemma promises exact block-diagonality
    assert!(
        block_of(field, cat, &conjugated, src_first, 1, tgt_first, 0).is_zero(),
        "beta block survived the conjugation"
    );
    assert!(
        block_of(field, cat, &conjugated, src_first, 0, tgt_first, 1).is_zero(),
        "gamma block survived the conjugation"
    );
    assert_eq!(
        block_of(field, cat, &conjugated, src_first, 0, tgt_first, 0),
        alpha,
        "alpha block changed under the conjugation"
    );
    Ok(DeccritWitness {
        source_auto,
        target_auto,
        conjugated,
    })
}

/// Solves `alpha . x = rhs` for `x`.
fn solve_post_factor(
    field: Field,
    cat: &PresCategory,
    alpha: &SMorphism,
    rhs: &SMorphism,
) -> Option<SMorphism> {
    let unknowns = SMorUnknowns::new(cat, &rhs.src, &alpha.src);
    let eq = SMorUnknowns::new(cat, &rhs.src, &alpha.tgt);
    let mut sys = LinearSystem::new(unknowns.len());
    let mut cols = Vec::new();
    for k in 0..unknowns.len() {
        let unit = unknowns.unit(field, cat, k);
        cols.push(eq.coeffs_of(field, cat, &SMorphism::compose(field, cat, alpha, &unit)));
    }
    for (slot, rhs_c) in eq.coeffs_of(field, cat, rhs).iter().enumerate() {
        let lhs: Vec<(usize, Scalar)> = cols
            .iter()
            .enumerate()
            .filter_map(|(k, col)| (!field.is_zero(&col[slot])).then(|| (k, col[slot].clone())))
            .collect();
        sys.add_equation(lhs, rhs_c.clone());
    }
    let sol = sys.solve_affine(field);
    let values = sol.particular?;
    Some(unknowns.matrix_from(field, cat, &values))
}

/// Solves `x . alpha = rhs` for `x`.
fn solve_pre_factor(
    field: Field,
    cat: &PresCategory,
    alpha: &SMorphism,
    rhs: &SMorphism,
) -> Option<SMorphism> {
    let unknowns = SMorUnknowns::new(cat, &alpha.tgt, &rhs.tgt);
    let eq = SMorUnknowns::new(cat, &alpha.src, &rhs.tgt);
    let mut sys = LinearSystem::new(unknowns.len());
    let mut cols = Vec::new();
    for k in 0..unknowns.len() {
        let unit = unknowns.unit(field, cat, k);
        cols.push(eq.coeffs_of(field, cat, &SMorphism::compose(field, cat, &unit, alpha)));
    }
    for (slot, rhs_c) in eq.coeffs_of(field, cat, rhs).iter().enumerate() {
        let lhs: Vec<(usize, Scalar)> = cols
            .iter()
            .enumerate()
            .filter_map(|(k, col)| (!field.is_zero(&col[slot])).then(|| (k, col[slot].clone())))
            .collect();
        sys.add_equation(lhs, rhs_c.clone());
    }
    let sol = sys.solve_affine(field);
    let values = sol.particular?;
    Some(unknowns.matrix_from(field, cat, &values))
}

/// A complete decomposition: `tgt_iso . u . src_iso` equals the direct sum
/// of the canonical pieces, with both isos invertible.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pieces: Vec<SPiece>,
    /// Isomorphism from the canonical source onto `src(u)`.
    pub src_iso: SMorphism,
    /// Isomorphism from `tgt(u)` onto the canonical target.
    pub tgt_iso: SMorphism,
}

impl Decomposition {
    pub fn piece_multiset(&self) -> BTreeMap<SPiece, usize> {
        let mut m = BTreeMap::new();
        for p in &self.pieces {
            *m.entry(*p).or_insert(0) += 1;
        }
        m
    }

    /// Recomposition check: conjugating `u` through the recorded bases
    /// yields exactly the canonical direct sum.
    pub fn verify(&self, field: Field, cat: &PresCategory, ids: &SArrows, u: &SMorphism) -> bool {
        let canonical = canonical_from_pieces(field, cat, ids, &self.pieces);
        let conj = SMorphism::compose(
            field,
            cat,
            &self.tgt_iso,
            &SMorphism::compose(field, cat, u, &self.src_iso),
        );
        conj == canonical
            && self.src_iso.inverse(field, cat).is_some()
            && self.tgt_iso.inverse(field, cat).is_some()
    }
}

struct SplitPlan {
    piece: SPiece,
    src_changes: Vec<((usize, i64), ScalarMat)>,
    tgt_changes: Vec<((usize, i64), ScalarMat)>,
}

/// An invertible matrix with first column `v` (the remaining columns are
/// the standard basis vectors other than the pivot).
fn basis_extension(field: Field, v: &[Scalar]) -> ScalarMat {
    extend_to_basis(field, vec![v.to_vec()], v.len())
}

/// An invertible matrix whose first columns are the given independent
/// vectors, completed by standard basis vectors.
fn extend_to_basis(field: Field, prefix: Vec<Vec<Scalar>>, dim: usize) -> ScalarMat {
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
    let push = |cols: &mut Vec<Vec<Scalar>>, v: Vec<Scalar>| -> bool {
        let mut wider = ScalarMat::zero(field, dim, cols.len() + 1);
        for (c, col) in cols.iter().enumerate() {
            for (r, val) in col.iter().enumerate() {
                wider.set(r, c, val.clone());
            }
        }
        for (r, val) in v.iter().enumerate() {
            wider.set(r, cols.len(), val.clone());
        }
        if wider.rank(field) == cols.len() + 1 {
            cols.push(v);
            true
        } else {
            false
        }
    };
    for v in prefix {
        assert!(
            push(&mut cols, v),
            "prefix vectors must be linearly independent"
        );
    }
    for j in 0..dim {
        if cols.len() == dim {
            break;
        }
        let mut e = vec![field.zero(); dim];
        e[j] = field.one();
        push(&mut cols, e);
    }
    assert_eq!(cols.len(), dim, "failed to complete to a basis");
    let mut m = ScalarMat::zero(field, dim, dim);
    for (c, col) in cols.iter().enumerate() {
        for (r, val) in col.iter().enumerate() {
            m.set(r, c, val.clone());
        }
    }
    debug_assert!(m.is_invertible(field));
    m
}

/// A maximal independent subset of the columns.
fn column_space_basis(field: Field, m: &ScalarMat) -> Vec<Vec<Scalar>> {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut rank = 0usize;
    for c in 0..m.cols {
        let col = m.col(c);
        if col.iter().all(|v| field.is_zero(v)) {
            continue;
        }
        let mut probe = ScalarMat::zero(field, m.rows, basis.len() + 1);
        for (j, b) in basis.iter().enumerate() {
            for (r, val) in b.iter().enumerate() {
                probe.set(r, j, val.clone());
            }
        }
        for (r, val) in col.iter().enumerate() {
            probe.set(r, basis.len(), val.clone());
        }
        if probe.rank(field) == rank + 1 {
            basis.push(col);
            rank += 1;
        }
    }
    basis
}

fn solve_columns(field: Field, m: &ScalarMat, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut sys = LinearSystem::new(m.cols);
    for r in 0..m.rows {
        let lhs: Vec<(usize, Scalar)> = (0..m.cols)
            .filter_map(|c| {
                let v = m.get(r, c);
                (!field.is_zero(v)).then(|| (c, v.clone()))
            })
            .collect();
        sys.add_equation(lhs, rhs[r].clone());
    }
    sys.solve_affine(field).particular
}

fn scale_vec(field: Field, v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| field.mul(x, c)).collect()
}

fn find_split(field: Field, cat: &PresCategory, ids: &SArrows, u: &SMorphism) -> Option<SplitPlan> {
    // stage 1: identity components
    for (&class, m) in u.stored_iparts() {
        for r in 0..m.rows {
            for c in 0..m.cols {
                if field.is_zero(m.get(r, c)) {
                    continue;
                }
                let mut v = vec![field.zero(); m.cols];
                v[c] = field.one();
                let w = m.col(c);
                let _ = r;
                return Some(SplitPlan {
                    piece: SPiece::Identity {
                        obj: class.0,
                        shift: class.1,
                    },
                    src_changes: vec![(class, basis_extension(field, &v))],
                    tgt_changes: vec![(class, basis_extension(field, &w).inverse(field).unwrap())],
                });
            }
        }
    }

    // helper closures over the materialized per-shift matrices
    let shifts_of = |obj: usize, side_src: bool| -> Vec<i64> {
        let it: Vec<i64> = if side_src {
            u.src
                .classes()
                .filter(|((o, _), _)| *o == obj)
                .map(|((_, n), _)| n)
                .collect()
        } else {
            u.tgt
                .classes()
                .filter(|((o, _), _)| *o == obj)
                .map(|((_, n), _)| n)
                .collect()
        };
        it
    };

    // stage 2 and 3: kernel comparison for a pair of arrows out of one object
    // (split the arrow whose kernel-partner collapses, else the pair)
    struct KernelStage {
        obj: usize,
        first: usize,
        second: usize,
        pair: fn(i64) -> SPiece,
        second_sign: i64,
    }
    let kernel_stages = [
        KernelStage {
            obj: ids.b,
            first: ids.g,
            second: ids.fp,
            pair: |n| SPiece::PairGF { shift: n },
            second_sign: 1,
        },
        KernelStage {
            obj: ids.e,
            first: ids.kp,
            second: ids.hpp,
            pair: |n| SPiece::PairKH { shift: n },
            second_sign: -1,
        },
    ];
    for st in &kernel_stages {
        for n in shifts_of(st.obj, true) {
            let m1 = u.apart(field, cat, st.first, n);
            let m2 = u.apart(field, cat, st.second, n);
            if m1.is_zero(field) && m2.is_zero(field) {
                continue;
            }
            let class = (st.obj, n);
            let d1 = &cat.arrows[st.first];
            let d2 = &cat.arrows[st.second];
            let t1 = (d1.tgt, n + d1.degree);
            let t2 = (d2.tgt, n + d2.degree);
            // v in ker(second) with first(v) != 0: split the first arrow
            for v in m2.kernel_basis(field) {
                let w = m1.mul_vec(field, &v);
                if w.iter().any(|x| !field.is_zero(x)) {
                    return Some(SplitPlan {
                        piece: SPiece::Arrow {
                            arrow: st.first,
                            shift: n,
                        },
                        src_changes: vec![(class, basis_extension(field, &v))],
                        tgt_changes: vec![(t1, basis_extension(field, &w).inverse(field).unwrap())],
                    });
                }
            }
            // v in ker(first) with second(v) != 0: split the second arrow
            for v in m1.kernel_basis(field) {
                let w = m2.mul_vec(field, &v);
                if w.iter().any(|x| !field.is_zero(x)) {
                    return Some(SplitPlan {
                        piece: SPiece::Arrow {
                            arrow: st.second,
                            shift: n,
                        },
                        src_changes: vec![(class, basis_extension(field, &v))],
                        tgt_changes: vec![(t2, basis_extension(field, &w).inverse(field).unwrap())],
                    });
                }
            }
            // equal kernels, not everything: split the pair on any v with
            // nonzero images under both. The source basis is completed so the
            // complement is the kernel plus a transversal, and each target
            // basis continues with the images of the transversal: both arrows
            // then map the complement into the complements, as the splitting
            // lemma requires.
            let dim = u.src.dim(class);
            for c in 0..dim {
                let mut v = vec![field.zero(); dim];
                v[c] = field.one();
                let w1 = m1.mul_vec(field, &v);
                if w1.iter().all(|x| field.is_zero(x)) {
                    continue;
                }
                let w2 = m2.mul_vec(field, &v);
                assert!(
                    w2.iter().any(|x| !field.is_zero(x)),
                    "kernels were equal, both images must be nonzero"
                );
                let mut prefix = vec![v.clone()];
                prefix.extend(m1.kernel_basis(field));
                let q = extend_to_basis(field, prefix, dim);
                let transversal: Vec<Vec<Scalar>> = (1 + m1.kernel_basis(field).len()..dim)
                    .map(|j| q.col(j))
                    .collect();
                let mut t1_prefix = vec![w1.clone()];
                t1_prefix.extend(transversal.iter().map(|t| m1.mul_vec(field, t)));
                let mut t2_prefix = vec![scale_vec(field, &w2, &field.from_i64(st.second_sign))];
                t2_prefix.extend(transversal.iter().map(|t| m2.mul_vec(field, t)));
                return Some(SplitPlan {
                    piece: (st.pair)(n),
                    src_changes: vec![(class, q)],
                    tgt_changes: vec![
                        (
                            t1,
                            extend_to_basis(field, t1_prefix, u.tgt.dim(t1))
                                .inverse(field)
                                .unwrap(),
                        ),
                        (
                            t2,
                            extend_to_basis(field, t2_prefix, u.tgt.dim(t2))
                                .inverse(field)
                                .unwrap(),
                        ),
                    ],
                });
            }
        }
    }

    // stage 4 and 5: image comparison for a pair of arrows into one object
    struct ImageStage {
        // components (first: C1 -> T, second: C2 -> T) at target shift n + off
        first: usize,
        second: usize,
        first_shift_off: i64,
        second_shift_off: i64,
        tgt_obj: usize,
        pair: fn(i64) -> SPiece,
        pair_shift_off: i64,
        second_sign: i64,
    }
    // (h', -k) into E at shift n; (g'', f[1]) into B at shift m
    let image_stages = [
        ImageStage {
            first: ids.hp,
            second: ids.k,
            first_shift_off: 0,
            second_shift_off: 0,
            tgt_obj: ids.e,
            pair: |n| SPiece::PairHK { shift: n },
            pair_shift_off: 0,
            second_sign: -1,
        },
        ImageStage {
            first: ids.gpp,
            second: ids.f,
            first_shift_off: -1,
            second_shift_off: 0,
            tgt_obj: ids.b,
            pair: |m| SPiece::PairGSF { shift: m - 1 },
            pair_shift_off: 0,
            second_sign: 1,
        },
    ];
    for st in &image_stages {
        for m in shifts_of(st.tgt_obj, false) {
            let n1 = m + st.first_shift_off;
            let n2 = m + st.second_shift_off;
            let m1 = u.apart(field, cat, st.first, n1);
            let m2 = u.apart(field, cat, st.second, n2);
            if m1.is_zero(field) && m2.is_zero(field) {
                continue;
            }
            let tclass = (st.tgt_obj, m);
            let c1 = (cat.arrows[st.first].src, n1);
            let c2 = (cat.arrows[st.second].src, n2);
            // column of second outside im(first): split the second arrow.
            // The target complement is spanned starting from im(first), so
            // the partner's components avoid the split coordinate (there is
            // no factorization between the two source objects).
            for c in 0..m2.cols {
                let w = m2.col(c);
                if w.iter().all(|x| field.is_zero(x)) {
                    continue;
                }
                if !m1.column_space_contains(field, &w) {
                    let mut v = vec![field.zero(); m2.cols];
                    v[c] = field.one();
                    let mut t_prefix = vec![w.clone()];
                    t_prefix.extend(column_space_basis(field, &m1));
                    return Some(SplitPlan {
                        piece: SPiece::Arrow {
                            arrow: st.second,
                            shift: n2,
                        },
                        src_changes: vec![(c2, basis_extension(field, &v))],
                        tgt_changes: vec![(
                            tclass,
                            extend_to_basis(field, t_prefix, u.tgt.dim(tclass))
                                .inverse(field)
                                .unwrap(),
                        )],
                    });
                }
            }
            // column of first outside im(second): split the first arrow
            for c in 0..m1.cols {
                let w = m1.col(c);
                if w.iter().all(|x| field.is_zero(x)) {
                    continue;
                }
                if !m2.column_space_contains(field, &w) {
                    let mut v = vec![field.zero(); m1.cols];
                    v[c] = field.one();
                    let mut t_prefix = vec![w.clone()];
                    t_prefix.extend(column_space_basis(field, &m2));
                    return Some(SplitPlan {
                        piece: SPiece::Arrow {
                            arrow: st.first,
                            shift: n1,
                        },
                        src_changes: vec![(c1, basis_extension(field, &v))],
                        tgt_changes: vec![(
                            tclass,
                            extend_to_basis(field, t_prefix, u.tgt.dim(tclass))
                                .inverse(field)
                                .unwrap(),
                        )],
                    });
                }
            }
            // equal nonzero images: split the pair
            for c in 0..m1.cols {
                let w = m1.col(c);
                if w.iter().all(|x| field.is_zero(x)) {
                    continue;
                }
                let mut v1 = vec![field.zero(); m1.cols];
                v1[c] = field.one();
                // solve second . v2 = sign * w
                let signed = scale_vec(field, &w, &field.from_i64(st.second_sign));
                let v2 = solve_columns(field, &m2, &signed)
                    .expect("equal images: the partner preimage must exist");
                return Some(SplitPlan {
                    piece: (st.pair)(m + st.pair_shift_off),
                    src_changes: vec![
                        (c1, basis_extension(field, &v1)),
                        (c2, basis_extension(field, &v2)),
                    ],
                    tgt_changes: vec![(tclass, basis_extension(field, &w).inverse(field).unwrap())],
                });
            }
        }
    }

    // stage 6: the remaining single arrows, in the fixed order
    for name in ["f''", "g'", "h", "k''", "l", "l'"] {
        let x = cat.arrow_index(name);
        let decl = &cat.arrows[x];
        for n in shifts_of(decl.src, true) {
            let m = u.apart(field, cat, x, n);
            for c in 0..m.cols {
                let w = m.col(c);
                if w.iter().all(|z| field.is_zero(z)) {
                    continue;
                }
                let mut v = vec![field.zero(); m.cols];
                v[c] = field.one();
                return Some(SplitPlan {
                    piece: SPiece::Arrow { arrow: x, shift: n },
                    src_changes: vec![((decl.src, n), basis_extension(field, &v))],
                    tgt_changes: vec![(
                        (decl.tgt, n + decl.degree),
                        basis_extension(field, &w).inverse(field).unwrap(),
                    )],
                });
            }
        }
    }
    None
}

fn class_auto(field: Field, obj: &SumObject, changes: &[((usize, i64), ScalarMat)]) -> SMorphism {
    let mut auto = SMorphism::identity(field, obj);
    for (class, m) in changes {
        assert_eq!(m.rows, obj.dim(*class), "class change has wrong size");
        auto.set_ipart(field, *class, m.clone());
    }
    auto
}

/// Decomposes a morphism of the octahedron category into indecomposable
/// pieces with explicit change-of-basis isomorphisms.
pub fn decompose_morphism(
    field: Field,
    cat: &PresCategory,
    ids: &SArrows,
    u: &SMorphism,
) -> Result<Decomposition> {
    let (pieces, src_iso, tgt_iso) = decompose_rec(field, cat, ids, u)?;
    let dec = Decomposition {
        pieces,
        src_iso,
        tgt_iso,
    };
    assert!(dec.verify(field, cat, ids, u), "recomposition failed");
    Ok(dec)
}

fn decompose_rec(
    field: Field,
    cat: &PresCategory,
    ids: &SArrows,
    u: &SMorphism,
) -> Result<(Vec<SPiece>, SMorphism, SMorphism)> {
    let Some(plan) = find_split(field, cat, ids, u) else {
        // nothing splits: the morphism is zero and falls apart into stalks
        assert!(u.is_zero(), "no split found on a nonzero morphism");
        let mut pieces = Vec::new();
        for (class, m) in u.src.classes() {
            for _ in 0..m {
                pieces.push(SPiece::ZeroSrc {
                    obj: class.0,
                    shift: class.1,
                });
            }
        }
        for (class, m) in u.tgt.classes() {
            for _ in 0..m {
                pieces.push(SPiece::ZeroTgt {
                    obj: class.0,
                    shift: class.1,
                });
            }
        }
        return Ok((
            pieces,
            SMorphism::identity(field, &u.src),
            SMorphism::identity(field, &u.tgt),
        ));
    };

    // move the chosen coordinates to the front of their classes
    let s0 = class_auto(field, &u.src, &plan.src_changes);
    let t0 = class_auto(field, &u.tgt, &plan.tgt_changes);
    let u2 = SMorphism::compose(field, cat, &t0, &SMorphism::compose(field, cat, u, &s0));

    let piece_src = plan.piece.src_object(ids, cat);
    let piece_tgt = plan.piece.tgt_object(ids, cat);
    let alpha = block_of(field, cat, &u2, &piece_src, 0, &piece_tgt, 0);
    assert_eq!(
        alpha,
        plan.piece.canonical_smor(field, cat, ids),
        "normalization did not produce the canonical piece block"
    );

    let witness = deccrit_split(field, cat, &u2, &piece_src, &piece_tgt, None, None)?;
    let rest = block_of(
        field,
        cat,
        &witness.conjugated,
        &piece_src,
        1,
        &piece_tgt,
        1,
    );
    let (mut pieces, sigma_r, tau_r) = decompose_rec(field, cat, ids, &rest)?;

    // assemble the total isomorphisms
    let canon_src = piece_src.direct_sum(&sigma_r.src);
    let canon_tgt = piece_tgt.direct_sum(&tau_r.tgt);
    let iota = embed_block(
        field,
        cat,
        &canon_src,
        &piece_src,
        0,
        &u.src,
        &piece_src,
        0,
        &SMorphism::identity(field, &piece_src),
    )
    .add(
        field,
        &embed_block(
            field, cat, &canon_src, &piece_src, 1, &u.src, &piece_src, 1, &sigma_r,
        ),
    );
    let pi = embed_block(
        field,
        cat,
        &u.tgt,
        &piece_tgt,
        0,
        &canon_tgt,
        &piece_tgt,
        0,
        &SMorphism::identity(field, &piece_tgt),
    )
    .add(
        field,
        &embed_block(
            field, cat, &u.tgt, &piece_tgt, 1, &canon_tgt, &piece_tgt, 1, &tau_r,
        ),
    );

    let src_iso = SMorphism::compose(
        field,
        cat,
        &s0,
        &SMorphism::compose(field, cat, &witness.source_auto, &iota),
    );
    let tgt_iso = SMorphism::compose(
        field,
        cat,
        &pi,
        &SMorphism::compose(field, cat, &witness.target_auto, &t0),
    );

    let mut all = vec![plan.piece];
    all.append(&mut pieces);
    Ok((all, src_iso, tgt_iso))
}

/// Brute-force indecomposability oracle: enumerates the endomorphism space
/// of `u` in the morphism category and checks that the only idempotent
/// pairs are `(0, 0)` and `(1, 1)`. Returns `None` when the space is not
/// enumerable within `cap` points.
pub fn indecomposable_by_idempotents(
    field: Field,
    cat: &PresCategory,
    u: &SMorphism,
    cap: u64,
) -> Option<bool> {
    let end_src = SMorUnknowns::new(cat, &u.src, &u.src);
    let end_tgt = SMorUnknowns::new(cat, &u.tgt, &u.tgt);
    let total = end_src.len() + end_tgt.len();
    let mut sys = LinearSystem::new(total);
    // u.a = b.u
    let eq = SMorUnknowns::new(cat, &u.src, &u.tgt);
    let mut columns: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); eq.len()];
    for k in 0..end_src.len() {
        let unit = end_src.unit(field, cat, k);
        let img = SMorphism::compose(field, cat, u, &unit);
        for (slot, v) in eq.coeffs_of(field, cat, &img).into_iter().enumerate() {
            if !field.is_zero(&v) {
                columns[slot].push((k, v));
            }
        }
    }
    for k in 0..end_tgt.len() {
        let unit = end_tgt.unit(field, cat, k);
        let img = SMorphism::compose(field, cat, &unit, u);
        for (slot, v) in eq.coeffs_of(field, cat, &img).into_iter().enumerate() {
            if !field.is_zero(&v) {
                columns[slot].push((end_src.len() + k, field.neg(&v)));
            }
        }
    }
    for lhs in columns {
        sys.add_equation(lhs, field.zero());
    }
    let space = sys.solve_affine(field);
    let points = space.enumerate(field, cap)?;
    let mut idempotents = 0usize;
    for p in &points {
        let a = end_src.matrix_from(field, cat, &p[..end_src.len()]);
        let b = end_tgt.matrix_from(field, cat, &p[end_src.len()..]);
        let aa = SMorphism::compose(field, cat, &a, &a);
        let bb = SMorphism::compose(field, cat, &b, &b);
        if aa == a && bb == b {
            idempotents += 1;
        }
    }
    // 0 and 1 are always idempotent; indecomposable iff nothing else is
    Some(idempotents == 2)
}
