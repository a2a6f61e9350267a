//! The presented homotopy category on formal direct sums of shifted
//! two-term complexes `P_n`.
//!
//! Morphisms between single summands are coefficient combinations of the
//! basis morphisms `x^i` (shift gap 0) and `y^i` (shift gap 1); all Hom
//! spaces with any other shift gap vanish. Composition is given by
//! structure constants:
//!
//! * `x^j . x^i = x^{i+j}` when `i+j < n`, else `0`;
//! * `y^j . x^i = y^{j-i}` when `j-i > max(0, l-n)`, else `0`;
//! * `Sx^j . y^i = y^{i-j}` when `i-j > max(0, l-n)`, else `0`;
//! * anything involving two `y`'s is `0` (shift gap 2).
//!
//! Here `l` is the source exponent of the composite. The chain-level
//! realization of these rules is checked by the `structure_constants`
//! acceptance sweep.

mod invert;
mod realize;

pub use invert::is_invertible;
pub use realize::{presentify, realize, realize_pobject};

use std::collections::BTreeMap;

use crate::exactalg::{Field, Scalar};
use crate::{Error, Result};

/// One indecomposable summand `P_n[shift]`, `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Summand {
    pub n: usize,
    pub shift: i64,
}

impl Summand {
    pub fn new(n: usize, shift: i64) -> Summand {
        assert!(n >= 1, "P_0 is the zero object and is never a summand");
        Summand { n, shift }
    }

    pub fn shifted(&self, s: i64) -> Summand {
        Summand {
            n: self.n,
            shift: self.shift + s,
        }
    }
}

/// A formal direct sum of summands; order is significant for matrix
/// indexing, the empty list is the zero object.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PObject {
    pub summands: Vec<Summand>,
}

impl PObject {
    pub fn zero() -> PObject {
        PObject::default()
    }

    pub fn single(n: usize, shift: i64) -> PObject {
        PObject {
            summands: vec![Summand::new(n, shift)],
        }
    }

    pub fn from_summands(summands: Vec<(usize, i64)>) -> PObject {
        PObject {
            summands: summands
                .into_iter()
                .map(|(n, s)| Summand::new(n, s))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn shifted(&self, s: i64) -> PObject {
        PObject {
            summands: self.summands.iter().map(|x| x.shifted(s)).collect(),
        }
    }

    /// Concatenation, `self` first.
    pub fn direct_sum(&self, other: &PObject) -> PObject {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().copied());
        PObject { summands }
    }

    /// Summand multiplicities per isomorphism class `(n, shift)`.
    pub fn isotype_multiset(&self) -> BTreeMap<(usize, i64), usize> {
        let mut m = BTreeMap::new();
        for s in &self.summands {
            *m.entry((s.n, s.shift)).or_insert(0) += 1;
        }
        m
    }

    /// Positions per isomorphism class, in summand order.
    pub fn isotype_positions(&self) -> BTreeMap<(usize, i64), Vec<usize>> {
        let mut m: BTreeMap<(usize, i64), Vec<usize>> = BTreeMap::new();
        for (i, s) in self.summands.iter().enumerate() {
            m.entry((s.n, s.shift)).or_default().push(i);
        }
        m
    }
}

/// Basis morphism kind: `x^i` preserves the shift, `y^i` raises it by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MorKind {
    X,
    Y,
}

/// A basis morphism between single summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisMor {
    pub kind: MorKind,
    pub i: usize,
    pub src: Summand,
    pub tgt: Summand,
}

impl BasisMor {
    pub fn x(i: usize, src: Summand, tgt: Summand) -> BasisMor {
        BasisMor::try_x(i, src, tgt).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn y(i: usize, src: Summand, tgt: Summand) -> BasisMor {
        BasisMor::try_y(i, src, tgt).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Checked construction for untrusted input.
    pub fn try_x(i: usize, src: Summand, tgt: Summand) -> Result<BasisMor> {
        if tgt.shift != src.shift {
            return Err(Error::Domain("x-morphisms preserve the shift".into()));
        }
        if i < tgt.n.saturating_sub(src.n) || i >= tgt.n {
            return Err(Error::Domain(format!(
                "x^{i} is not a basis element of Hom(P_{}, P_{})",
                src.n, tgt.n
            )));
        }
        Ok(BasisMor {
            kind: MorKind::X,
            i,
            src,
            tgt,
        })
    }

    /// Checked construction for untrusted input.
    pub fn try_y(i: usize, src: Summand, tgt: Summand) -> Result<BasisMor> {
        if tgt.shift != src.shift + 1 {
            return Err(Error::Domain("y-morphisms raise the shift by 1".into()));
        }
        if i <= src.n.saturating_sub(tgt.n) || i > src.n {
            return Err(Error::Domain(format!(
                "y^{i} is not a basis element of Hom(P_{}, P_{}[1])",
                src.n, tgt.n
            )));
        }
        Ok(BasisMor {
            kind: MorKind::Y,
            i,
            src,
            tgt,
        })
    }
}

/// The full basis of `Hom(src, tgt)`; empty when the shift gap is not 0 or 1.
pub fn hom_basis(src: Summand, tgt: Summand) -> Vec<BasisMor> {
    match tgt.shift - src.shift {
        0 => (tgt.n.saturating_sub(src.n)..tgt.n)
            .map(|i| BasisMor::x(i, src, tgt))
            .collect(),
        1 => (src.n.saturating_sub(tgt.n) + 1..=src.n)
            .map(|i| BasisMor::y(i, src, tgt))
            .collect(),
        _ => Vec::new(),
    }
}

/// `g . f` as a basis morphism (structure constants are 0 or 1).
pub fn compose_basis(g: &BasisMor, f: &BasisMor) -> Option<BasisMor> {
    assert_eq!(g.src, f.tgt, "basis morphisms not composable");
    let l = f.src.n;
    match (f.kind, g.kind) {
        (MorKind::X, MorKind::X) => {
            let e = f.i + g.i;
            (e < g.tgt.n).then(|| BasisMor::x(e, f.src, g.tgt))
        }
        (MorKind::X, MorKind::Y) => {
            if g.i > f.i && g.i - f.i > l.saturating_sub(g.tgt.n) {
                Some(BasisMor::y(g.i - f.i, f.src, g.tgt))
            } else {
                None
            }
        }
        (MorKind::Y, MorKind::X) => {
            // g is a shifted x-morphism acting after y^i
            if f.i > g.i && f.i - g.i > l.saturating_sub(g.tgt.n) {
                Some(BasisMor::y(f.i - g.i, f.src, g.tgt))
            } else {
                None
            }
        }
        (MorKind::Y, MorKind::Y) => None,
    }
}

/// A Hom-space element between single summands: a coefficient map over the
/// basis, with zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub src: Summand,
    pub tgt: Summand,
    terms: BTreeMap<usize, Scalar>,
}

impl HomElement {
    pub fn zero(src: Summand, tgt: Summand) -> HomElement {
        HomElement {
            src,
            tgt,
            terms: BTreeMap::new(),
        }
    }

    /// The morphism kind carried by this Hom space, if it is nonzero.
    pub fn kind(&self) -> Option<MorKind> {
        match self.tgt.shift - self.src.shift {
            0 => Some(MorKind::X),
            1 => Some(MorKind::Y),
            _ => None,
        }
    }

    pub fn from_basis(field: Field, b: &BasisMor, coeff: Scalar) -> HomElement {
        // round-trip the constructor to assert the exponent range
        match b.kind {
            MorKind::X => {
                BasisMor::x(b.i, b.src, b.tgt);
            }
            MorKind::Y => {
                BasisMor::y(b.i, b.src, b.tgt);
            }
        }
        let mut el = HomElement::zero(b.src, b.tgt);
        el.add_term(field, b.i, coeff);
        el
    }

    pub fn add_term(&mut self, field: Field, i: usize, coeff: Scalar) {
        if field.is_zero(&coeff) {
            return;
        }
        let entry = self.terms.entry(i).or_insert_with(|| field.zero());
        *entry = field.add(entry, &coeff);
        if field.is_zero(entry) {
            self.terms.remove(&i);
        }
    }

    pub fn coeff(&self, field: Field, i: usize) -> Scalar {
        self.terms.get(&i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as basis morphisms with coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (BasisMor, &Scalar)> + '_ {
        let kind = self.kind();
        self.terms.iter().map(move |(&i, c)| {
            let b = match kind.expect("nonzero element in a zero Hom space") {
                MorKind::X => BasisMor::x(i, self.src, self.tgt),
                MorKind::Y => BasisMor::y(i, self.src, self.tgt),
            };
            (b, c)
        })
    }

    pub fn add(&self, field: Field, other: &HomElement) -> HomElement {
        assert_eq!((self.src, self.tgt), (other.src, other.tgt));
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(field, i, c.clone());
        }
        out
    }

    pub fn neg(&self, field: Field) -> HomElement {
        HomElement {
            src: self.src,
            tgt: self.tgt,
            terms: self.terms.iter().map(|(&i, c)| (i, field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, field: Field, c: &Scalar) -> HomElement {
        let mut out = HomElement::zero(self.src, self.tgt);
        for (&i, v) in &self.terms {
            out.add_term(field, i, field.mul(v, c));
        }
        out
    }

    pub fn shifted(&self, s: i64) -> HomElement {
        HomElement {
            src: self.src.shifted(s),
            tgt: self.tgt.shifted(s),
            terms: self.terms.clone(),
        }
    }

    pub fn compose(field: Field, g: &HomElement, f: &HomElement) -> HomElement {
        assert_eq!(g.src, f.tgt, "elements not composable");
        let mut out = HomElement::zero(f.src, g.tgt);
        if f.is_zero() || g.is_zero() {
            return out;
        }
        for (bf, cf) in f.terms() {
            for (bg, cg) in g.terms() {
                if let Some(b) = compose_basis(&bg, &bf) {
                    out.add_term(field, b.i, field.mul(cf, cg));
                }
            }
        }
        out
    }
}

/// A morphism between formal direct sums: a target-row by source-column grid
/// of [`HomElement`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    pub src: PObject,
    pub tgt: PObject,
    entries: Vec<HomElement>,
}

impl HomMatrix {
    pub fn zero(src: PObject, tgt: PObject) -> HomMatrix {
        let entries = tgt
            .summands
            .iter()
            .flat_map(|t| src.summands.iter().map(|s| HomElement::zero(*s, *t)))
            .collect();
        HomMatrix { src, tgt, entries }
    }

    pub fn identity(field: Field, obj: &PObject) -> HomMatrix {
        let mut m = HomMatrix::zero(obj.clone(), obj.clone());
        for (i, s) in obj.summands.iter().enumerate() {
            m.set_entry(
                i,
                i,
                HomElement::from_basis(field, &BasisMor::x(0, *s, *s), field.one()),
            );
        }
        m
    }

    pub fn from_grid(src: PObject, tgt: PObject, grid: Vec<Vec<HomElement>>) -> Result<HomMatrix> {
        if grid.len() != tgt.summands.len()
            || grid.iter().any(|row| row.len() != src.summands.len())
        {
            return Err(Error::Validation("grid shape mismatch".into()));
        }
        let mut m = HomMatrix::zero(src, tgt);
        for (r, row) in grid.into_iter().enumerate() {
            for (c, el) in row.into_iter().enumerate() {
                m.set_entry(r, c, el);
            }
        }
        Ok(m)
    }

    pub fn entry(&self, row: usize, col: usize) -> &HomElement {
        &self.entries[row * self.src.summands.len() + col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, el: HomElement) {
        assert_eq!(el.src, self.src.summands[col], "entry source mismatch");
        assert_eq!(el.tgt, self.tgt.summands[row], "entry target mismatch");
        self.entries[row * self.src.summands.len() + col] = el;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HomElement::is_zero)
    }

    pub fn compose(field: Field, g: &HomMatrix, f: &HomMatrix) -> Result<HomMatrix> {
        if g.src != f.tgt {
            return Err(Error::Domain(
                "object mismatch in homotopy-category composition".into(),
            ));
        }
        let mut out = HomMatrix::zero(f.src.clone(), g.tgt.clone());
        for r in 0..g.tgt.summands.len() {
            for c in 0..f.src.summands.len() {
                let mut acc = HomElement::zero(f.src.summands[c], g.tgt.summands[r]);
                for m in 0..g.src.summands.len() {
                    let prod = HomElement::compose(field, g.entry(r, m), f.entry(m, c));
                    acc = acc.add(field, &prod);
                }
                out.set_entry(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, field: Field, other: &HomMatrix) -> HomMatrix {
        assert_eq!(self.src, other.src);
        assert_eq!(self.tgt, other.tgt);
        let mut out = self.clone();
        for r in 0..self.tgt.summands.len() {
            for c in 0..self.src.summands.len() {
                out.set_entry(r, c, self.entry(r, c).add(field, other.entry(r, c)));
            }
        }
        out
    }

    pub fn sub(&self, field: Field, other: &HomMatrix) -> HomMatrix {
        self.add(field, &other.neg(field))
    }

    pub fn neg(&self, field: Field) -> HomMatrix {
        HomMatrix {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            entries: self.entries.iter().map(|e| e.neg(field)).collect(),
        }
    }

    pub fn scale(&self, field: Field, c: &Scalar) -> HomMatrix {
        HomMatrix {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            entries: self.entries.iter().map(|e| e.scale(field, c)).collect(),
        }
    }

    /// The shifted morphism `u[s]`: same coefficients between shifted
    /// summands.
    pub fn shifted(&self, s: i64) -> HomMatrix {
        HomMatrix {
            src: self.src.shifted(s),
            tgt: self.tgt.shifted(s),
            entries: self.entries.iter().map(|e| e.shifted(s)).collect(),
        }
    }

    /// Stacks matrices with a common source on top of each other.
    pub fn vstack(blocks: &[&HomMatrix]) -> HomMatrix {
        assert!(!blocks.is_empty());
        let src = blocks[0].src.clone();
        assert!(blocks.iter().all(|b| b.src == src));
        let tgt = blocks
            .iter()
            .fold(PObject::zero(), |acc, b| acc.direct_sum(&b.tgt));
        let mut out = HomMatrix::zero(src.clone(), tgt);
        let mut row0 = 0;
        for b in blocks {
            for r in 0..b.tgt.summands.len() {
                for c in 0..src.summands.len() {
                    out.set_entry(row0 + r, c, b.entry(r, c).clone());
                }
            }
            row0 += b.tgt.summands.len();
        }
        out
    }

    /// Places matrices with a common target side by side.
    pub fn hstack(blocks: &[&HomMatrix]) -> HomMatrix {
        assert!(!blocks.is_empty());
        let tgt = blocks[0].tgt.clone();
        assert!(blocks.iter().all(|b| b.tgt == tgt));
        let src = blocks
            .iter()
            .fold(PObject::zero(), |acc, b| acc.direct_sum(&b.src));
        let mut out = HomMatrix::zero(src, tgt.clone());
        let mut col0 = 0;
        for b in blocks {
            for r in 0..tgt.summands.len() {
                for c in 0..b.src.summands.len() {
                    out.set_entry(r, col0 + c, b.entry(r, c).clone());
                }
            }
            col0 += b.src.summands.len();
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, field: Field, other: &HomMatrix) -> HomMatrix {
        let a = HomMatrix::vstack(&[self, &HomMatrix::zero(self.src.clone(), other.tgt.clone())]);
        let b = HomMatrix::vstack(&[&HomMatrix::zero(other.src.clone(), self.tgt.clone()), other]);
        let _ = field;
        HomMatrix::hstack(&[&a, &b])
    }
}

/// Coefficient coordinates for the full Hom space between two objects:
/// a fixed enumeration of `(row, col, basis morphism)` slots, used to pose
/// linear problems about unknown morphisms.
#[derive(Clone, Debug)]
pub struct HomUnknowns {
    pub src: PObject,
    pub tgt: PObject,
    pub slots: Vec<(usize, usize, BasisMor)>,
}

impl HomUnknowns {
    pub fn new(src: &PObject, tgt: &PObject) -> HomUnknowns {
        let mut slots = Vec::new();
        for (r, t) in tgt.summands.iter().enumerate() {
            for (c, s) in src.summands.iter().enumerate() {
                for b in hom_basis(*s, *t) {
                    slots.push((r, c, b));
                }
            }
        }
        HomUnknowns {
            src: src.clone(),
            tgt: tgt.clone(),
            slots,
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// The matrix with coefficient `values[k]` on slot `k`.
    pub fn matrix_from(&self, field: Field, values: &[Scalar]) -> HomMatrix {
        assert_eq!(values.len(), self.slots.len());
        let mut m = HomMatrix::zero(self.src.clone(), self.tgt.clone());
        for ((r, c, b), v) in self.slots.iter().zip(values) {
            if field.is_zero(v) {
                continue;
            }
            let mut el = m.entry(*r, *c).clone();
            el.add_term(field, b.i, v.clone());
            m.set_entry(*r, *c, el);
        }
        m
    }

    /// Projects a morphism onto the slot coordinates.
    pub fn coeffs_of(&self, field: Field, m: &HomMatrix) -> Vec<Scalar> {
        assert_eq!(m.src, self.src);
        assert_eq!(m.tgt, self.tgt);
        self.slots
            .iter()
            .map(|(r, c, b)| m.entry(*r, *c).coeff(field, b.i))
            .collect()
    }

    /// The unit matrix for one slot.
    pub fn unit(&self, field: Field, k: usize) -> HomMatrix {
        let mut values = vec![field.zero(); self.slots.len()];
        values[k] = field.one();
        self.matrix_from(field, &values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, shift: i64) -> Summand {
        Summand::new(n, shift)
    }

    #[test]
    fn hom_basis_dimensions() {
        // End(P_3) has basis x^0, x^1, x^2
        let b = hom_basis(s(3, 0), s(3, 0));
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|m| matches!(m.kind, MorKind::X)));
        assert_eq!(b.iter().map(|m| m.i).collect::<Vec<_>>(), vec![0, 1, 2]);

        // Hom(P_3, P_2[1]) has basis y^2, y^3
        let b = hom_basis(s(3, 0), s(2, 1));
        assert_eq!(b.iter().map(|m| m.i).collect::<Vec<_>>(), vec![2, 3]);
        assert!(b.iter().all(|m| matches!(m.kind, MorKind::Y)));

        // shift gap 2 kills the space
        assert!(hom_basis(s(1, 0), s(3, 2)).is_empty());
        // negative gap too
        assert!(hom_basis(s(2, 1), s(2, 0)).is_empty());
    }

    #[test]
    fn structure_constants_on_named_composites() {
        // x^1 . x^1 = x^2 and x^2 . x^1 = 0 on End(P_3)
        let x1 = BasisMor::x(1, s(3, 0), s(3, 0));
        let x2 = BasisMor::x(2, s(3, 0), s(3, 0));
        assert_eq!(compose_basis(&x1, &x1), Some(x2));
        assert_eq!(compose_basis(&x2, &x1), None);

        // y^3_{3,2} . x^1_{3,3} = y^2_{3,2}
        let y3 = BasisMor::y(3, s(3, 0), s(2, 1));
        assert_eq!(
            compose_basis(&y3, &x1),
            Some(BasisMor::y(2, s(3, 0), s(2, 1)))
        );

        // (x^1_{3,3})[1] . y^2_{2,3} = y^1_{2,3}
        let y2 = BasisMor::y(2, s(2, 0), s(3, 1));
        let sx1 = BasisMor::x(1, s(3, 1), s(3, 1));
        assert_eq!(
            compose_basis(&sx1, &y2),
            Some(BasisMor::y(1, s(2, 0), s(3, 1)))
        );

        // y . y vanishes via the zero Hom space: elements compose to zero
        let f = Field::Q;
        let ya = HomElement::from_basis(f, &BasisMor::y(1, s(1, 0), s(1, 1)), f.one());
        let yb = HomElement::from_basis(f, &BasisMor::y(1, s(1, 1), s(1, 2)), f.one());
        assert!(HomElement::compose(f, &yb, &ya).is_zero());
    }

    #[test]
    fn shift_invariance_of_composition() {
        let f = Field::fp(7).unwrap();
        for sh in [-2i64, 0, 3] {
            let x1 = HomElement::from_basis(f, &BasisMor::x(1, s(3, sh), s(3, sh)), f.one());
            let y3 = HomElement::from_basis(f, &BasisMor::y(3, s(3, sh), s(2, sh + 1)), f.one());
            let c = HomElement::compose(f, &y3, &x1);
            let expected =
                HomElement::from_basis(f, &BasisMor::y(2, s(3, sh), s(2, sh + 1)), f.one());
            assert_eq!(c, expected);
        }
    }

    #[test]
    fn matrix_composition_and_identity() {
        let f = Field::Q;
        let e = PObject::from_summands(vec![(2, 1), (2, 0)]);
        let id = HomMatrix::identity(f, &e);
        let composed = HomMatrix::compose(f, &id, &id).unwrap();
        assert_eq!(composed, id);

        let other = PObject::single(3, 0);
        assert!(HomMatrix::compose(
            f,
            &HomMatrix::zero(e.clone(), e.clone()),
            &HomMatrix::zero(other.clone(), other)
        )
        .is_err());
    }

    #[test]
    fn bilinearity_and_associativity_on_random_matrices() {
        use rand::SeedableRng;
        let f = Field::fp(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        fn random_obj(rng: &mut rand_chacha::ChaCha8Rng) -> PObject {
            use rand::Rng;
            let k = rng.gen_range(0..=3);
            PObject {
                summands: (0..k)
                    .map(|_| Summand::new(rng.gen_range(1..=4), rng.gen_range(0..=1)))
                    .collect(),
            }
        }
        for _ in 0..500 {
            let a = random_obj(&mut rng);
            let b = random_obj(&mut rng);
            let c = random_obj(&mut rng);
            let d = random_obj(&mut rng);
            let random_mor = |src: &PObject, tgt: &PObject, rng: &mut rand_chacha::ChaCha8Rng| {
                let u = HomUnknowns::new(src, tgt);
                let vals: Vec<Scalar> = (0..u.len()).map(|_| f.sample(rng)).collect();
                u.matrix_from(f, &vals)
            };
            let u = random_mor(&a, &b, &mut rng);
            let v = random_mor(&b, &c, &mut rng);
            let v2 = random_mor(&b, &c, &mut rng);
            let w = random_mor(&c, &d, &mut rng);
            // associativity
            let lhs = HomMatrix::compose(f, &w, &HomMatrix::compose(f, &v, &u).unwrap()).unwrap();
            let rhs = HomMatrix::compose(f, &HomMatrix::compose(f, &w, &v).unwrap(), &u).unwrap();
            assert_eq!(lhs, rhs);
            // bilinearity in the middle factor
            let sum = HomMatrix::compose(f, &v.add(f, &v2), &u).unwrap();
            let split = HomMatrix::compose(f, &v, &u)
                .unwrap()
                .add(f, &HomMatrix::compose(f, &v2, &u).unwrap());
            assert_eq!(sum, split);
        }
    }
}
