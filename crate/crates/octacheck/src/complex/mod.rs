//! Bounded complexes of finite-rank free `K[x]`-modules.
//!
//! Matrices act on column vectors, so the differential `d_k: C^k -> C^{k+1}`
//! is stored as a `rank(C^{k+1}) x rank(C^k)` polynomial matrix. The shift
//! convention is `C[1]^k = C^{k+1}` with every differential negated; chain
//! map components do not acquire signs under shift.

mod cone;
mod homotopy;
mod normal_form;
mod pieces;

pub use cone::cone_of;
pub use homotopy::{apply_homotopy, default_homotopy_bound, null_homotopy, Homotopy};
pub use normal_form::{normal_form, NormalForm};
pub use pieces::{piece_layout, realize_pieces, Piece, Slot};

use std::collections::BTreeMap;

use crate::exactalg::{Field, Poly, PolyMatrix};
use crate::{Error, Result};

/// A bounded complex of free modules with polynomial differentials.
///
/// Canonical form: only nonzero ranks and nonzero differentials are stored,
/// so structural equality is equality of complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, PolyMatrix>,
}

impl FreeComplex {
    /// Builds a complex, validating shapes and `d_{k+1} . d_k = 0`.
    pub fn new(
        field: Field,
        ranks: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, PolyMatrix>,
    ) -> Result<FreeComplex> {
        let ranks: BTreeMap<i64, usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let mut kept = BTreeMap::new();
        for (k, m) in diffs {
            let rows = ranks.get(&(k + 1)).copied().unwrap_or(0);
            let cols = ranks.get(&k).copied().unwrap_or(0);
            if m.rows != rows || m.cols != cols {
                return Err(Error::Validation(format!(
                    "differential at degree {k} has shape {}x{}, expected {rows}x{cols}",
                    m.rows, m.cols
                )));
            }
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        let c = FreeComplex { ranks, diffs: kept };
        for (&k, d) in &c.diffs {
            let next = c.diff(field, k + 1);
            if !next.mul(field, d).is_zero() {
                return Err(Error::Validation(format!(
                    "d.d != 0 between degrees {k} and {}",
                    k + 2
                )));
            }
        }
        Ok(c)
    }

    pub fn zero_object() -> FreeComplex {
        FreeComplex {
            ranks: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn rank(&self, k: i64) -> usize {
        self.ranks.get(&k).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    pub fn stored_diffs(&self) -> &BTreeMap<i64, PolyMatrix> {
        &self.diffs
    }

    /// The differential at degree `k`, materialized with the right shape.
    pub fn diff(&self, _field: Field, k: i64) -> PolyMatrix {
        match self.diffs.get(&k) {
            Some(m) => m.clone(),
            None => PolyMatrix::zero(self.rank(k + 1), self.rank(k)),
        }
    }

    pub fn is_zero_object(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Degrees with nonzero rank, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.ranks.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.ranks.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.ranks.keys().last().copied()
    }

    /// `C[s]`: degrees drop by `s`, differentials pick up `(-1)^s`.
    pub fn shift(&self, field: Field, s: i64) -> FreeComplex {
        let ranks = self.ranks.iter().map(|(&k, &r)| (k - s, r)).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&k, d)| {
                let d = if s.rem_euclid(2) == 1 {
                    d.neg(field)
                } else {
                    d.clone()
                };
                (k - s, d)
            })
            .collect();
        FreeComplex { ranks, diffs }
    }

    /// Direct sum, `self` coordinates first in every degree.
    pub fn direct_sum(&self, field: Field, other: &FreeComplex) -> FreeComplex {
        let mut ranks = BTreeMap::new();
        for k in self.ranks.keys().chain(other.ranks.keys()) {
            ranks.insert(*k, self.rank(*k) + other.rank(*k));
        }
        let mut diffs = BTreeMap::new();
        for &k in ranks.keys() {
            let rows = self.rank(k + 1) + other.rank(k + 1);
            let cols = self.rank(k) + other.rank(k);
            if rows == 0 || cols == 0 {
                continue;
            }
            let a = self.diff(field, k);
            let b = other.diff(field, k);
            let m = PolyMatrix::block2x2(
                field,
                &a,
                &PolyMatrix::zero(a.rows, b.cols),
                &PolyMatrix::zero(b.rows, a.cols),
                &b,
            );
            if !m.is_zero() {
                diffs.insert(k, m);
            }
        }
        FreeComplex { ranks, diffs }
    }

    pub fn max_diff_degree(&self) -> usize {
        self.diffs
            .values()
            .filter_map(PolyMatrix::max_degree)
            .max()
            .unwrap_or(0)
    }
}

/// The two-term complex `P_n[shift]`, `0 -> R --(-1)^shift x^n--> R -> 0`
/// in degrees `-1-shift` and `-shift`.
pub fn make_p(field: Field, n: usize, shift: i64) -> FreeComplex {
    let sign = if shift.rem_euclid(2) == 1 {
        field.from_i64(-1)
    } else {
        field.one()
    };
    let mut ranks = BTreeMap::new();
    ranks.insert(-1 - shift, 1);
    ranks.insert(-shift, 1);
    let mut diffs = BTreeMap::new();
    diffs.insert(
        -1 - shift,
        PolyMatrix::from_rows(vec![vec![Poly::monomial(field, sign, n)]]),
    );
    FreeComplex::new(field, ranks, diffs).expect("P_n is a complex")
}

/// A degreewise map of complexes. Only nonzero components are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    comps: BTreeMap<i64, PolyMatrix>,
}

impl ChainMap {
    /// Builds a map, validating component shapes (not the chain condition;
    /// see [`validate_chain_map`]).
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        comps: BTreeMap<i64, PolyMatrix>,
    ) -> Result<ChainMap> {
        let mut kept = BTreeMap::new();
        for (k, m) in comps {
            let rows = target.rank(k);
            let cols = source.rank(k);
            if m.rows != rows || m.cols != cols {
                return Err(Error::Validation(format!(
                    "component at degree {k} has shape {}x{}, expected {rows}x{cols}",
                    m.rows, m.cols
                )));
            }
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        Ok(ChainMap {
            source,
            target,
            comps: kept,
        })
    }

    pub fn zero(source: FreeComplex, target: FreeComplex) -> ChainMap {
        ChainMap {
            source,
            target,
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(field: Field, c: &FreeComplex) -> ChainMap {
        let comps = c
            .ranks
            .iter()
            .map(|(&k, &r)| (k, PolyMatrix::identity(field, r)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            comps,
        }
    }

    pub fn comp(&self, k: i64) -> PolyMatrix {
        match self.comps.get(&k) {
            Some(m) => m.clone(),
            None => PolyMatrix::zero(self.target.rank(k), self.source.rank(k)),
        }
    }

    pub fn stored_comps(&self) -> &BTreeMap<i64, PolyMatrix> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn compose(field: Field, g: &ChainMap, f: &ChainMap) -> ChainMap {
        assert_eq!(g.source, f.target, "chain map composition mismatch");
        let mut comps = BTreeMap::new();
        for k in f.source.degrees() {
            if g.target.rank(k) == 0 {
                continue;
            }
            let m = g.comp(k).mul(field, &f.comp(k));
            if !m.is_zero() {
                comps.insert(k, m);
            }
        }
        ChainMap {
            source: f.source.clone(),
            target: g.target.clone(),
            comps,
        }
    }

    pub fn add(&self, field: Field, other: &ChainMap) -> ChainMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let mut comps = BTreeMap::new();
        for k in self.source.degrees() {
            if self.target.rank(k) == 0 {
                continue;
            }
            let m = self.comp(k).add(field, &other.comp(k));
            if !m.is_zero() {
                comps.insert(k, m);
            }
        }
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn sub(&self, field: Field, other: &ChainMap) -> ChainMap {
        self.add(field, &other.neg(field))
    }

    pub fn neg(&self, field: Field) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(&k, m)| (k, m.neg(field))).collect(),
        }
    }

    /// `f[s]`: components are reindexed, no signs.
    pub fn shift(&self, field: Field, s: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(field, s),
            target: self.target.shift(field, s),
            comps: self
                .comps
                .iter()
                .map(|(&k, m)| (k - s, m.clone()))
                .collect(),
        }
    }

    pub fn is_identity(&self, field: Field) -> bool {
        self.source == self.target
            && self
                .source
                .degrees()
                .all(|k| self.comp(k).is_identity(field))
    }

    pub fn max_comp_degree(&self) -> usize {
        self.comps
            .values()
            .filter_map(PolyMatrix::max_degree)
            .max()
            .unwrap_or(0)
    }
}

/// True iff the commutation squares `f_{k+1} d^src_k = d^tgt_k f_k` hold
/// exactly in every degree.
pub fn validate_chain_map(field: Field, f: &ChainMap) -> bool {
    let degs: std::collections::BTreeSet<i64> =
        f.source.degrees().chain(f.target.degrees()).collect();
    for &k in &degs {
        let lhs = f.comp(k + 1).mul(field, &f.source.diff(field, k));
        let rhs = f.target.diff(field, k).mul(field, &f.comp(k));
        if lhs != rhs {
            return false;
        }
    }
    true
}
