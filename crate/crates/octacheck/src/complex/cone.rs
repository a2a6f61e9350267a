//! Mapping cones with canonical inclusion and projection.

use std::collections::BTreeMap;

use super::{validate_chain_map, ChainMap, FreeComplex};
use crate::exactalg::{Field, PolyMatrix};
use crate::{Error, Result};

/// The mapping cone of `f: X -> Y`.
///
/// `cone^k = Y^k (+) X^{k+1}` with differential `[[d_Y, f], [0, -d_X]]`;
/// `incl: Y -> cone` hits the first block, `proj: cone -> X[1]` the second.
pub fn cone_of(field: Field, f: &ChainMap) -> Result<(FreeComplex, ChainMap, ChainMap)> {
    if !validate_chain_map(field, f) {
        return Err(Error::Validation(
            "cone of a non-chain-map is undefined".into(),
        ));
    }
    let x = &f.source;
    let y = &f.target;

    let mut ranks = BTreeMap::new();
    let degs: std::collections::BTreeSet<i64> =
        y.degrees().chain(x.degrees().map(|k| k - 1)).collect();
    for &k in &degs {
        let r = y.rank(k) + x.rank(k + 1);
        if r > 0 {
            ranks.insert(k, r);
        }
    }

    let mut diffs = BTreeMap::new();
    for &k in &degs {
        let rows = y.rank(k + 1) + x.rank(k + 2);
        let cols = y.rank(k) + x.rank(k + 1);
        if rows == 0 || cols == 0 {
            continue;
        }
        let dy = y.diff(field, k);
        let fx = {
            // component of f one degree up, shaped Y^{k+1} x X^{k+1}
            let m = f.comp(k + 1);
            debug_assert_eq!((m.rows, m.cols), (y.rank(k + 1), x.rank(k + 1)));
            m
        };
        let dx = x.diff(field, k + 1).neg(field);
        let m = PolyMatrix::block2x2(field, &dy, &fx, &PolyMatrix::zero(dx.rows, dy.cols), &dx);
        if !m.is_zero() {
            diffs.insert(k, m);
        }
    }
    let cone = FreeComplex::new(field, ranks, diffs)?;

    let mut incl_comps = BTreeMap::new();
    for k in y.degrees() {
        let mut m = PolyMatrix::zero(cone.rank(k), y.rank(k));
        for i in 0..y.rank(k) {
            m.set(i, i, crate::exactalg::Poly::one(field));
        }
        incl_comps.insert(k, m);
    }
    let incl = ChainMap::new(y.clone(), cone.clone(), incl_comps)?;

    let shifted = x.shift(field, 1);
    let mut proj_comps = BTreeMap::new();
    for k in shifted.degrees() {
        let mut m = PolyMatrix::zero(shifted.rank(k), cone.rank(k));
        let offset = y.rank(k);
        for i in 0..shifted.rank(k) {
            m.set(i, offset + i, crate::exactalg::Poly::one(field));
        }
        proj_comps.insert(k, m);
    }
    let proj = ChainMap::new(cone.clone(), shifted, proj_comps)?;

    debug_assert!(validate_chain_map(field, &incl));
    debug_assert!(validate_chain_map(field, &proj));
    Ok((cone, incl, proj))
}
