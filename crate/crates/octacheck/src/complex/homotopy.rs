//! Null-homotopy search by exact linear solving.

use std::collections::BTreeMap;

use super::{ChainMap, FreeComplex};
use crate::exactalg::{Field, LinearSystem, Poly, PolyMatrix};

/// A degree `-1` map `h_k: C^k -> D^{k-1}` witnessing `f = d h + h d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub comps: BTreeMap<i64, PolyMatrix>,
}

impl Homotopy {
    pub fn comp(&self, k: i64) -> PolyMatrix {
        match self.comps.get(&k) {
            Some(m) => m.clone(),
            None => PolyMatrix::zero(self.target.rank(k - 1), self.source.rank(k)),
        }
    }
}

/// `d_tgt . h + h . d_src` as a chain map from `h.source` to `h.target`.
pub fn apply_homotopy(field: Field, h: &Homotopy) -> ChainMap {
    let mut comps = BTreeMap::new();
    let degs: std::collections::BTreeSet<i64> =
        h.source.degrees().chain(h.target.degrees()).collect();
    for &k in &degs {
        if h.source.rank(k) == 0 || h.target.rank(k) == 0 {
            continue;
        }
        let dh = h.target.diff(field, k - 1).mul(field, &h.comp(k));
        let hd = h.comp(k + 1).mul(field, &h.source.diff(field, k));
        let m = dh.add(field, &hd);
        if !m.is_zero() {
            comps.insert(k, m);
        }
    }
    ChainMap::new(h.source.clone(), h.target.clone(), comps).expect("shapes agree")
}

/// The guaranteed-sufficient entry-degree bound for maps between direct sums
/// of `P_n`'s: `max(6, D + 3)` where `D` is the largest entry degree across
/// the map and both differentials.
pub fn default_homotopy_bound(f: &ChainMap) -> usize {
    let d = f
        .max_comp_degree()
        .max(f.source.max_diff_degree())
        .max(f.target.max_diff_degree());
    (d + 3).max(6)
}

/// Searches for `h` with `f = d h + h d` exactly, with every entry of `h`
/// of degree at most `degree_bound`. Sound (any returned witness verifies)
/// and complete within the bound (the underlying linear system is solved
/// exactly).
pub fn null_homotopy(field: Field, f: &ChainMap, degree_bound: usize) -> Option<Homotopy> {
    let src = &f.source;
    let tgt = &f.target;

    // unknown registry: (degree k, row, col, coefficient exponent)
    let mut index: BTreeMap<(i64, usize, usize, usize), usize> = BTreeMap::new();
    for k in src.degrees() {
        let rows = tgt.rank(k - 1);
        let cols = src.rank(k);
        if rows == 0 || cols == 0 {
            continue;
        }
        for r in 0..rows {
            for c in 0..cols {
                for e in 0..=degree_bound {
                    let next = index.len();
                    index.insert((k, r, c, e), next);
                }
            }
        }
    }

    let max_deg =
        degree_bound + src.max_diff_degree().max(tgt.max_diff_degree()) + f.max_comp_degree() + 1;
    let mut sys = LinearSystem::new(index.len());
    let degs: std::collections::BTreeSet<i64> = src.degrees().chain(tgt.degrees()).collect();
    for &k in &degs {
        let rows = tgt.rank(k);
        let cols = src.rank(k);
        if rows == 0 || cols == 0 {
            continue;
        }
        let fk = f.comp(k);
        let d_tgt = tgt.diff(field, k - 1); // D^{k-1} -> D^k
        let d_src = src.diff(field, k); // C^k -> C^{k+1}
        for r in 0..rows {
            for c in 0..cols {
                // coefficient of x^e in (d h)_{r,c} + (h d)_{r,c} = f_{r,c}
                for e in 0..=max_deg {
                    let mut lhs: Vec<(usize, crate::exactalg::Scalar)> = Vec::new();
                    // (d_tgt . h_k)_{r,c} = sum_m d_tgt[r,m] h_k[m,c]
                    for m in 0..tgt.rank(k - 1) {
                        let dpoly = d_tgt.get(r, m);
                        for (de, dc) in dpoly.coeffs().iter().enumerate() {
                            if field.is_zero(dc) || de > e {
                                continue;
                            }
                            let he = e - de;
                            if he > degree_bound {
                                continue;
                            }
                            if let Some(&u) = index.get(&(k, m, c, he)) {
                                lhs.push((u, dc.clone()));
                            }
                        }
                    }
                    // (h_{k+1} . d_src)_{r,c} = sum_m h_{k+1}[r,m] d_src[m,c]
                    for m in 0..src.rank(k + 1) {
                        let dpoly = d_src.get(m, c);
                        for (de, dc) in dpoly.coeffs().iter().enumerate() {
                            if field.is_zero(dc) || de > e {
                                continue;
                            }
                            let he = e - de;
                            if he > degree_bound {
                                continue;
                            }
                            if let Some(&u) = index.get(&(k + 1, r, m, he)) {
                                lhs.push((u, dc.clone()));
                            }
                        }
                    }
                    let rhs = fk.get(r, c).coeff(field, e);
                    if lhs.is_empty() && field.is_zero(&rhs) {
                        continue;
                    }
                    sys.add_equation(lhs, rhs);
                }
            }
        }
    }

    let sol = sys.solve_affine(field);
    let values = sol.particular?;

    let mut comps: BTreeMap<i64, PolyMatrix> = BTreeMap::new();
    for ((k, r, c, e), u) in &index {
        let v = &values[*u];
        if field.is_zero(v) {
            continue;
        }
        let m = comps
            .entry(*k)
            .or_insert_with(|| PolyMatrix::zero(tgt.rank(k - 1), src.rank(*k)));
        let p = m
            .get(*r, *c)
            .add(field, &Poly::monomial(field, v.clone(), *e));
        m.set(*r, *c, p);
    }
    let h = Homotopy {
        source: src.clone(),
        target: tgt.clone(),
        comps,
    };
    // soundness: only return verified witnesses
    let witnessed = apply_homotopy(field, &h);
    assert_eq!(&witnessed, f, "homotopy witness failed");
    Some(h)
}
