//! Finitely presented `K`-linear categories given by structure constants:
//! named indecomposable objects, one basis arrow per nonzero Hom space (plus
//! identities), and a composition table. The shift acts by relabeling, so an
//! arrow of degree `d` maps `X[n] -> X'[n+d]` for every `n`.
//!
//! The module houses the six-object category generated by a good octahedron,
//! the two three-object quiver fragments used for the retraction check,
//! Krull-Schmidt decomposition of morphisms between formal sums, triangle
//! classification, and functors out of these presentations.

mod builtin;
mod decompose;
mod functor;
mod smor;
mod striangle;

pub use builtin::{build_category, BuiltinCategory, SArrows};
pub use decompose::{
    canonical_from_pieces, deccrit_split, decompose_morphism, direct_sum_smor,
    indecomposable_by_idempotents, DeccritWitness, Decomposition, SPiece,
};
pub use functor::{
    beilinson_functors, check_oct_functor, check_pres_functor, compose_pres_functors,
    functor_from_octahedron, functors_agree_on, identity_functor, pres_functors_equal, OctFunctor,
    PresFunctor,
};
pub use smor::{SMorUnknowns, SMorphism, SumObject};
pub use striangle::{is_distinguished_s, STriangle, STriangleReport};

use std::collections::BTreeMap;

use crate::exactalg::{Field, Scalar};
use crate::{Error, Result};

/// A basis arrow of the presentation: `src --name--> tgt[degree]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
}

/// A basis morphism between shifted objects: an identity or an arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SBasis {
    Id(usize),
    Arrow(usize),
}

/// A finitely presented category with associativity-validated structure
/// constants.
#[derive(Clone, Debug)]
pub struct PresCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    comp: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl PresCategory {
    /// Builds and validates a presentation. The composition table maps
    /// `(second, first)` arrow pairs to the expansion of the composite;
    /// absent entries are zero.
    pub fn new(
        field: Field,
        name: &str,
        objects: Vec<String>,
        arrows: Vec<ArrowDecl>,
        comp: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    ) -> Result<PresCategory> {
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(Error::Build(format!("arrow {} out of range", a.name)));
            }
        }
        for (&(g, f), expansion) in &comp {
            let (af, ag) = (&arrows[f], &arrows[g]);
            if af.tgt != ag.src {
                return Err(Error::Build(format!(
                    "table entry ({}, {}) is not composable",
                    ag.name, af.name
                )));
            }
            for (x, _) in expansion {
                let ax = &arrows[*x];
                if ax.src != af.src || ax.tgt != ag.tgt || ax.degree != af.degree + ag.degree {
                    return Err(Error::Build(format!(
                        "composite of ({}, {}) expands through incompatible arrow {}",
                        ag.name, af.name, ax.name
                    )));
                }
            }
        }
        let cat = PresCategory {
            name: name.into(),
            objects,
            arrows,
            comp,
        };
        cat.check_associativity(field)?;
        Ok(cat)
    }

    /// Exhaustive associativity check over all composable basis triples.
    fn check_associativity(&self, field: Field) -> Result<()> {
        for (f, af) in self.arrows.iter().enumerate() {
            for (g, ag) in self.arrows.iter().enumerate() {
                if ag.src != af.tgt {
                    continue;
                }
                for (h, ah) in self.arrows.iter().enumerate() {
                    if ah.src != ag.tgt {
                        continue;
                    }
                    // (h.g).f vs h.(g.f)
                    let hg = self.compose_arrows(h, g);
                    let mut lhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (x, c) in &hg {
                        for (y, c2) in self.compose_arrows(*x, f) {
                            let e = lhs.entry(y).or_insert_with(|| field.zero());
                            *e = field.add(e, &field.mul(c, &c2));
                        }
                    }
                    let gf = self.compose_arrows(g, f);
                    let mut rhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (x, c) in &gf {
                        for (y, c2) in self.compose_arrows(h, *x) {
                            let e = rhs.entry(y).or_insert_with(|| field.zero());
                            *e = field.add(e, &field.mul(c, &c2));
                        }
                    }
                    lhs.retain(|_, v| !field.is_zero(v));
                    rhs.retain(|_, v| !field.is_zero(v));
                    if lhs != rhs {
                        return Err(Error::Build(format!(
                            "associativity fails on ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The expansion of `second . first`, empty when zero.
    pub fn compose_arrows(&self, second: usize, first: usize) -> Vec<(usize, Scalar)> {
        self.comp.get(&(second, first)).cloned().unwrap_or_default()
    }

    /// Factorizations of `arrow`: all `(second, first, coeff)` with
    /// `second . first` containing `coeff * arrow`.
    pub fn factorizations(&self, arrow: usize) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (&(g, f), expansion) in &self.comp {
            for (x, c) in expansion {
                if *x == arrow {
                    out.push((g, f, c.clone()));
                }
            }
        }
        out
    }

    pub fn arrow_index(&self, name: &str) -> usize {
        self.try_arrow_index(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn object_index(&self, name: &str) -> usize {
        self.try_object_index(name)
            .unwrap_or_else(|e| panic!("{e}"))
    }

    /// Checked lookups for untrusted input.
    pub fn try_arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown arrow {name:?}")))
    }

    pub fn try_object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::Parse(format!("unknown object {name:?}")))
    }

    /// Basis of `Hom(src[s], tgt[s + degree])`.
    pub fn hom_basis(&self, src: usize, tgt: usize, degree: i64) -> Vec<SBasis> {
        let mut out = Vec::new();
        if src == tgt && degree == 0 {
            out.push(SBasis::Id(src));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src == src && a.tgt == tgt && a.degree == degree {
                out.push(SBasis::Arrow(i));
            }
        }
        out
    }

    /// Composes expansions of basis morphisms (identities act as units).
    pub fn compose_basis(
        &self,
        field: Field,
        second: SBasis,
        first: SBasis,
    ) -> Vec<(SBasis, Scalar)> {
        match (second, first) {
            (SBasis::Id(_), x) => vec![(x, field.one())],
            (x, SBasis::Id(_)) => vec![(x, field.one())],
            (SBasis::Arrow(g), SBasis::Arrow(f)) => self
                .compose_arrows(g, f)
                .into_iter()
                .map(|(x, c)| (SBasis::Arrow(x), c))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inconsistent_tables_are_rejected() {
        let f = Field::Q;
        let objects = vec!["X".into(), "Y".into()];
        let arrows = vec![
            ArrowDecl {
                name: "u".into(),
                src: 0,
                tgt: 1,
                degree: 0,
            },
            ArrowDecl {
                name: "v".into(),
                src: 1,
                tgt: 0,
                degree: 0,
            },
        ];
        // v.u expands through an arrow with the wrong endpoints
        let mut comp = BTreeMap::new();
        comp.insert((1usize, 0usize), vec![(0usize, f.one())]);
        assert!(matches!(
            PresCategory::new(f, "bad", objects, arrows, comp),
            Err(Error::Build(_))
        ));
    }
}
