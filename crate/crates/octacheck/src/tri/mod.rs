//! Triangles and octahedra in the presented homotopy category:
//! distinguishedness certification against mapping cones, octahedron
//! validation and goodness, epsilon-deformation, and the sound
//! (non-)isomorphism search between octahedra.
//!
//! Soundness policy: `CertifiedYes`/`Found` always carry a verified witness;
//! `CertifiedNo`/`NoneCertified` require an infeasible system, an exhausted
//! finite search space, or a structural certificate; anything else is
//! `Inconclusive`.

mod distinguished;
mod iso_search;
mod octahedron;

pub use distinguished::{basis_triangle, is_distinguished, DistinguishedReport, Verdict};
pub use iso_search::{iso_search, IsoSearchReport, IsoVerdict};
pub use octahedron::{
    builtin_deformation, builtin_octahedra, epsilon_deform, goodness_by_uniqueness,
    validate_octahedron, Octahedron, OctahedronReport, UniquenessReport,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{AffineSolutionSpace, Field, Scalar};
use crate::homcat::{HomMatrix, PObject};
use crate::{Error, Result};

/// Knobs for searching affine solution spaces for invertible elements.
#[derive(Clone, Copy, Debug)]
pub struct SearchPolicy {
    /// Exhaustive enumeration is used when `p^dim` does not exceed this.
    pub enumeration_cap: u64,
    /// Number of seeded random samples when enumeration is unavailable.
    pub samples: u32,
    pub seed: u64,
}

impl Default for SearchPolicy {
    fn default() -> SearchPolicy {
        SearchPolicy {
            enumeration_cap: 1_000_000,
            samples: 64,
            seed: 0,
        }
    }
}

impl SearchPolicy {
    pub fn with_seed(seed: u64) -> SearchPolicy {
        SearchPolicy {
            seed,
            ..SearchPolicy::default()
        }
    }
}

/// Result of scanning a solution space for an accepted point.
pub(crate) enum SearchOutcome {
    /// A point satisfying the predicate, with proof obligations already met.
    Found(Vec<Scalar>),
    /// The whole space was inspected and no point is accepted.
    ExhaustedNone,
    /// Sampling did not find a point; nothing is certified.
    Unknown,
}

/// Scans `space` for a point accepted by `accept`: deterministic candidates
/// first (they usually carry a witness cheaply), then exhaustively over a
/// small finite space, finally seeded samples. Only a complete enumeration
/// can produce `ExhaustedNone`.
pub(crate) fn search_space(
    field: Field,
    space: &AffineSolutionSpace,
    policy: &SearchPolicy,
    mut accept: impl FnMut(&[Scalar]) -> bool,
) -> SearchOutcome {
    if space.is_infeasible() {
        return SearchOutcome::ExhaustedNone;
    }
    let dim = space.dim();
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    candidates.push(vec![field.zero(); dim]);
    for i in 0..dim {
        let mut c = vec![field.zero(); dim];
        c[i] = field.one();
        candidates.push(c);
    }
    candidates.push(vec![field.one(); dim]);
    for coeffs in candidates {
        let p = space.point(field, &coeffs).unwrap();
        if accept(&p) {
            return SearchOutcome::Found(p);
        }
    }

    match space.find_point(field, policy.enumeration_cap, &mut accept) {
        Some(Some(p)) => return SearchOutcome::Found(p),
        Some(None) => return SearchOutcome::ExhaustedNone,
        None => {}
    }

    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed ^ 0x6f63_7461);
    for _ in 0..policy.samples {
        let coeffs: Vec<Scalar> = (0..dim).map(|_| field.sample(&mut rng)).collect();
        let p = space.point(field, &coeffs).unwrap();
        if accept(&p) {
            return SearchOutcome::Found(p);
        }
    }
    SearchOutcome::Unknown
}

/// A triangle `X -> Y -> Z -> X[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub x: PObject,
    pub y: PObject,
    pub z: PObject,
    pub f: HomMatrix,
    pub g: HomMatrix,
    pub h: HomMatrix,
}

impl Triangle {
    pub fn new(f: HomMatrix, g: HomMatrix, h: HomMatrix) -> Result<Triangle> {
        let x = f.src.clone();
        let y = f.tgt.clone();
        let z = g.tgt.clone();
        if g.src != y {
            return Err(Error::Domain("triangle: g does not start at Y".into()));
        }
        if h.src != z {
            return Err(Error::Domain("triangle: h does not start at Z".into()));
        }
        if h.tgt != x.shifted(1) {
            return Err(Error::Domain("triangle: h does not end at X[1]".into()));
        }
        Ok(Triangle { x, y, z, f, g, h })
    }

    /// The rotation `(g, h, -f[1])`.
    pub fn rotate(&self, field: Field) -> Triangle {
        Triangle::new(self.g.clone(), self.h.clone(), self.f.shifted(1).neg(field))
            .expect("rotation endpoints are compatible")
    }
}
