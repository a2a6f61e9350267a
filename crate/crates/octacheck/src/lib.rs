//! # octacheck
//!
//! An exact computer-algebra engine for the bounded homotopy category
//! `K^b(proj K[x])` restricted to torsion two-term complexes
//! `P_n = (R --x^n--> R)`, together with the finitely presented
//! structure-constant category `S` generated by a good octahedron.
//!
//! The crate mechanically certifies, over `Q` or any prime field `F_p`:
//!
//! * Hom-space bases `x^i`, `y^i` between shifted `P_n`'s and their
//!   structure-constant composition, cross-checked against chain-level
//!   realizations ([`homcat`]);
//! * distinguishedness of triangles by explicit comparison with mapping
//!   cones brought to normal form over the PID `K[x]` ([`tri`], [`complex`]);
//! * validity and goodness of octahedra, epsilon-deformations, and a sound
//!   search for (non-)isomorphisms between octahedra ([`tri`]);
//! * the category `S` presented by structure constants, Krull-Schmidt
//!   decomposition of its morphisms, triangle classification, and the
//!   functor defined by a good octahedron ([`scat`]).
//!
//! Every verdict is proof-grade: `CertifiedYes`/`Found` always carry a
//! verified witness, `CertifiedNo`/`NoneCertified` require infeasibility or
//! an exhausted search space, and anything short of that is reported as
//! `Inconclusive`.
//!
//! The `examples/` directory contains one runnable example per major
//! capability; the `octacheck` binary exposes the same functionality as a
//! small subcommand CLI (see the crate README).

pub mod exactalg;

pub mod complex;

pub mod homcat;

pub mod tri;

pub mod scat;

pub mod json;

pub mod report;

pub mod pipeline;

use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Inputs outside an operation's domain (mismatched objects, bad indices).
    #[error("domain error: {0}")]
    Domain(String),
    /// Structural validation failure (non-chain-map, d^2 != 0, shape mismatch).
    #[error("validation error: {0}")]
    Validation(String),
    /// A named precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Inconsistent structure-constant data while building a category.
    #[error("build error: {0}")]
    Build(String),
    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
