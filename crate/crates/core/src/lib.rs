//! Exact computation of deleted-product embedding obstructions for finite
//! simplicial complexes, and derived-limit (lim/lim¹) verdicts for inverse
//! sequences of finitely generated abelian groups. Every verdict ships with
//! a mechanically re-checkable certificate.

pub mod abelian;
pub mod error;
pub mod jsonutil;
pub mod matrix;
pub mod mod2;
pub mod chain;
pub mod cohomology;
pub mod constructions;
pub mod simplicial;
pub mod snf;
pub mod solve;

pub use abelian::{cokernel, FgAbGroup, GroupHom, Subquotient};
pub use matrix::IntMatrix;
pub use simplicial::{SimplicialComplex, SimplicialMap};
pub use snf::{snf, SmithDecomposition};
pub use solve::{solve_linear, LinearVerdict};
