//! Approximate vertex enumeration for H-polytopes.
//!
//! Given `P = {x | Ax ≤ 1}` with the origin in its interior and a tolerance
//! `ε > 0`, the algorithms here compute a finite point set `V` with
//! `P ⊆ conv V ⊆ (1+ε)P`. Two methods are provided: an incidence-graph
//! double description variant ([`addm`]) and a plane-graph method ([`ga`])
//! for dimensions two and three. [`verify`] holds the exact oracle and the
//! runtime checks.

pub mod numerics;
pub mod hrep;
pub mod exec;
pub mod verify;
pub mod error;
pub mod partition;
pub mod addm;
pub mod dcel;
pub mod ga;
pub mod cover;
pub mod generators;
pub mod run;
pub mod suite;
pub mod io;
