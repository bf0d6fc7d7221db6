//! Finite additive quantales with multiplication, their modules, nuclei
//! and consequence relations, and the projectivity machinery connecting
//! translations between consequence relations to module isomorphisms.
//!
//! Everything is computed on finite carriers or on bounded fragments of the
//! finitely generated free constructions. Law scans run through [`par`],
//! which uses rayon when the `parallel` feature is on.

pub mod aqm;
pub mod downset;
pub mod equivlogic;
pub mod error;
pub mod fixtures;
pub mod laws;
mod memo;
pub mod modact;
pub mod multiupset;
pub mod nucleus;
pub mod order;
pub mod par;
pub mod projective;
pub mod quantale;
pub mod search;

pub use error::{Error, Result};
