//! Simple polytopes carrying characteristic maps over `Z_2^n`.
//!
//! The pipeline: build a starting polytope ([`generators`]), decorate its
//! facets with vectors ([`charmap`]), find the faces where the vectors are
//! dependent, truncate them away ([`resolution`]) and certify the chromatic
//! number of the result ([`chromatic`]).

pub mod charmap;
pub mod chromatic;
pub mod error;
pub mod generators;
pub mod gf2;
pub mod io;
pub mod polytope;
pub mod reproduce;
pub mod resolution;

pub use charmap::{BadFace, CharMap, Mode, Preset};
pub use chromatic::{ChromaticCertificate, Graph, Status};
pub use error::{Error, Result};
pub use gf2::{BitVector, Parity};
pub use polytope::{Diagnostic, FaceSet, Polytope};
pub use resolution::{ResolutionReport, ResolutionStep, Termination};
