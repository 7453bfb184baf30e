//! Rank-metric codes over finite field towers: Gabidulin codes, higher-order
//! MRD properties, kernel patterns and the supporting linear algebra.

pub mod error;
pub mod extmat;
pub mod ffield;
pub mod fqspace;
pub mod gabidulin;
pub mod highermrd;
pub mod json;
pub mod limits;
pub mod partitions;
pub mod patterns;
pub mod qlinpoly;

pub use error::{Error, Result};
pub use extmat::ExtMatrix;
pub use ffield::{BaseField, Elt, FieldTower, Fq};
pub use fqspace::{FqMatrix, FqSubspace};
pub use gabidulin::{GabidulinCode, LinearCode};
pub use qlinpoly::{Embedding, QLinPoly};
