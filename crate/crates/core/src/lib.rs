//! Polyhedral products: chain-level models, splittings and ring presentations.

pub mod catalog;
pub mod chain;
pub mod cli;
pub mod complex;
pub mod error;
pub mod format;
pub mod matrix;
pub mod pair;
pub mod polyprod;
pub mod series;
pub mod sr;
pub mod toric;

pub use error::{Error, Result};

pub use chain::{homology, ChainComplex, DegreeHomology, HomologySummary};
pub use complex::{IndexSubset, SimplicialComplex};
pub use pair::{pair_cone, pair_disk_sphere, pair_space_basepoint, CellModel, PairModel};
pub use polyprod::Context;
pub use series::{Poly, RationalSeries};
