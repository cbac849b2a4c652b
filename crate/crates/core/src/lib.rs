//! Exact combinatorics of line arrangements: one-line extensions of
//! (n_3) configurations up to isomorphism, and the algebraic study of
//! their realization spaces over the rationals.

pub mod arrangement;
pub mod catalog;
pub mod extend;
pub mod moduli;
pub mod poly;
pub mod symmetry;
pub mod error;

pub use arrangement::{Arrangement, DoublePoint, ExtensionLine};
pub use catalog::{Catalog, CatalogEntry};
pub use error::{Error, Result};
