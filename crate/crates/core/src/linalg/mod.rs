//! Exact linear algebra over finite fields and over polynomial rings.

pub mod matrix;
pub mod mpoly;
pub mod order;
pub mod poly;
pub mod subspace;
pub mod sym;

pub use matrix::{Matrix, MatrixError};
pub use mpoly::{MPoly, MPolyRing};
pub use order::DEFAULT_ORDER_CAP;
pub use poly::Poly;
pub use subspace::Subspace;
pub use sym::{Sym, SymRing};
