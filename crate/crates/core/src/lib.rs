//! Finite-field linear algebra and computational checks for eight-dimensional
//! orthogonal groups: explicit generator pairs, forms, Steinberg words,
//! triality, and a registry of verifiable identities.

pub mod arith;
pub mod gf;
pub mod ring;
pub mod linalg;
pub mod expr;
pub mod forms;
pub mod generators;
pub mod steinberg;
pub mod verify;
pub mod cli;
