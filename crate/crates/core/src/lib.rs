//! Landau–Ginzburg A- and B-model state spaces and Frobenius algebras for
//! invertible potentials, computed with exact rational arithmetic.

pub mod error;
pub mod io;
pub mod potential;
pub mod rational;
pub mod symmetry;

pub use error::{Error, Result};
pub mod groebner;
pub mod milnor;
pub mod poly;
pub mod state_spaces;
pub mod b_ring;
pub mod a_ring;
pub mod strange_duality;
pub mod corpus;
pub mod verify;
pub mod cli;
