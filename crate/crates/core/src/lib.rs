//! Exact computations with Morita rings over finite-dimensional algebras.
//!
//! Conventions used throughout:
//! - module elements are row vectors and an algebra element `l` acts by a
//!   matrix `A_l` on the right, `l.x = x A_l`, so `A_{lm} = A_m A_l`;
//! - a module map is a matrix `H` with `x -> x H`; composition is written in
//!   diagrammatic order and is the matrix product in that order;
//! - relation words in quiver presentations are read left to right, while
//!   the multiplication of the path algebra is chosen so that left modules
//!   are ordinary quiver representations.

pub mod acceptance;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod fdalg;
pub mod fdmod;
pub mod gorenstein;
pub mod homdim;
pub mod morita;
pub mod randomized;
pub mod subcat;

pub use error::{Error, Result};
