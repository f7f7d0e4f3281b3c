//! Grove algebra of planar electrical (cactus) networks.
//!
//! Catalan bijections, medial graphs and pairings, grove measurements as exact
//! polynomials, the double-grove invariant α and the Bush basis, the
//! Temperley–Lieb immanants, and straightening of grove monomials.

pub mod bush;
pub mod cli;
pub mod catalan;
pub mod crossings;
pub mod error;
pub mod formal;
pub mod grove;
pub mod immanant;
pub mod network;
pub mod polyring;
pub mod straighten;
pub mod verify;

pub use error::{Error, Result};
