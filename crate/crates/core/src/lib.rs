//! Combinatorial Heegaard diagrams with exact Maslov index and fat-diagonal
//! intersection formulas for domains of Whitney polygons.

pub mod builder;
pub mod chains;
pub mod diagram;
pub mod fixtures;
pub mod gen_domains;
pub mod io;
mod lattice;
pub mod maslov;
pub mod measures;
pub mod nice;
pub mod quarter;

pub use diagram::{HeegaardDiagram, ValidationReport};
pub use quarter::Quarter;
