//! Link-diagram invariants: Jones polynomial via the Kauffman bracket,
//! Goeritz/Gordon–Litherland signatures, Fox colorings, Milnor invariants,
//! and generators for satellite (doubled) link families.

pub mod bracket;
pub mod colorings;
pub mod diagram;
pub mod families;
pub mod jones;
pub mod poly;

pub use diagram::{ArcId, Crossing, DiagramError, LinkDiagram, SkeinTriple};
pub use poly::{LaurentPoly, PolyError};
