//! Finite nonassociative algebra on explicit operation tables.
//!
//! Magmas are stored as Cayley tables and rings as paired addition and
//! multiplication tables. The crate decides the right Bol, flexible and
//! Moufang laws, extracts the loop of two-sided invertible elements of a Bol
//! magma, checks the translation identities that hold in such magmas, and
//! searches small orders exhaustively for Bol magmas, Bol loops and
//! (strongly) right alternative rings.

pub mod error;
pub mod fixtures;
pub mod format;
pub mod magma;
pub mod ring;
pub mod search;

pub use error::{Error, Result};
pub use magma::{
    CayleyTable, Element, InvertibleSet, Property, PropertyReport, Side, Translation, Witness,
};
pub use ring::FinRing;
pub use search::{SearchKind, SearchMode, SearchResult, SearchSpec, Structure, Target};

/// Orders above this still work but the cubic checkers get slow.
pub const LARGE_ORDER_WARNING: usize = 512;
