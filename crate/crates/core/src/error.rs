use thiserror::Error;

use crate::magma::{Element, PropertyReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table has no two-sided neutral element")]
    NoNeutral,

    #[error("ring has no unity")]
    NoUnity,

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("table is not right Bol: {0}")]
    NotBol(Box<PropertyReport>),

    #[error("element {0} has no two-sided inverse")]
    NotInvertible(Element),

    #[error(
        "element {a} has two distinct two-sided inverses {first} and {second} in a right Bol table"
    )]
    NonUniqueInverse {
        a: Element,
        first: Element,
        second: Element,
    },

    #[error("invertible elements are not closed: {0}*{1} is not invertible")]
    NotClosed(Element, Element),

    #[error("ring axioms fail: {0}")]
    InvalidRing(Box<PropertyReport>),

    #[error("ring is not strongly right alternative: {0}")]
    NotStronglyRightAlternative(Box<PropertyReport>),

    #[error("ring is not alternative: {0}")]
    NotAlternative(Box<PropertyReport>),

    /// A finite input contradicted a proven statement. Always an internal bug
    /// or a corrupted table.
    #[error("internal consistency failure: {0}")]
    TheoremViolation(Box<PropertyReport>),

    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
}
