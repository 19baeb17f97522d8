use std::fmt;
use std::str::FromStr;

use super::table::{CayleyTable, Element};

/// Which side a translation multiplies on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Side {
    /// `R(a): x -> x*a`
    Right,
    /// `L(a): x -> a*x`
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "R",
            Side::Left => "L",
        })
    }
}

macro_rules! properties {
    ($($variant:ident => $tag:literal),* $(,)?) => {
        /// Name tag of every checked identity, axiom and derived statement.
        #[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
        pub enum Property {
            $($variant),*
        }

        impl Property {
            pub const ALL: &'static [Property] = &[$(Property::$variant),*];

            pub fn tag(self) -> &'static str {
                match self {
                    $(Property::$variant => $tag),*
                }
            }
        }

        impl FromStr for Property {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($tag => Ok(Property::$variant),)*
                    _ => Err(format!("unknown property `{s}`")),
                }
            }
        }
    };
}

properties! {
    RightBol => "right-bol",
    Flexible => "flexible",
    Moufang => "moufang",
    Loop => "loop",
    RightAlternative => "right-alternative",
    LeftAlternative => "left-alternative",
    StronglyRightAlternative => "strongly-right-alternative",
    Associative => "associative",
    AddAssociative => "add-associative",
    AddCommutative => "add-commutative",
    AddIdentity => "add-identity",
    AddInverse => "add-inverse",
    LeftDistributive => "left-distributive",
    RightDistributive => "right-distributive",
    ZeroAnnihilation => "zero-annihilation",
    Unity => "unity",
    PowerTranslation => "power-translation",
    InverseTranslation => "inverse-translation",
    LeftTranslationInverse => "left-translation-inverse",
    BolTranslation => "bol-translation",
    OneSidedInverses => "one-sided-inverses",
    UniqueInverse => "unique-inverse",
    ProductRightInverse => "product-right-inverse",
    LeftProductInverse => "left-product-inverse",
    Torsion => "torsion",
    InvertiblesClosed => "invertibles-closed",
    InvertibleLoop => "invertible-loop",
    InvertibleMoufang => "invertible-moufang",
    CircleNeutral => "circle-neutral",
    CircleBol => "circle-bol",
    CircleFlexible => "circle-flexible",
    UnitLoop => "unit-loop",
    QuasiregularLoop => "quasiregular-loop",
    UnitMoufang => "unit-moufang",
    QuasiregularMoufang => "quasiregular-moufang",
    QuasiregularUnitShift => "quasiregular-unit-shift",
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Property {
    /// Evaluates both sides of a single-operation identity at `args`.
    ///
    /// Returns `None` for properties that are not plain identities of one
    /// operation or when `args` has the wrong arity.
    pub fn eval_identity(self, t: &CayleyTable, args: &[Element]) -> Option<(Element, Element)> {
        let m = |a: Element, b: Element| t.mul(a, b);
        match (self, args) {
            (Property::RightBol, &[x, y, z]) => Some((m(m(m(x, y), z), y), m(x, m(m(y, z), y)))),
            (Property::Flexible, &[x, y]) => Some((m(x, m(y, x)), m(m(x, y), x))),
            (Property::RightAlternative, &[x, y]) => Some((m(m(x, y), y), m(x, m(y, y)))),
            (Property::LeftAlternative, &[x, y]) => Some((m(x, m(x, y)), m(m(x, x), y))),
            (Property::Associative, &[x, y, z]) => Some((m(m(x, y), z), m(x, m(y, z)))),
            _ => None,
        }
    }
}

/// Evidence that a property fails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// The two sides of the defining equation differ at `args`.
    Unequal {
        args: Vec<Element>,
        lhs: Element,
        rhs: Element,
    },
    /// `first != second` have the same image under the translation at `at`.
    NotBijective {
        side: Side,
        at: Element,
        first: Element,
        second: Element,
    },
    /// No element with the required property exists for `args`
    /// (no neutral element, no inverse, ...).
    Missing { args: Vec<Element> },
    /// A failing sub-check of a composite property.
    Nested(Box<PropertyReport>),
}

/// Verdict of a universally quantified check.
///
/// A failing report always carries the lexicographically least failing
/// tuple as its witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn holding(property: Property) -> Self {
        PropertyReport {
            property,
            holds: true,
            witness: None,
        }
    }

    pub fn failing(property: Property, witness: Witness) -> Self {
        PropertyReport {
            property,
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn unequal(property: Property, args: Vec<Element>, lhs: Element, rhs: Element) -> Self {
        Self::failing(property, Witness::Unequal { args, lhs, rhs })
    }

    pub fn missing(property: Property, args: Vec<Element>) -> Self {
        Self::failing(property, Witness::Missing { args })
    }

    /// Wraps a failing sub-report, or reports `property` as holding.
    pub fn from_sub(property: Property, sub: PropertyReport) -> Self {
        if sub.holds {
            Self::holding(property)
        } else {
            Self::failing(property, Witness::Nested(Box::new(sub)))
        }
    }

    /// Follows nested witnesses to the innermost failing report.
    pub fn root_cause(&self) -> &PropertyReport {
        match &self.witness {
            Some(Witness::Nested(inner)) => inner.root_cause(),
            _ => self,
        }
    }

    /// Re-evaluates an identity witness against `t`. Returns `Some(true)`
    /// when the recorded sides are reproduced and differ, `None` when the
    /// report is not a plain identity witness.
    pub fn recheck(&self, t: &CayleyTable) -> Option<bool> {
        match &self.witness {
            Some(Witness::Unequal { args, lhs, rhs }) => {
                let (l, r) = self.property.eval_identity(t, args)?;
                Some(l == *lhs && r == *rhs && l != r)
            }
            Some(Witness::Nested(inner)) => inner.recheck(t),
            _ => None,
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            return write!(f, "{}: holds", self.property);
        }
        write!(f, "{}: fails", self.property)?;
        match &self.witness {
            Some(Witness::Unequal { args, lhs, rhs }) => {
                write!(f, " at ({}): lhs={lhs} rhs={rhs}", join(args))
            }
            Some(Witness::NotBijective {
                side,
                at,
                first,
                second,
            }) => write!(f, " at {side}({at}): {first} and {second} share an image"),
            Some(Witness::Missing { args }) if args.is_empty() => write!(f, ": no neutral element"),
            Some(Witness::Missing { args }) => {
                write!(f, ": nothing satisfies it for ({})", join(args))
            }
            Some(Witness::Nested(inner)) => write!(f, " because {inner}"),
            None => Ok(()),
        }
    }
}

pub(crate) fn join(args: &[Element]) -> String {
    args.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
