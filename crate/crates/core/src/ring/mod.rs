//! Finite (nonassociative) rings as paired addition and multiplication tables.

mod checks;
mod fixtures;
mod loops;

pub use checks::{
    check_left_alternative, check_right_alternative, check_strongly_right_alternative,
    validate_ring,
};
pub use fixtures::{
    residue_ring, zero_ring, zorn_decode, zorn_encode, zorn_gf2, zorn_mul, ZornElement,
};
pub use loops::{
    circle_magma, moufang_corollary_check, quasiregular_bol_loop, quasiregular_set, unit_bol_loop,
    units, verify_corollaries,
};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::magma::{CayleyTable, Element, Property, PropertyReport, Witness};

/// A finite ring: an abelian addition table and a multiplication table on
/// the same carrier. Multiplication need not be associative.
///
/// Zero and unity are the neutral elements of the two tables. Ring axioms
/// are not enforced at construction; [`validate_ring`] reports them and
/// every downstream operation refuses an invalid ring.
#[derive(Clone, Debug)]
pub struct FinRing {
    add: CayleyTable,
    mul: CayleyTable,
    zero: Element,
    validity: OnceLock<Option<PropertyReport>>,
}

impl PartialEq for FinRing {
    fn eq(&self, other: &Self) -> bool {
        self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FinRing {}

impl FinRing {
    pub fn new(add: CayleyTable, mul: CayleyTable) -> Result<Self> {
        if add.order() != mul.order() {
            return Err(Error::InvalidTable(format!(
                "addition has order {} but multiplication has order {}",
                add.order(),
                mul.order()
            )));
        }
        let zero = add
            .neutral()
            .ok_or_else(|| Error::InvalidTable("addition has no neutral element".into()))?;
        Ok(FinRing {
            add,
            mul,
            zero,
            validity: OnceLock::new(),
        })
    }

    pub fn from_fns(
        order: usize,
        add: impl FnMut(usize, usize) -> usize,
        mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        Self::new(
            CayleyTable::from_fn(order, add)?,
            CayleyTable::from_fn(order, mul)?,
        )
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn zero(&self) -> Element {
        self.zero
    }

    pub fn one(&self) -> Option<Element> {
        self.mul.neutral()
    }

    pub fn add_table(&self) -> &CayleyTable {
        &self.add
    }

    /// The multiplicative magma; its neutral element is the unity.
    pub fn mul_table(&self) -> &CayleyTable {
        &self.mul
    }

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        self.add.mul(x, y)
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul.mul(x, y)
    }

    /// Additive inverse, if the addition table provides one.
    pub fn neg(&self, x: Element) -> Option<Element> {
        self.add.elements().find(|&y| self.add(x, y) == self.zero)
    }

    /// First failing ring axiom, cached.
    fn first_violation(&self) -> Option<&PropertyReport> {
        self.validity
            .get_or_init(|| validate_ring(self).into_iter().find(|r| !r.holds))
            .as_ref()
    }

    pub fn is_valid(&self) -> bool {
        self.first_violation().is_none()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(report) => Err(Error::InvalidRing(Box::new(report.clone()))),
        }
    }

    /// Evaluates both sides of a ring identity at `args`; `None` when the
    /// property has no two-sided form or the arity is wrong.
    pub fn eval_identity(
        &self,
        property: Property,
        args: &[Element],
    ) -> Option<(Element, Element)> {
        let (a, m, z) = (|x, y| self.add(x, y), |x, y| self.mul(x, y), self.zero);
        match (property, args) {
            (Property::AddAssociative, &[x, y, w]) => Some((a(a(x, y), w), a(x, a(y, w)))),
            (Property::AddCommutative, &[x, y]) => Some((a(x, y), a(y, x))),
            (Property::AddIdentity, &[x]) => Some(if a(x, z) != x {
                (a(x, z), x)
            } else {
                (a(z, x), x)
            }),
            (Property::LeftDistributive, &[x, y, w]) => Some((m(x, a(y, w)), a(m(x, y), m(x, w)))),
            (Property::RightDistributive, &[x, y, w]) => Some((m(a(x, y), w), a(m(x, w), m(y, w)))),
            (Property::ZeroAnnihilation, &[x]) => Some(if m(x, z) != z {
                (m(x, z), z)
            } else {
                (m(z, x), z)
            }),
            (Property::Unity, &[x]) => {
                let one = self.one()?;
                Some(if m(one, x) != x {
                    (m(one, x), x)
                } else {
                    (m(x, one), x)
                })
            }
            _ => property.eval_identity(&self.mul, args),
        }
    }

    /// Ring analogue of [`PropertyReport::recheck`].
    pub fn recheck(&self, report: &PropertyReport) -> Option<bool> {
        match &report.witness {
            Some(Witness::Unequal { args, lhs, rhs }) => {
                let (l, r) = self.eval_identity(report.property, args)?;
                Some(l == *lhs && r == *rhs && l != r)
            }
            Some(Witness::Nested(inner)) => self.recheck(inner),
            _ => None,
        }
    }
}
