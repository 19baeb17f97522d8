use crate::error::{Error, Result};

use super::identities::check_right_bol;
use super::table::{CayleyTable, Element};

/// Elements with a two-sided inverse relative to a neutral element,
/// together with the chosen inverse of each.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvertibleSet {
    members: Vec<Element>,
    inverse: Vec<Option<Element>>,
    ambiguous: Vec<Element>,
}

impl InvertibleSet {
    /// Sorted member list.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Element) -> bool {
        self.inverse.get(a.index()).is_some_and(Option::is_some)
    }

    pub fn inverse(&self, a: Element) -> Option<Element> {
        self.inverse.get(a.index()).copied().flatten()
    }

    pub fn require_inverse(&self, a: Element) -> Result<Element> {
        self.inverse(a).ok_or(Error::NotInvertible(a))
    }

    /// Members with more than one two-sided inverse. Their recorded inverse is
    /// the least one. Always empty for right Bol tables.
    pub fn ambiguous(&self) -> &[Element] {
        &self.ambiguous
    }

    /// `(member, inverse)` pairs in member order.
    pub fn pairs(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.members
            .iter()
            .map(|&a| (a, self.inverse[a.index()].unwrap()))
    }
}

/// All `a` having some `b` with `ab = ba = 1`, found by scanning `b` upward.
///
/// On right Bol tables a second inverse contradicts uniqueness of two-sided
/// inverses and is reported as [`Error::NonUniqueInverse`].
pub fn invertible_set(t: &CayleyTable) -> Result<InvertibleSet> {
    let e = t.require_neutral()?.index();
    let n = t.order();
    let mut inverse = vec![None; n];
    let mut members = Vec::new();
    let mut ambiguous = Vec::new();
    let mut bol: Option<bool> = None;
    for a in 0..n {
        let mut found = (0..n).filter(|&b| t.op(a, b) == e && t.op(b, a) == e);
        let Some(first) = found.next() else { continue };
        if let Some(second) = found.next() {
            if *bol.get_or_insert_with(|| check_right_bol(t).holds) {
                return Err(Error::NonUniqueInverse {
                    a: Element::new(a),
                    first: Element::new(first),
                    second: Element::new(second),
                });
            }
            ambiguous.push(Element::new(a));
        }
        inverse[a] = Some(Element::new(first));
        members.push(Element::new(a));
    }
    Ok(InvertibleSet {
        members,
        inverse,
        ambiguous,
    })
}

/// Least `(a, b)` of invertible elements whose product is not invertible.
pub fn closure_defect(t: &CayleyTable, s: &InvertibleSet) -> Option<(Element, Element)> {
    s.members().iter().find_map(|&a| {
        s.members()
            .iter()
            .find(|&&b| !s.contains(t.mul(a, b)))
            .map(|&b| (a, b))
    })
}

/// The invertible elements as a magma of their own, re-indexed in sorted
/// member order.
pub fn jloop(t: &CayleyTable) -> Result<CayleyTable> {
    let s = invertible_set(t)?;
    if let Some((a, b)) = closure_defect(t, &s) {
        return Err(Error::NotClosed(a, b));
    }
    t.restrict(s.members())
}
