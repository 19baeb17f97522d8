use super::table::{CayleyTable, Element};

/// A self-map of the carrier, stored as its image array.
///
/// Composition follows the right-action convention: `f.then(&g)` applies `f`
/// first, so `x R(y)R(z)R(y)` reads `((x*y)*z)*y`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Translation {
    images: Vec<Element>,
}

impl Translation {
    pub fn identity(order: usize) -> Self {
        Translation {
            images: (0..order).map(Element::new).collect(),
        }
    }

    pub fn from_images(images: Vec<Element>) -> Self {
        Translation { images }
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.images[x.index()]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Translation) -> Translation {
        Translation {
            images: self.images.iter().map(|&x| next.apply(x)).collect(),
        }
    }

    /// `k`-fold composite; the zeroth power is the identity map.
    pub fn pow(&self, k: usize) -> Translation {
        let mut acc = Translation::identity(self.len());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, x)| x.index() == i)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.len()];
        self.images
            .iter()
            .all(|x| !std::mem::replace(&mut seen[x.index()], true))
    }

    pub fn inverse(&self) -> Option<Translation> {
        let mut inv = vec![None; self.len()];
        for (i, x) in self.images.iter().enumerate() {
            if inv[x.index()].replace(Element::new(i)).is_some() {
                return None;
            }
        }
        Some(Translation {
            images: inv.into_iter().collect::<Option<Vec<_>>>()?,
        })
    }

    /// Least `x` where the two maps disagree.
    pub(crate) fn first_difference(&self, other: &Translation) -> Option<Element> {
        self.images
            .iter()
            .zip(&other.images)
            .position(|(a, b)| a != b)
            .map(Element::new)
    }
}

/// `R(a): x -> x*a`
pub fn right_translation(t: &CayleyTable, a: Element) -> Translation {
    Translation {
        images: t.elements().map(|x| t.mul(x, a)).collect(),
    }
}

/// `L(a): x -> a*x`
pub fn left_translation(t: &CayleyTable, a: Element) -> Translation {
    Translation {
        images: t.elements().map(|x| t.mul(a, x)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e(i: usize) -> Element {
        Element::new(i)
    }

    #[test]
    fn right_translation_of_z3() {
        let t = fixtures::cyclic_group(3);
        let r = right_translation(&t, e(1));
        assert_eq!(r.images(), &[e(1), e(2), e(0)]);
        assert!(r.is_permutation());
    }

    #[test]
    fn left_zero_translation_is_constant() {
        let t = CayleyTable::from_fn(3, |x, _| x).unwrap();
        let l = left_translation(&t, e(2));
        assert_eq!(l.images(), &[e(2), e(2), e(2)]);
        assert!(!l.is_permutation());
        assert!(l.inverse().is_none());
    }

    #[test]
    fn group_translations_are_permutations() {
        for g in fixtures::groups_up_to(8) {
            for a in g.table.elements() {
                assert!(right_translation(&g.table, a).is_permutation());
                assert!(left_translation(&g.table, a).is_permutation());
            }
        }
    }

    #[test]
    fn composition_is_right_action() {
        // S3: R(y)R(z)R(y) applied to x must equal ((xy)z)y.
        let t = fixtures::dihedral_group(3);
        for x in t.elements() {
            for y in t.elements() {
                for z in t.elements() {
                    let ry = right_translation(&t, y);
                    let comp = ry.then(&right_translation(&t, z)).then(&ry);
                    assert_eq!(comp.apply(x), t.mul(t.mul(t.mul(x, y), z), y));
                }
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let t = fixtures::dihedral_group(4);
        let l = left_translation(&t, e(3));
        let inv = l.inverse().unwrap();
        assert!(l.then(&inv).is_identity());
        assert!(inv.then(&l).is_identity());
        assert!(l.pow(0).is_identity());
    }
}
