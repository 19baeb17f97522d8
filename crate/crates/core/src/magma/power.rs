use crate::error::Result;

use super::table::{CayleyTable, Element};

/// Left-normed power: `a^0 = 1`, `a^k = a^(k-1) * a`.
///
/// No reassociation is assumed, so this is the only bracketing computed.
pub fn power(t: &CayleyTable, a: Element, k: usize) -> Result<Element> {
    if k == 0 {
        return t.require_neutral();
    }
    let mut acc = a;
    for _ in 1..k {
        acc = t.mul(acc, a);
    }
    Ok(acc)
}

/// Least `n >= 1` such that `a^n = a^m` for some `m < n`, returned as `(m, n)`.
pub fn torsion_witness(t: &CayleyTable, a: Element) -> Result<(usize, usize)> {
    let neutral = t.require_neutral()?;
    let mut first_seen = vec![usize::MAX; t.order()];
    first_seen[neutral.index()] = 0;
    let mut current = neutral;
    for n in 1..=t.order() + 1 {
        current = t.mul(current, a);
        let m = first_seen[current.index()];
        if m != usize::MAX {
            debug_assert!(m < n);
            return Ok((m, n));
        }
        first_seen[current.index()] = n;
    }
    // order + 2 distinct values among `order` elements.
    unreachable!("pigeonhole bound exceeded for order {}", t.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Error;

    fn e(i: usize) -> Element {
        Element::new(i)
    }

    #[test]
    fn zeroth_power_is_neutral() {
        let t = fixtures::cyclic_group(4);
        assert_eq!(power(&t, e(3), 0), Ok(e(0)));
        let relabeled = t.relabel(&[2, 0, 1, 3]).unwrap();
        assert_eq!(power(&relabeled, e(1), 0), Ok(e(2)));
    }

    #[test]
    fn zeroth_power_needs_neutral() {
        let t = CayleyTable::from_fn(2, |x, _| x).unwrap();
        assert_eq!(power(&t, e(1), 0), Err(Error::NoNeutral));
        assert_eq!(power(&t, e(1), 3), Ok(e(1)));
    }

    #[test]
    fn repeated_addition_mod_4() {
        let t = fixtures::cyclic_group(4);
        assert_eq!(power(&t, e(1), 3), Ok(e(3)));
    }

    #[test]
    fn powers_are_left_normed() {
        // a*a = b, a*b = 0 and b*a = a: left-normed a^3 = (aa)a = b*a = a,
        // while a(aa) would give 0.
        let t = CayleyTable::from_rows(&[[0, 1, 2], [1, 2, 0], [2, 1, 1]]).unwrap();
        assert_eq!(power(&t, e(1), 3), Ok(e(1)));
        assert_ne!(t.mul(e(1), t.mul(e(1), e(1))), e(1));
    }

    #[test]
    fn torsion_of_neutral_and_generator() {
        let t = fixtures::cyclic_group(4);
        assert_eq!(torsion_witness(&t, e(0)), Ok((0, 1)));
        assert_eq!(torsion_witness(&t, e(1)), Ok((0, 4)));
        assert_eq!(torsion_witness(&t, e(2)), Ok((0, 2)));
    }

    #[test]
    fn torsion_with_tail() {
        // 1 -> 1*1 = 2 -> 2*1 = 2: powers 0, 1, 2, 2 so (m, n) = (2, 3).
        let t = CayleyTable::from_rows(&[[0, 1, 2], [1, 2, 2], [2, 2, 2]]).unwrap();
        assert_eq!(torsion_witness(&t, e(1)), Ok((2, 3)));
        assert_eq!(torsion_witness(&t, e(2)), Ok((1, 2)));
    }
}
