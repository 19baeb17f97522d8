use crate::magma::CayleyTable;

use super::FinRing;

/// Integers mod `n`.
pub fn residue_ring(n: usize) -> FinRing {
    assert!(n >= 1, "residue ring needs n >= 1");
    FinRing::from_fns(n, |x, y| (x + y) % n, |x, y| x * y % n).expect("residue ring tables")
}

/// The given abelian group with every product equal to zero.
///
/// Panics if `add` has no neutral element.
pub fn zero_ring(add: &CayleyTable) -> FinRing {
    let zero = add
        .neutral()
        .expect("zero ring needs an additive identity")
        .index();
    let mul = CayleyTable::from_fn(add.order(), |_, _| zero).expect("constant table");
    FinRing::new(add.clone(), mul).expect("zero ring tables")
}

/// A Zorn vector matrix `((a, u), (v, d))` over the two-element field.
///
/// Vectors are 3-bit masks, bit `k` holding component `k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ZornElement {
    pub a: u8,
    pub u: u8,
    pub v: u8,
    pub d: u8,
}

/// `a*128 + u*16 + v*2 + d`.
pub fn zorn_encode(x: ZornElement) -> usize {
    (x.a as usize) << 7 | (x.u as usize) << 4 | (x.v as usize) << 1 | x.d as usize
}

pub fn zorn_decode(index: usize) -> ZornElement {
    ZornElement {
        a: (index >> 7 & 1) as u8,
        u: (index >> 4 & 7) as u8,
        v: (index >> 1 & 7) as u8,
        d: (index & 1) as u8,
    }
}

fn dot(x: u8, y: u8) -> u8 {
    ((x & y).count_ones() & 1) as u8
}

fn cross(x: u8, y: u8) -> u8 {
    let bit = |w: u8, k: u8| (w >> k) & 1;
    let c0 = bit(x, 1) & bit(y, 2) ^ bit(x, 2) & bit(y, 1);
    let c1 = bit(x, 2) & bit(y, 0) ^ bit(x, 0) & bit(y, 2);
    let c2 = bit(x, 0) & bit(y, 1) ^ bit(x, 1) & bit(y, 0);
    c0 | c1 << 1 | c2 << 2
}

fn scale(s: u8, w: u8) -> u8 {
    if s == 1 {
        w
    } else {
        0
    }
}

/// Zorn vector-matrix product over GF(2).
pub fn zorn_mul(x: ZornElement, y: ZornElement) -> ZornElement {
    // Characteristic 2, so the sign on the cross products drops out.
    ZornElement {
        a: x.a & y.a ^ dot(x.u, y.v),
        u: scale(x.a, y.u) ^ scale(y.d, x.u) ^ cross(x.v, y.v),
        v: scale(y.a, x.v) ^ scale(x.d, y.v) ^ cross(x.u, y.u),
        d: x.d & y.d ^ dot(x.v, y.u),
    }
}

/// Split octonions over the two-element field as Zorn vector matrices,
/// order 256. Addition is XOR of the encodings from [`zorn_encode`]; unity is
/// `((1, 0), (0, 1))`, index 129.
pub fn zorn_gf2() -> FinRing {
    FinRing::from_fns(
        256,
        |x, y| x ^ y,
        |x, y| zorn_encode(zorn_mul(zorn_decode(x), zorn_decode(y))),
    )
    .expect("zorn tables")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Element;

    #[test]
    fn trivial_ring() {
        let r = residue_ring(1);
        assert_eq!(r.zero(), Element::new(0));
        assert_eq!(r.one(), Some(Element::new(0)));
        assert!(r.is_valid());
    }

    #[test]
    fn zero_ring_multiplication_is_zero() {
        let r = zero_ring(&crate::fixtures::cyclic_group(3));
        assert!(r.mul_table().cells().iter().all(|&c| c == 0));
        assert!(r.is_valid());
    }

    #[test]
    fn zorn_encoding_round_trips() {
        for i in 0..256 {
            assert_eq!(zorn_encode(zorn_decode(i)), i);
        }
        let one = ZornElement {
            a: 1,
            u: 0,
            v: 0,
            d: 1,
        };
        assert_eq!(zorn_encode(one), 129);
        assert_eq!(zorn_gf2().one(), Some(Element::new(129)));
    }

    #[test]
    fn cross_product_basis() {
        assert_eq!(cross(0b001, 0b010), 0b100);
        assert_eq!(cross(0b010, 0b100), 0b001);
        assert_eq!(cross(0b100, 0b001), 0b010);
        assert_eq!(cross(0b011, 0b011), 0);
    }

    #[test]
    fn zorn_norm_is_multiplicative() {
        // det((a, u), (v, d)) = ad + u.v over GF(2)
        let norm = |x: ZornElement| x.a & x.d ^ dot(x.u, x.v);
        for i in (0..256).step_by(7) {
            for j in 0..256 {
                let (x, y) = (zorn_decode(i), zorn_decode(j));
                assert_eq!(norm(zorn_mul(x, y)), norm(x) & norm(y));
            }
        }
    }
}
