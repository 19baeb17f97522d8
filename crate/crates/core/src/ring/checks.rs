use crate::error::Result;
use crate::magma::{self, Element, Property, PropertyReport};

use super::FinRing;
use crate::magma::identities::{report_from, scan_pairs, scan_triples};

/// Abelian group axioms for addition, both distributive laws, zero
/// annihilation and (when a unity exists) the unity law, in that order.
pub fn validate_ring(r: &FinRing) -> Vec<PropertyReport> {
    let n = r.order();
    let a = |x, y| r.add_table().op(x, y);
    let m = |x, y| r.mul_table().op(x, y);
    let z = r.zero().index();

    let mut reports = vec![
        report_from(
            Property::AddAssociative,
            scan_triples(n, |x, y, w| (a(a(x, y), w), a(x, a(y, w)))),
        ),
        report_from(
            Property::AddCommutative,
            scan_pairs(n, |x, y| (a(x, y), a(y, x))),
        ),
    ];
    // Zero is the neutral element of the addition table by construction.
    reports.push(PropertyReport::holding(Property::AddIdentity));
    reports.push(
        (0..n)
            .find(|&x| (0..n).all(|y| a(x, y) != z))
            .map(|x| PropertyReport::missing(Property::AddInverse, vec![Element::new(x)]))
            .unwrap_or_else(|| PropertyReport::holding(Property::AddInverse)),
    );
    reports.push(report_from(
        Property::LeftDistributive,
        scan_triples(n, |x, y, w| (m(x, a(y, w)), a(m(x, y), m(x, w)))),
    ));
    reports.push(report_from(
        Property::RightDistributive,
        scan_triples(n, |x, y, w| (m(a(x, y), w), a(m(x, w), m(y, w)))),
    ));
    reports.push(
        (0..n)
            .find(|&x| m(x, z) != z || m(z, x) != z)
            .map(|x| {
                let x = Element::new(x);
                let (lhs, rhs) = r.eval_identity(Property::ZeroAnnihilation, &[x]).unwrap();
                PropertyReport::unequal(Property::ZeroAnnihilation, vec![x], lhs, rhs)
            })
            .unwrap_or_else(|| PropertyReport::holding(Property::ZeroAnnihilation)),
    );
    if r.one().is_some() {
        // Unity is the neutral element of the multiplication table by construction.
        reports.push(PropertyReport::holding(Property::Unity));
    }
    reports
}

/// `xy*y = x*yy` over all pairs.
pub fn check_right_alternative(r: &FinRing) -> Result<PropertyReport> {
    r.ensure_valid()?;
    Ok(magma::check_right_alternative(r.mul_table()))
}

/// `x*xy = xx*y` over all pairs.
pub fn check_left_alternative(r: &FinRing) -> Result<PropertyReport> {
    r.ensure_valid()?;
    Ok(magma::check_left_alternative(r.mul_table()))
}

/// Right alternative with a right Bol multiplicative magma. The failing
/// sub-report is embedded as the witness.
pub fn check_strongly_right_alternative(r: &FinRing) -> Result<PropertyReport> {
    let right_alt = check_right_alternative(r)?;
    let sub = if right_alt.holds {
        magma::check_right_bol(r.mul_table())
    } else {
        right_alt
    };
    Ok(PropertyReport::from_sub(
        Property::StronglyRightAlternative,
        sub,
    ))
}
