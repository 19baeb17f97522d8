use crate::error::{Error, Result};
use crate::magma::{
    self, check_flexible, check_moufang, check_right_bol, invertible_set, is_loop, CayleyTable,
    Element, InvertibleSet, Property, PropertyReport,
};

use super::checks::{
    check_left_alternative, check_right_alternative, check_strongly_right_alternative,
};
use super::FinRing;

/// Units: elements with a two-sided multiplicative inverse. Outside the Bol
/// case an element may have several inverses; the least is recorded.
pub fn units(r: &FinRing) -> Result<InvertibleSet> {
    r.ensure_valid()?;
    r.one().ok_or(Error::NoUnity)?;
    invertible_set(r.mul_table())
}

/// `x o y = x + y + xy`, neutral element zero.
pub fn circle_magma(r: &FinRing) -> Result<CayleyTable> {
    r.ensure_valid()?;
    let (add, mul) = (r.add_table(), r.mul_table());
    let t = CayleyTable::from_fn(r.order(), |x, y| add.op(add.op(x, y), mul.op(x, y)))?;
    if t.neutral() != Some(r.zero()) {
        return Err(Error::TheoremViolation(Box::new(circle_neutral_report(
            r, &t,
        ))));
    }
    Ok(t)
}

fn circle_neutral_report(r: &FinRing, circle: &CayleyTable) -> PropertyReport {
    let z = r.zero();
    circle
        .elements()
        .find_map(|x| {
            let (l, rr) = (circle.mul(x, z), circle.mul(z, x));
            if l != x {
                Some(PropertyReport::unequal(
                    Property::CircleNeutral,
                    vec![x],
                    l,
                    x,
                ))
            } else if rr != x {
                Some(PropertyReport::unequal(
                    Property::CircleNeutral,
                    vec![x],
                    rr,
                    x,
                ))
            } else {
                None
            }
        })
        .unwrap_or_else(|| PropertyReport::holding(Property::CircleNeutral))
}

/// Quasiregular elements with their quasi-inverses.
pub fn quasiregular_set(r: &FinRing) -> Result<InvertibleSet> {
    invertible_set(&circle_magma(r)?)
}

fn require_sra(r: &FinRing) -> Result<()> {
    let sra = check_strongly_right_alternative(r)?;
    if sra.holds {
        Ok(())
    } else {
        Err(Error::NotStronglyRightAlternative(Box::new(sra)))
    }
}

/// Loop of invertible elements of `t`, which must come out as a Bol loop.
fn bol_loop_of(t: &CayleyTable, property: Property) -> Result<CayleyTable> {
    let j = magma::jloop(t)?;
    let looped = is_loop(&j);
    let report = if looped.holds {
        check_right_bol(&j)
    } else {
        looped
    };
    if !report.holds {
        return Err(Error::TheoremViolation(Box::new(PropertyReport::from_sub(
            property, report,
        ))));
    }
    Ok(j)
}

/// Units of a finite strongly right alternative ring as a Bol loop, indexed
/// in sorted unit order.
///
/// [`Error::NotClosed`] here would contradict the closure theorem for finite
/// Bol magmas and indicates a bug or corrupted input.
pub fn unit_bol_loop(r: &FinRing) -> Result<CayleyTable> {
    require_sra(r)?;
    r.one().ok_or(Error::NoUnity)?;
    bol_loop_of(r.mul_table(), Property::UnitLoop)
}

/// Quasiregular elements under the circle operation as a Bol loop.
pub fn quasiregular_bol_loop(r: &FinRing) -> Result<CayleyTable> {
    require_sra(r)?;
    let circle = circle_magma(r)?;
    let bol = check_right_bol(&circle);
    if !bol.holds {
        return Err(Error::TheoremViolation(Box::new(PropertyReport::from_sub(
            Property::CircleBol,
            bol,
        ))));
    }
    bol_loop_of(&circle, Property::QuasiregularLoop)
}

/// Moufang report for the invertible elements of `t`; closure failure is
/// folded into the report rather than raised.
fn moufang_loop_report(t: &CayleyTable, property: Property) -> Result<PropertyReport> {
    let s = invertible_set(t)?;
    if let Some((a, b)) = magma::closure_defect(t, &s) {
        let missing = PropertyReport::missing(Property::InvertiblesClosed, vec![a, b]);
        return Ok(PropertyReport::from_sub(property, missing));
    }
    let j = t.restrict(s.members())?;
    let looped = is_loop(&j);
    let report = if looped.holds {
        check_moufang(&j)
    } else {
        looped
    };
    Ok(PropertyReport::from_sub(property, report))
}

/// For an alternative ring: both multiplicative and circle magmas are
/// flexible and right Bol, and the unit loop (when unital) and the
/// quasiregular loop are Moufang.
pub fn moufang_corollary_check(r: &FinRing) -> Result<Vec<PropertyReport>> {
    for check in [check_right_alternative(r)?, check_left_alternative(r)?] {
        if !check.holds {
            return Err(Error::NotAlternative(Box::new(check)));
        }
    }
    let circle = circle_magma(r)?;
    let mut reports = vec![
        check_flexible(r.mul_table()),
        check_right_bol(r.mul_table()),
        PropertyReport::from_sub(Property::CircleFlexible, check_flexible(&circle)),
        PropertyReport::from_sub(Property::CircleBol, check_right_bol(&circle)),
    ];
    if r.one().is_some() {
        reports.push(moufang_loop_report(r.mul_table(), Property::UnitMoufang)?);
    }
    reports.push(moufang_loop_report(&circle, Property::QuasiregularMoufang)?);
    Ok(reports)
}

/// `x` is quasiregular iff `1 + x` is a unit, with `x' = (1 + x)^-1 - 1`.
/// Only meaningful for unital associative rings.
fn unit_shift_report(r: &FinRing, u: &InvertibleSet, q: &InvertibleSet) -> PropertyReport {
    let one = r.one().unwrap();
    let minus_one = r.neg(one).unwrap();
    for x in (0..r.order()).map(Element::new) {
        let shifted = r.add(one, x);
        let predicted = u.inverse(shifted).map(|inv| r.add(inv, minus_one));
        if predicted != q.inverse(x) {
            return match (predicted, q.inverse(x)) {
                (Some(p), Some(actual)) => {
                    PropertyReport::unequal(Property::QuasiregularUnitShift, vec![x], p, actual)
                }
                _ => PropertyReport::missing(Property::QuasiregularUnitShift, vec![x]),
            };
        }
    }
    PropertyReport::holding(Property::QuasiregularUnitShift)
}

/// Every applicable ring-level statement for one valid ring: the circle
/// magma checks and loop extractions for strongly right alternative rings,
/// the Moufang statements for alternative rings, and the unit-shift
/// cross-check for unital associative rings. Statement failures are data.
pub fn verify_corollaries(r: &FinRing) -> Result<Vec<PropertyReport>> {
    r.ensure_valid()?;
    let circle = circle_magma(r)?;
    let mut reports = vec![circle_neutral_report(r, &circle)];
    let sra = check_strongly_right_alternative(r)?.holds;
    if sra {
        reports.push(PropertyReport::from_sub(
            Property::CircleBol,
            check_right_bol(&circle),
        ));
        if r.one().is_some() {
            reports.push(loop_outcome(unit_bol_loop(r), Property::UnitLoop)?);
        }
        reports.push(loop_outcome(
            quasiregular_bol_loop(r),
            Property::QuasiregularLoop,
        )?);
        if check_left_alternative(r)?.holds {
            reports.extend(moufang_corollary_check(r)?);
        }
    }
    if r.one().is_some() && magma::check_associative(r.mul_table()).holds {
        let u = units(r)?;
        let q = invertible_set(&circle)?;
        reports.push(unit_shift_report(r, &u, &q));
    }
    Ok(reports)
}

fn loop_outcome(result: Result<CayleyTable>, property: Property) -> Result<PropertyReport> {
    match result {
        Ok(_) => Ok(PropertyReport::holding(property)),
        Err(Error::TheoremViolation(report)) => Ok(*report),
        Err(Error::NotClosed(a, b)) => Ok(PropertyReport::from_sub(
            property,
            PropertyReport::missing(Property::InvertiblesClosed, vec![a, b]),
        )),
        Err(other) => Err(other),
    }
}
