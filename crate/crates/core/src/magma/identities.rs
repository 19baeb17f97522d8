use rayon::prelude::*;

use super::report::{Property, PropertyReport, Side, Witness};
use super::table::{CayleyTable, Element};

/// Below this order the triple scans stay on one thread.
const PARALLEL_ORDER: usize = 48;

type Failure<const K: usize> = ([usize; K], usize, usize);

/// Lexicographically least `(x, y)` where `eval` returns unequal sides.
pub(crate) fn scan_pairs<F>(n: usize, eval: F) -> Option<Failure<2>>
where
    F: Fn(usize, usize) -> (usize, usize) + Sync,
{
    let row = |x: usize| {
        (0..n).find_map(|y| {
            let (l, r) = eval(x, y);
            (l != r).then_some(([x, y], l, r))
        })
    };
    if n >= PARALLEL_ORDER {
        (0..n).into_par_iter().find_map_first(row)
    } else {
        (0..n).find_map(row)
    }
}

/// Lexicographically least `(x, y, z)` where `eval` returns unequal sides.
/// The parallel path reduces by first index, so the witness does not
/// depend on scheduling.
pub(crate) fn scan_triples<F>(n: usize, eval: F) -> Option<Failure<3>>
where
    F: Fn(usize, usize, usize) -> (usize, usize) + Sync,
{
    let slab = |x: usize| {
        (0..n).find_map(|y| {
            (0..n).find_map(|z| {
                let (l, r) = eval(x, y, z);
                (l != r).then_some(([x, y, z], l, r))
            })
        })
    };
    if n >= PARALLEL_ORDER {
        (0..n).into_par_iter().find_map_first(slab)
    } else {
        (0..n).find_map(slab)
    }
}

pub(crate) fn report_from<const K: usize>(
    property: Property,
    failure: Option<Failure<K>>,
) -> PropertyReport {
    match failure {
        None => PropertyReport::holding(property),
        Some((args, l, r)) => PropertyReport::unequal(
            property,
            args.iter().map(|&a| Element::new(a)).collect(),
            Element::new(l),
            Element::new(r),
        ),
    }
}

/// Right Bol identity `(xy*z)y = x(yz*y)` over all triples.
pub fn check_right_bol(t: &CayleyTable) -> PropertyReport {
    let m = |a, b| t.op(a, b);
    report_from(
        Property::RightBol,
        scan_triples(t.order(), |x, y, z| {
            (m(m(m(x, y), z), y), m(x, m(m(y, z), y)))
        }),
    )
}

/// Flexible law `x*yx = xy*x` over all pairs.
pub fn check_flexible(t: &CayleyTable) -> PropertyReport {
    let m = |a, b| t.op(a, b);
    report_from(
        Property::Flexible,
        scan_pairs(t.order(), |x, y| (m(x, m(y, x)), m(m(x, y), x))),
    )
}

/// Moufang taken as right Bol together with the flexible law. The failing
/// sub-report is embedded as the witness.
pub fn check_moufang(t: &CayleyTable) -> PropertyReport {
    let bol = check_right_bol(t);
    if !bol.holds {
        return PropertyReport::from_sub(Property::Moufang, bol);
    }
    PropertyReport::from_sub(Property::Moufang, check_flexible(t))
}

/// `xy*y = x*yy`
pub fn check_right_alternative(t: &CayleyTable) -> PropertyReport {
    let m = |a, b| t.op(a, b);
    report_from(
        Property::RightAlternative,
        scan_pairs(t.order(), |x, y| (m(m(x, y), y), m(x, m(y, y)))),
    )
}

/// `x*xy = xx*y`
pub fn check_left_alternative(t: &CayleyTable) -> PropertyReport {
    let m = |a, b| t.op(a, b);
    report_from(
        Property::LeftAlternative,
        scan_pairs(t.order(), |x, y| (m(x, m(x, y)), m(m(x, x), y))),
    )
}

pub fn check_associative(t: &CayleyTable) -> PropertyReport {
    let m = |a, b| t.op(a, b);
    report_from(
        Property::Associative,
        scan_triples(t.order(), |x, y, z| (m(m(x, y), z), m(x, m(y, z)))),
    )
}

/// Neutral element present and every left and right translation bijective.
///
/// Translations are examined in the order `R(0), L(0), R(1), L(1), ...`;
/// the witness names the first one that collapses two elements.
pub fn is_loop(t: &CayleyTable) -> PropertyReport {
    if t.neutral().is_none() {
        return PropertyReport::missing(Property::Loop, vec![]);
    }
    let n = t.order();
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for side in [Side::Right, Side::Left] {
            seen.fill(usize::MAX);
            for x in 0..n {
                let image = match side {
                    Side::Right => t.op(x, a),
                    Side::Left => t.op(a, x),
                };
                if seen[image] != usize::MAX {
                    return PropertyReport::failing(
                        Property::Loop,
                        Witness::NotBijective {
                            side,
                            at: Element::new(a),
                            first: Element::new(seen[image]),
                            second: Element::new(x),
                        },
                    );
                }
                seen[image] = x;
            }
        }
    }
    PropertyReport::holding(Property::Loop)
}
