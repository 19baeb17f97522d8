//! Pointwise checks of the translation identities and inverse formulas that
//! hold in every right Bol magma with a neutral element.

use crate::error::{Error, Result};

use super::identities::{check_flexible, check_moufang, check_right_bol, is_loop};
use super::invertible::{closure_defect, invertible_set, InvertibleSet};
use super::power::{power, torsion_witness};
use super::report::{Property, PropertyReport};
use super::table::{CayleyTable, Element};
use super::translation::{left_translation, right_translation, Translation};

fn require_bol_with_neutral(t: &CayleyTable) -> Result<Element> {
    let e = t.require_neutral()?;
    let bol = check_right_bol(t);
    if !bol.holds {
        return Err(Error::NotBol(Box::new(bol)));
    }
    Ok(e)
}

/// Four universally quantified translation statements for a right Bol
/// magma with neutral element, in this order:
///
/// 1. `R(a)^n = R(a^n)` for every `a` and `0 <= n <= 2 * order`
///    (witness `(a, n, x)`, the exponent carried as an index);
/// 2. `R(a)R(a^-1) = R(a^-1)R(a) = I` for every invertible `a`;
/// 3. `R(a)L(a^-1)R(a^-1)` is a two-sided inverse of `L(a)`;
/// 4. `R(y)R(z)R(y) = R(yz*y)` for all `y, z`.
pub fn verify_translation_lemmas(t: &CayleyTable) -> Result<Vec<PropertyReport>> {
    require_bol_with_neutral(t)?;
    let s = invertible_set(t)?;
    Ok(translation_reports(t, &s))
}

fn translation_reports(t: &CayleyTable, s: &InvertibleSet) -> Vec<PropertyReport> {
    let n = t.order();
    let e = t.neutral().expect("checked by caller");
    let rights: Vec<Translation> = t.elements().map(|a| right_translation(t, a)).collect();
    let lefts: Vec<Translation> = t.elements().map(|a| left_translation(t, a)).collect();
    let r = |a: Element| &rights[a.index()];
    let l = |a: Element| &lefts[a.index()];

    let powers = t
        .elements()
        .find_map(|a| {
            let mut composite = Translation::identity(n);
            let mut p = e;
            for k in 0..=2 * n {
                if let Some(x) = composite.first_difference(r(p)) {
                    return Some(PropertyReport::unequal(
                        Property::PowerTranslation,
                        vec![a, Element::new(k), x],
                        composite.apply(x),
                        r(p).apply(x),
                    ));
                }
                composite = composite.then(r(a));
                p = t.mul(p, a);
            }
            None
        })
        .unwrap_or_else(|| PropertyReport::holding(Property::PowerTranslation));

    let inverse_right = s
        .pairs()
        .find_map(|(a, ai)| {
            let both = [r(a).then(r(ai)), r(ai).then(r(a))];
            let x = both
                .iter()
                .filter_map(|f| f.first_difference(&Translation::identity(n)))
                .min()?;
            let f = both.iter().find(|f| f.apply(x) != x).unwrap();
            Some(PropertyReport::unequal(
                Property::InverseTranslation,
                vec![a, x],
                f.apply(x),
                x,
            ))
        })
        .unwrap_or_else(|| PropertyReport::holding(Property::InverseTranslation));

    let inverse_left = s
        .pairs()
        .find_map(|(a, ai)| {
            let candidate = r(a).then(l(ai)).then(r(ai));
            let both = [l(a).then(&candidate), candidate.then(l(a))];
            let x = both
                .iter()
                .filter_map(|f| f.first_difference(&Translation::identity(n)))
                .min()?;
            let f = both.iter().find(|f| f.apply(x) != x).unwrap();
            Some(PropertyReport::unequal(
                Property::LeftTranslationInverse,
                vec![a, x],
                f.apply(x),
                x,
            ))
        })
        .unwrap_or_else(|| PropertyReport::holding(Property::LeftTranslationInverse));

    let bol_translation = t
        .elements()
        .flat_map(|y| t.elements().map(move |z| (y, z)))
        .find_map(|(y, z)| {
            let lhs = r(y).then(r(z)).then(r(y));
            let rhs = r(t.mul(t.mul(y, z), y));
            let x = lhs.first_difference(rhs)?;
            Some(PropertyReport::unequal(
                Property::BolTranslation,
                vec![y, z, x],
                lhs.apply(x),
                rhs.apply(x),
            ))
        })
        .unwrap_or_else(|| PropertyReport::holding(Property::BolTranslation));

    vec![powers, inverse_right, inverse_left, bol_translation]
}

fn right_inverse_formula(
    t: &CayleyTable,
    a: Element,
    ai: Element,
    b: Element,
    bi: Element,
) -> Element {
    let m = |x, y| t.mul(x, y);
    m(m(m(m(bi, ai), m(b, a)), ai), bi)
}

/// Right inverse of `ab` from the closed form `(b^-1 a^-1 * ba) a^-1 * b^-1`.
///
/// Fails with [`Error::TheoremViolation`] if the value is not a right inverse.
pub fn product_right_inverse(t: &CayleyTable, a: Element, b: Element) -> Result<Element> {
    let e = require_bol_with_neutral(t)?;
    let s = invertible_set(t)?;
    let ai = s.require_inverse(a)?;
    let bi = s.require_inverse(b)?;
    let c = right_inverse_formula(t, a, ai, b, bi);
    let ab_c = t.mul(t.mul(a, b), c);
    if ab_c != e {
        return Err(Error::TheoremViolation(Box::new(PropertyReport::unequal(
            Property::ProductRightInverse,
            vec![a, b],
            ab_c,
            e,
        ))));
    }
    Ok(c)
}

/// Checks that `R(b)R(a)L(b^-1 a^-1)R(a^-1)R(b^-1)` is a two-sided inverse of
/// `L(ab)` and that `ab` has exactly one right inverse.
///
/// A composite failure has witness `(a, b, x)`; a second right inverse is
/// reported as `(a, b)` with the two inverses as the sides.
pub fn verify_left_product_inverse(
    t: &CayleyTable,
    a: Element,
    b: Element,
) -> Result<PropertyReport> {
    require_bol_with_neutral(t)?;
    let s = invertible_set(t)?;
    let ai = s.require_inverse(a)?;
    let bi = s.require_inverse(b)?;
    Ok(left_product_inverse_report(t, a, ai, b, bi))
}

fn left_product_inverse_report(
    t: &CayleyTable,
    a: Element,
    ai: Element,
    b: Element,
    bi: Element,
) -> PropertyReport {
    let n = t.order();
    let e = t.neutral().unwrap();
    let ab = t.mul(a, b);
    let l_ab = left_translation(t, ab);
    let candidate = right_translation(t, b)
        .then(&right_translation(t, a))
        .then(&left_translation(t, t.mul(bi, ai)))
        .then(&right_translation(t, ai))
        .then(&right_translation(t, bi));
    let both = [l_ab.then(&candidate), candidate.then(&l_ab)];
    if let Some(x) = both
        .iter()
        .filter_map(|f| f.first_difference(&Translation::identity(n)))
        .min()
    {
        let f = both.iter().find(|f| f.apply(x) != x).unwrap();
        return PropertyReport::unequal(Property::LeftProductInverse, vec![a, b, x], f.apply(x), x);
    }
    let mut right_inverses = t.elements().filter(|&c| t.mul(ab, c) == e);
    match (right_inverses.next(), right_inverses.next()) {
        (Some(_), None) => PropertyReport::holding(Property::LeftProductInverse),
        (Some(c1), Some(c2)) => {
            PropertyReport::unequal(Property::LeftProductInverse, vec![a, b], c1, c2)
        }
        (None, _) => PropertyReport::missing(Property::LeftProductInverse, vec![a, b]),
    }
}

/// `ab = ca = 1` forces `b = c`. Witness `(a, b, c)` with sides `b`, `c`.
pub fn lemma_lr_check(t: &CayleyTable) -> Result<PropertyReport> {
    require_bol_with_neutral(t)?;
    Ok(lr_report(t))
}

fn lr_report(t: &CayleyTable) -> PropertyReport {
    let e = t.neutral().unwrap();
    for a in t.elements() {
        for b in t.elements().filter(|&b| t.mul(a, b) == e) {
            if let Some(c) = t.elements().find(|&c| t.mul(c, a) == e && c != b) {
                return PropertyReport::unequal(Property::OneSidedInverses, vec![a, b, c], b, c);
            }
        }
    }
    PropertyReport::holding(Property::OneSidedInverses)
}

/// Torsion: every element's least repeated power is a genuine minimal
/// repeat within `order + 1` steps, and every right inverse is two-sided.
fn torsion_report(t: &CayleyTable) -> PropertyReport {
    let e = t.neutral().unwrap();
    let order = t.order();
    for a in t.elements() {
        let (m, n) = torsion_witness(t, a).expect("neutral present");
        let pw = |k| power(t, a, k).expect("neutral present");
        let minimal = (1..n).all(|k| (0..k).all(|j| pw(j) != pw(k)));
        if m >= n || n > order + 1 || pw(m) != pw(n) || !minimal {
            return PropertyReport::unequal(Property::Torsion, vec![a], pw(m), pw(n));
        }
    }
    for a in t.elements() {
        for b in t.elements().filter(|&b| t.mul(a, b) == e) {
            let ba = t.mul(b, a);
            if ba != e {
                return PropertyReport::unequal(Property::Torsion, vec![a, b], ba, e);
            }
        }
    }
    PropertyReport::holding(Property::Torsion)
}

/// Every report produced for one right Bol magma with neutral element.
#[derive(Clone, Debug)]
pub struct TheoremSuite {
    pub reports: Vec<PropertyReport>,
    pub flexible: bool,
    /// Order of the loop of invertible elements, when it could be built.
    pub invertible_order: Option<usize>,
}

impl TheoremSuite {
    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyReport> {
        self.reports.iter().filter(|r| !r.holds)
    }
}

/// Runs the closure theorem, its Moufang variant for flexible inputs, and
/// every lemma check on one right Bol magma with neutral element.
///
/// Statement failures are returned as data; only a missing hypothesis is an
/// error.
pub fn verify_theorems(t: &CayleyTable) -> Result<TheoremSuite> {
    require_bol_with_neutral(t)?;
    let flexible = check_flexible(t).holds;
    let mut reports = Vec::new();

    let s = match invertible_set(t) {
        Ok(s) => {
            reports.push(PropertyReport::holding(Property::UniqueInverse));
            s
        }
        Err(Error::NonUniqueInverse { a, first, second }) => {
            reports.push(PropertyReport::unequal(
                Property::UniqueInverse,
                vec![a],
                first,
                second,
            ));
            return Ok(TheoremSuite {
                reports,
                flexible,
                invertible_order: None,
            });
        }
        Err(other) => return Err(other),
    };

    let mut invertible_order = None;
    match closure_defect(t, &s) {
        Some((a, b)) => reports.push(PropertyReport::missing(
            Property::InvertiblesClosed,
            vec![a, b],
        )),
        None => {
            reports.push(PropertyReport::holding(Property::InvertiblesClosed));
            let j = t.restrict(s.members())?;
            invertible_order = Some(j.order());
            let as_loop = is_loop(&j);
            let report = if as_loop.holds {
                check_right_bol(&j)
            } else {
                as_loop
            };
            reports.push(PropertyReport::from_sub(Property::InvertibleLoop, report));
            if flexible {
                reports.push(PropertyReport::from_sub(
                    Property::InvertibleMoufang,
                    check_moufang(&j),
                ));
            }
        }
    }

    reports.extend(translation_reports(t, &s));
    reports.push(lr_report(t));

    let mut formula = PropertyReport::holding(Property::ProductRightInverse);
    let mut composite = PropertyReport::holding(Property::LeftProductInverse);
    let e = t.neutral().unwrap();
    'pairs: for (a, ai) in s.pairs() {
        for (b, bi) in s.pairs() {
            if formula.holds {
                let c = right_inverse_formula(t, a, ai, b, bi);
                let ab = t.mul(a, b);
                // Independent route: scan for the right inverse directly.
                match t.elements().find(|&x| t.mul(ab, x) == e) {
                    Some(scanned) if scanned == c => {}
                    Some(scanned) => {
                        formula = PropertyReport::unequal(
                            Property::ProductRightInverse,
                            vec![a, b],
                            c,
                            scanned,
                        )
                    }
                    None => {
                        formula = PropertyReport::missing(Property::ProductRightInverse, vec![a, b])
                    }
                }
            }
            if composite.holds {
                composite = left_product_inverse_report(t, a, ai, b, bi);
            }
            if !formula.holds && !composite.holds {
                break 'pairs;
            }
        }
    }
    reports.push(formula);
    reports.push(composite);
    reports.push(torsion_report(t));

    Ok(TheoremSuite {
        reports,
        flexible,
        invertible_order,
    })
}
