use crate::error::{Error, Result};
use crate::magma::{Element, Property, PropertyReport, Witness};
use crate::ring::{
    check_left_alternative, check_right_alternative, check_strongly_right_alternative,
};

use super::enumerate_structures;
use super::spec::{
    Certificate, SearchKind, SearchMode, SearchOptions, SearchResult, SearchSpec, Structure, Target,
};

/// Searches Bol magmas with neutral element for invertible elements whose
/// product is not invertible.
///
/// Finite hits are impossible by the closure theorem, so every certificate
/// is re-derived through code that shares nothing with the checkers before
/// it is reported; a certificate the cross-check rejects is an internal
/// error. In exhaustive mode orders `1..=spec.order` are covered in turn and
/// `verified_bound` records the largest order up to which the space was
/// exhausted with no certificate.
pub fn hunt_conjecture(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult> {
    if spec.kind != SearchKind::BolMagmaWithNeutral || spec.target != Target::JNotClosed {
        return Err(Error::InvalidSpec(
            "the closure hunt needs kind bol-magma-with-neutral and target j-not-closed".into(),
        ));
    }
    let orders = match spec.mode {
        SearchMode::Exhaustive => 1..=spec.order,
        SearchMode::Random => spec.order..=spec.order,
    };
    let mut total = SearchResult {
        exhausted: true,
        ..SearchResult::default()
    };
    for order in orders {
        let mut at_order = spec.clone();
        at_order.order = order;
        let result = enumerate_structures(&at_order, options)?;
        for cert in &result.certificates {
            cross_check_closure_defect(cert)?;
            log::error!("invertible elements not closed in a finite Bol magma of order {order}");
        }
        total.emitted += result.emitted;
        total.explored += result.explored;
        total.partial_invertibles += result.partial_invertibles;
        total.budget_exceeded |= result.budget_exceeded;
        total.exhausted &= result.exhausted;
        let clean = result.exhausted && result.certificates.is_empty();
        total.certificates.extend(result.certificates);
        if clean && total.certificates.is_empty() && total.exhausted {
            total.verified_bound = Some(order);
        }
        if !result.exhausted {
            break;
        }
    }
    if spec.mode == SearchMode::Random {
        total.exhausted = false;
        total.verified_bound = None;
    }
    Ok(total)
}

/// Independent confirmation of a closure-defect certificate: right Bol
/// identity, neutral element and the defect pair, each by direct loops.
fn cross_check_closure_defect(cert: &Certificate) -> Result<()> {
    let reject = |why: &str| {
        let report = cert
            .evidence
            .clone()
            .unwrap_or_else(|| PropertyReport::missing(Property::InvertiblesClosed, vec![]));
        log::error!("closure certificate rejected: {why}: {report}");
        Err(Error::TheoremViolation(Box::new(report)))
    };
    let Structure::Magma(t) = &cert.structure else {
        return reject("certificate is not a magma");
    };
    let Some(Witness::Missing { args }) = cert.evidence.as_ref().and_then(|r| r.witness.as_ref())
    else {
        return reject("certificate carries no defect pair");
    };
    let &[a, b] = args.as_slice() else {
        return reject("defect witness is not a pair");
    };
    let n = t.order();
    let cells: Vec<Vec<usize>> = (0..n)
        .map(|x| t.row(x).iter().map(|&c| c as usize).collect())
        .collect();
    let m = |x: usize, y: usize| cells[x][y];
    let mut bol = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                bol &= m(m(m(x, y), z), y) == m(x, m(m(y, z), y));
            }
        }
    }
    let neutral = (0..n).find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x));
    let Some(e) = neutral else {
        return reject("no neutral element");
    };
    let invertible = |x: usize| (0..n).any(|y| m(x, y) == e && m(y, x) == e);
    let (a, b) = (a.index(), b.index());
    if !bol || !invertible(a) || !invertible(b) || invertible(m(a, b)) {
        return reject("independent re-check does not confirm the certificate");
    }
    Ok(())
}

/// Searches rings on a fixed additive group for strongly right alternative
/// rings that are not alternative (`not-alternative`) or right alternative
/// rings whose multiplication is not Bol (`not-bol`).
///
/// Each certificate is re-lowered from its structure constants and
/// re-verified through the ring checkers; disagreement is an internal error.
pub fn hunt_separating_rings(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult> {
    if !spec.kind.is_ring() || !matches!(spec.target, Target::NotAlternative | Target::NotBol) {
        return Err(Error::InvalidSpec(
            "ring hunts need a ring kind and target not-alternative or not-bol".into(),
        ));
    }
    let result = enumerate_structures(spec, options)?;
    for cert in &result.certificates {
        reverify_ring_certificate(spec, cert)?;
    }
    Ok(result)
}

fn reverify_ring_certificate(spec: &SearchSpec, cert: &Certificate) -> Result<()> {
    let fail = |report: PropertyReport| Err(Error::TheoremViolation(Box::new(report)));
    let Structure::Ring(ring) = &cert.structure else {
        return fail(PropertyReport::missing(
            Property::StronglyRightAlternative,
            vec![],
        ));
    };
    let relowered = cert
        .constants
        .as_ref()
        .ok_or_else(|| Error::InvalidSpec("ring certificate without structure constants".into()))?
        .lower()?;
    if &relowered != ring {
        return fail(PropertyReport::missing(Property::LeftDistributive, vec![]));
    }
    let right_alt = check_right_alternative(ring)?;
    if !right_alt.holds {
        return fail(right_alt);
    }
    let sra = check_strongly_right_alternative(ring)?;
    match spec.target {
        Target::NotBol => {
            if sra.holds {
                return fail(sra);
            }
        }
        Target::NotAlternative => {
            if spec.kind == SearchKind::SraRing && !sra.holds {
                return fail(sra);
            }
            let left = check_left_alternative(ring)?;
            if left.holds || ring.recheck(&left) != Some(true) {
                return fail(left);
            }
        }
        _ => {}
    }
    Ok(())
}

/// The pair `(a, b)` of invertible elements with non-invertible product
/// recorded in a closure certificate.
pub fn defect_pair(cert: &Certificate) -> Option<(Element, Element)> {
    match cert.evidence.as_ref()?.witness.as_ref()? {
        Witness::Missing { args } if args.len() == 2 => Some((args[0], args[1])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_hunt_small_orders_is_clean() {
        let spec = SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 4)
            .with_target(Target::JNotClosed);
        let result = hunt_conjecture(&spec, &SearchOptions::default()).unwrap();
        assert!(result.certificates.is_empty());
        assert!(result.exhausted);
        assert_eq!(result.verified_bound, Some(4));
    }

    #[test]
    fn order_one_is_trivial() {
        let spec = SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 1)
            .with_target(Target::JNotClosed);
        let result = hunt_conjecture(&spec, &SearchOptions::default()).unwrap();
        assert_eq!(result.emitted, 1);
        assert!(result.certificates.is_empty());
        assert_eq!(result.verified_bound, Some(1));
    }

    #[test]
    fn hunt_rejects_wrong_spec() {
        let spec = SearchSpec::exhaustive(SearchKind::BolLoop, 3);
        assert!(hunt_conjecture(&spec, &SearchOptions::default()).is_err());
        let spec = SearchSpec::rings(SearchKind::SraRing, vec![2]);
        assert!(hunt_separating_rings(&spec, &SearchOptions::default()).is_err());
    }

    #[test]
    fn fabricated_certificate_is_rejected() {
        // Z3 is a group: its "defect" cannot be confirmed.
        let cert = Certificate {
            structure: Structure::Magma(crate::fixtures::cyclic_group(3)),
            constants: None,
            evidence: Some(PropertyReport::missing(
                Property::InvertiblesClosed,
                vec![Element::new(1), Element::new(1)],
            )),
        };
        assert!(matches!(
            cross_check_closure_defect(&cert),
            Err(Error::TheoremViolation(_))
        ));
        assert_eq!(defect_pair(&cert), Some((Element::new(1), Element::new(1))));
    }

    #[test]
    fn one_generator_mod_2_has_no_separating_rings() {
        for target in [Target::NotAlternative, Target::NotBol] {
            for kind in [SearchKind::RightAltRing, SearchKind::SraRing] {
                let spec = SearchSpec::rings(kind, vec![2]).with_target(target);
                let result = hunt_separating_rings(&spec, &SearchOptions::default()).unwrap();
                assert!(result.certificates.is_empty());
                assert!(result.exhausted);
                assert_eq!(result.explored, 2);
            }
        }
    }
}
