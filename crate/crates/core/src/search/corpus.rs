use rayon::prelude::*;

use crate::magma::{check_right_bol, verify_theorems, PropertyReport};
use crate::ring::verify_corollaries;

use super::spec::Structure;

/// One failed statement on one corpus structure.
#[derive(Clone, Debug)]
pub struct CorpusFailure {
    /// Position of the structure in the corpus.
    pub index: usize,
    pub report: PropertyReport,
}

#[derive(Clone, Debug, Default)]
pub struct CorpusSummary {
    pub structures: usize,
    pub magmas: usize,
    pub rings: usize,
    /// Structures outside every hypothesis (non-Bol or neutral-free magmas,
    /// invalid rings).
    pub skipped: usize,
    pub checks: usize,
    pub failures: Vec<CorpusFailure>,
}

impl CorpusSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

enum Verdict {
    Skipped,
    Checked(Vec<PropertyReport>),
}

fn verdict(structure: &Structure) -> Verdict {
    match structure {
        Structure::Magma(t) => {
            if t.neutral().is_none() || !check_right_bol(t).holds {
                return Verdict::Skipped;
            }
            match verify_theorems(t) {
                Ok(suite) => Verdict::Checked(suite.reports),
                Err(_) => Verdict::Skipped,
            }
        }
        Structure::Ring(r) => match verify_corollaries(r) {
            Ok(reports) => Verdict::Checked(reports),
            Err(crate::Error::InvalidRing(_)) => Verdict::Skipped,
            Err(crate::Error::TheoremViolation(report)) => Verdict::Checked(vec![*report]),
            Err(other) => panic!("unexpected error verifying a valid ring: {other}"),
        },
    }
}

/// Runs every applicable statement on each structure: the closure and
/// Moufang theorems plus all lemma checks for Bol magmas with neutral
/// element, and the loop and Moufang corollaries for rings. Any failure is
/// recorded with its index.
pub fn verify_corpus<'a>(corpus: impl IntoIterator<Item = &'a Structure>) -> CorpusSummary {
    let corpus: Vec<&Structure> = corpus.into_iter().collect();
    let verdicts: Vec<Verdict> = corpus.par_iter().map(|s| verdict(s)).collect();
    let mut summary = CorpusSummary {
        structures: corpus.len(),
        ..CorpusSummary::default()
    };
    for (index, (structure, verdict)) in corpus.iter().zip(verdicts).enumerate() {
        match structure {
            Structure::Magma(_) => summary.magmas += 1,
            Structure::Ring(_) => summary.rings += 1,
        }
        match verdict {
            Verdict::Skipped => summary.skipped += 1,
            Verdict::Checked(reports) => {
                summary.checks += reports.len();
                summary.failures.extend(
                    reports
                        .into_iter()
                        .filter(|r| !r.holds)
                        .map(|report| CorpusFailure { index, report }),
                );
            }
        }
    }
    summary
}
