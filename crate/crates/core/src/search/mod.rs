//! Exhaustive and randomized generation of small Bol magmas, Bol loops and
//! right alternative rings, with isomorphism rejection.

mod canonical;
mod corpus;
mod group;
mod hunt;
mod magma_enum;
mod ring_enum;
mod spec;

pub use canonical::{canonical_form, canonical_ring, is_canonical};
pub use corpus::{verify_corpus, CorpusFailure, CorpusSummary};
pub use group::{AdditiveGroup, StructureConstants};
pub use hunt::{defect_pair, hunt_conjecture, hunt_separating_rings};
pub use spec::{
    Certificate, SearchKind, SearchMode, SearchOptions, SearchResult, SearchSpec, SearchSummary,
    Structure, Target,
};

use crate::error::Result;

/// Runs the search described by `spec`.
///
/// Output is a pure function of `spec` unless a time budget interrupts the
/// run: thread count never changes the emitted sequence or the node count.
pub fn enumerate_structures(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult> {
    spec.validate()?;
    let run = || {
        if spec.kind.is_ring() {
            ring_enum::run(spec, options)
        } else {
            magma_enum::run(spec, options)
        }
    };
    match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| crate::Error::InvalidSpec(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}
