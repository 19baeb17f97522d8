use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::magma::{CayleyTable, PropertyReport};
use crate::ring::FinRing;

use super::group::StructureConstants;

/// Largest order accepted for the magma kinds.
pub const MAX_MAGMA_ORDER: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    BolMagmaWithNeutral,
    BolLoop,
    RightAltRing,
    SraRing,
}

impl SearchKind {
    pub fn is_ring(self) -> bool {
        matches!(self, SearchKind::RightAltRing | SearchKind::SraRing)
    }

    pub fn tag(self) -> &'static str {
        match self {
            SearchKind::BolMagmaWithNeutral => "bol-magma-with-neutral",
            SearchKind::BolLoop => "bol-loop",
            SearchKind::RightAltRing => "right-alt-ring",
            SearchKind::SraRing => "sra-ring",
        }
    }
}

impl FromStr for SearchKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bol-magma" | "bol-magma-with-neutral" => Ok(SearchKind::BolMagmaWithNeutral),
            "bol-loop" => Ok(SearchKind::BolLoop),
            "right-alt-ring" => Ok(SearchKind::RightAltRing),
            "sra-ring" => Ok(SearchKind::SraRing),
            _ => Err(format!("unknown kind `{s}`")),
        }
    }
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    /// Complete tables (or structure constants) drawn uniformly, then filtered.
    Random,
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// Predicate a structure must satisfy to become a certificate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    None,
    /// Invertible elements not closed under multiplication.
    JNotClosed,
    /// Fails the left alternative law.
    NotAlternative,
    /// Multiplication fails the right Bol identity.
    NotBol,
}

impl Target {
    pub fn tag(self) -> &'static str {
        match self {
            Target::None => "none",
            Target::JNotClosed => "j-not-closed",
            Target::NotAlternative => "not-alternative",
            Target::NotBol => "not-bol",
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Target::None),
            "j-not-closed" => Ok(Target::JNotClosed),
            "not-alternative" => Ok(Target::NotAlternative),
            "not-bol" => Ok(Target::NotBol),
            _ => Err(format!("unknown target `{s}`")),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchSpec {
    pub kind: SearchKind,
    pub order: usize,
    /// Cyclic factors of the additive group; ring kinds only.
    pub additive_group: Vec<usize>,
    pub mode: SearchMode,
    pub seed: u64,
    /// Number of draws in random mode.
    pub samples: u64,
    pub iso_reduce: bool,
    pub target: Target,
    /// Stop after this many emitted structures.
    pub limit: Option<u64>,
}

impl SearchSpec {
    pub fn exhaustive(kind: SearchKind, order: usize) -> Self {
        SearchSpec {
            kind,
            order,
            additive_group: Vec::new(),
            mode: SearchMode::Exhaustive,
            seed: 0,
            samples: 0,
            iso_reduce: false,
            target: Target::None,
            limit: None,
        }
    }

    /// Exhaustive ring search over the given additive group.
    pub fn rings(kind: SearchKind, additive_group: Vec<usize>) -> Self {
        let order = additive_group.iter().product();
        SearchSpec {
            additive_group,
            ..Self::exhaustive(kind, order)
        }
    }

    pub fn iso_reduced(mut self) -> Self {
        self.iso_reduce = true;
        self
    }

    pub fn with_target(mut self, target: Target) -> Self {
        self.target = target;
        self
    }

    pub fn random(mut self, seed: u64, samples: u64) -> Self {
        self.mode = SearchMode::Random;
        self.seed = seed;
        self.samples = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.order == 0 {
            return bad("order must be at least 1".into());
        }
        if self.kind.is_ring() {
            if self.additive_group.is_empty() {
                return bad("ring kinds need an additive group".into());
            }
            if self.additive_group.iter().any(|&m| m < 2) {
                return bad("additive group factors must be at least 2".into());
            }
            let product: usize = self.additive_group.iter().product();
            if product != self.order {
                return bad(format!(
                    "additive group has order {product}, spec order is {}",
                    self.order
                ));
            }
            if self.target == Target::JNotClosed {
                return bad("target j-not-closed applies to magma kinds".into());
            }
        } else {
            if !self.additive_group.is_empty() {
                return bad("additive group only applies to ring kinds".into());
            }
            if self.order > MAX_MAGMA_ORDER {
                return bad(format!(
                    "magma searches are limited to order {MAX_MAGMA_ORDER}"
                ));
            }
            if matches!(self.target, Target::NotAlternative | Target::NotBol) {
                return bad(format!(
                    "target {} applies to ring kinds",
                    self.target.tag()
                ));
            }
        }
        if self.mode == SearchMode::Random && self.samples == 0 {
            return bad("random mode needs a positive sample count".into());
        }
        Ok(())
    }
}

/// Execution knobs that never change the result of an uninterrupted run.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Wall-clock budget; exceeding it ends the run with `exhausted = false`.
    pub budget: Option<Duration>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Structure {
    Magma(CayleyTable),
    Ring(FinRing),
}

impl Structure {
    pub fn order(&self) -> usize {
        match self {
            Structure::Magma(t) => t.order(),
            Structure::Ring(r) => r.order(),
        }
    }
}

/// A structure satisfying the search target.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub structure: Structure,
    /// Generator products, for ring searches.
    pub constants: Option<StructureConstants>,
    /// The failing report that makes this a certificate, when the target is
    /// a negative predicate.
    pub evidence: Option<PropertyReport>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchResult {
    /// Structures of the requested kind (after isomorphism rejection).
    pub emitted: u64,
    /// Consistent partial tables visited (exhaustive) or draws (random).
    pub explored: u64,
    pub certificates: Vec<Certificate>,
    /// True iff the space was covered completely.
    pub exhausted: bool,
    pub budget_exceeded: bool,
    /// Largest order up to which the target was ruled out exhaustively.
    pub verified_bound: Option<usize>,
    /// Emitted structures whose invertible elements form a proper subset
    /// (magma kinds only).
    pub partial_invertibles: u64,
}

/// Deterministic, timing-free digest of a search run.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SearchSummary {
    pub kind: SearchKind,
    pub order: usize,
    pub additive_group: Vec<usize>,
    pub mode: SearchMode,
    pub seed: u64,
    pub samples: u64,
    pub iso_reduce: bool,
    pub target: Target,
    pub limit: Option<u64>,
    pub emitted: u64,
    pub explored: u64,
    pub certificates: usize,
    pub exhausted: bool,
    pub budget_exceeded: bool,
    pub verified_bound: Option<usize>,
    pub partial_invertibles: u64,
    pub characteristic: Option<usize>,
}

impl SearchSummary {
    pub fn new(spec: &SearchSpec, result: &SearchResult) -> Self {
        let characteristic = spec
            .kind
            .is_ring()
            .then(|| spec.additive_group.iter().fold(1, |acc, &m| lcm(acc, m)));
        SearchSummary {
            kind: spec.kind,
            order: spec.order,
            additive_group: spec.additive_group.clone(),
            mode: spec.mode,
            seed: spec.seed,
            samples: spec.samples,
            iso_reduce: spec.iso_reduce,
            target: spec.target,
            limit: spec.limit,
            emitted: result.emitted,
            explored: result.explored,
            certificates: result.certificates.len(),
            exhausted: result.exhausted,
            budget_exceeded: result.budget_exceeded,
            verified_bound: result.verified_bound,
            partial_invertibles: result.partial_invertibles,
            characteristic,
        }
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
