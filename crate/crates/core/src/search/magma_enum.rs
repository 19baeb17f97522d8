//! Depth-first fill of Cayley tables with neutral element 0, pruned by the
//! right Bol identity on fully determined triples.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::magma::{
    check_right_bol, closure_defect, invertible_set, is_loop, CayleyTable, Property, PropertyReport,
};

use super::canonical::canonical_labels;
use super::spec::{
    Certificate, SearchKind, SearchMode, SearchOptions, SearchResult, SearchSpec, Structure, Target,
};

const UNSET: u8 = u8::MAX;

/// Subtrees handed to workers are cut at this many filled cells (or fewer
/// when the table is small).
const SPLIT_DEPTH: usize = 3;

/// How often the deadline is polled, in nodes.
const POLL_INTERVAL: u64 = 1 << 12;

/// Static description of the search space for one order.
pub(crate) struct MagmaEngine {
    n: usize,
    latin: bool,
    /// Free cells in fill order (row-major, row and column 0 excluded).
    free: Vec<usize>,
    /// Triples that can fail: `x` and `y` non-neutral.
    triples: Vec<[u8; 3]>,
    /// `cuts[k]`: relabelings `(pi, pi^-1)` fixing 0 that map `{1..=k}` onto
    /// itself, used once rows `1..=k` are filled. Empty unless reducing up to
    /// isomorphism.
    cuts: Vec<Vec<(Vec<u8>, Vec<u8>)>>,
}

/// Most relabelings tried per completed row.
const MAX_CUT_PERMUTATIONS: usize = 720;

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn factorial(k: usize) -> usize {
    (1..=k)
        .try_fold(1usize, |acc, i| acc.checked_mul(i))
        .unwrap_or(usize::MAX)
}

/// Relabelings preserving `{1..=k}` and `{k+1..n-1}`, identity excluded.
fn block_relabelings(n: usize, k: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    if factorial(k).saturating_mul(factorial(n - 1 - k)) > MAX_CUT_PERMUTATIONS {
        return Vec::new();
    }
    let low: Vec<u8> = (1..=k as u8).collect();
    let high: Vec<u8> = (k as u8 + 1..n as u8).collect();
    let mut out = Vec::new();
    for a in permutations(&low) {
        for b in permutations(&high) {
            let pi: Vec<u8> = std::iter::once(0)
                .chain(a.iter().copied())
                .chain(b.iter().copied())
                .collect();
            if pi.iter().enumerate().all(|(i, &v)| i == v as usize) {
                continue;
            }
            let mut inv = vec![0u8; n];
            for (i, &v) in pi.iter().enumerate() {
                inv[v as usize] = i as u8;
            }
            out.push((pi, inv));
        }
    }
    out
}

#[derive(Clone)]
pub(crate) struct Partial {
    cells: Vec<u8>,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

pub(crate) enum Flow {
    Continue,
    Stop,
}

impl MagmaEngine {
    pub(crate) fn new(n: usize, latin: bool, iso_reduce: bool) -> Self {
        let free = (1..n)
            .flat_map(|r| (1..n).map(move |c| r * n + c))
            .collect();
        let mut triples = Vec::new();
        for x in 1..n {
            for y in 1..n {
                for z in 0..n {
                    triples.push([x as u8, y as u8, z as u8]);
                }
            }
        }
        let cuts = (0..n)
            .map(|k| {
                if iso_reduce && (1..n.saturating_sub(1)).contains(&k) {
                    block_relabelings(n, k)
                } else {
                    Vec::new()
                }
            })
            .collect();
        MagmaEngine {
            n,
            latin,
            free,
            triples,
            cuts,
        }
    }

    pub(crate) fn root(&self) -> Partial {
        let n = self.n;
        let mut cells = vec![UNSET; n * n];
        let mut rows = vec![0u64; n];
        let mut cols = vec![0u64; n];
        for x in 0..n {
            cells[x] = x as u8;
            cells[x * n] = x as u8;
            rows[x] |= 1 << x;
            cols[x] |= 1 << x;
        }
        rows[0] = (1u64 << n) - 1;
        cols[0] = rows[0];
        Partial { cells, rows, cols }
    }

    pub(crate) fn free_cells(&self) -> usize {
        self.free.len()
    }

    /// False iff some triple is fully determined and violates the identity.
    fn consistent(&self, cells: &[u8]) -> bool {
        let n = self.n;
        let at = |x: u8, y: u8| cells[x as usize * n + y as usize];
        for &[x, y, z] in &self.triples {
            let xy = at(x, y);
            if xy == UNSET {
                continue;
            }
            let yz = at(y, z);
            if yz == UNSET {
                continue;
            }
            let xyz = at(xy, z);
            if xyz == UNSET {
                continue;
            }
            let yzy = at(yz, y);
            if yzy == UNSET {
                continue;
            }
            let lhs = at(xyz, y);
            if lhs == UNSET {
                continue;
            }
            let rhs = at(x, yzy);
            if rhs != UNSET && lhs != rhs {
                return false;
            }
        }
        true
    }

    /// True when rows `1..=k` are filled and some relabeling in `cuts[k]`
    /// makes them lexicographically smaller. Every completion then has a
    /// smaller isomorphic copy, so none is canonical.
    fn dominated(&self, cells: &[u8], k: usize) -> bool {
        let n = self.n;
        self.cuts[k].iter().any(|(pi, inv)| {
            for i in 1..=k {
                let source = inv[i] as usize * n;
                for j in 1..n {
                    let moved = pi[cells[source + inv[j] as usize] as usize];
                    let here = cells[i * n + j];
                    if moved != here {
                        return moved < here;
                    }
                }
            }
            false
        })
    }

    fn allowed(&self, p: &Partial, cell: usize) -> u64 {
        let all = (1u64 << self.n) - 1;
        if self.latin {
            all & !(p.rows[cell / self.n] | p.cols[cell % self.n])
        } else {
            all
        }
    }

    fn set(&self, p: &mut Partial, cell: usize, v: usize) {
        p.cells[cell] = v as u8;
        p.rows[cell / self.n] |= 1 << v;
        p.cols[cell % self.n] |= 1 << v;
    }

    fn unset(&self, p: &mut Partial, cell: usize, v: usize) {
        p.cells[cell] = UNSET;
        p.rows[cell / self.n] &= !(1 << v);
        p.cols[cell % self.n] &= !(1 << v);
    }

    /// Explores the subtree below `p`, whose first `depth` free cells are
    /// filled. `visit` sees every complete table; `nodes` counts consistent
    /// partial tables.
    pub(crate) fn explore(
        &self,
        p: &mut Partial,
        depth: usize,
        stop_at: usize,
        nodes: &mut u64,
        visit: &mut dyn FnMut(&Partial) -> Flow,
        halt: &dyn Fn(u64) -> bool,
    ) -> Flow {
        if depth == stop_at {
            return visit(p);
        }
        let cell = self.free[depth];
        let allowed = self.allowed(p, cell);
        for v in 0..self.n {
            if allowed & (1 << v) == 0 {
                continue;
            }
            self.set(p, cell, v);
            if self.consistent(&p.cells) {
                *nodes += 1;
                let row = cell / self.n;
                if cell % self.n == self.n - 1 && self.dominated(&p.cells, row) {
                    self.unset(p, cell, v);
                    continue;
                }
                if ((*nodes).is_multiple_of(POLL_INTERVAL) && halt(*nodes))
                    || matches!(
                        self.explore(p, depth + 1, stop_at, nodes, visit, halt),
                        Flow::Stop
                    )
                {
                    self.unset(p, cell, v);
                    return Flow::Stop;
                }
            }
            self.unset(p, cell, v);
        }
        Flow::Continue
    }
}

impl Partial {
    pub(crate) fn to_table(&self, n: usize) -> CayleyTable {
        CayleyTable::from_cells(n, self.cells.iter().map(|&c| c as u16).collect())
            .expect("complete table")
    }

    pub(crate) fn is_canonical(&self, n: usize) -> bool {
        let labels = canonical_labels(n, 0, |x, y| self.cells[x * n + y] as usize);
        let mut ok = true;
        'outer: for x in 0..n {
            for y in 0..n {
                let moved = labels[self.cells[x * n + y] as usize] as u8;
                let expected = self.cells[labels[x] * n + labels[y]];
                if moved != expected {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    }
}

/// What one complete table contributes to the result.
struct Outcome {
    certificate: Option<Certificate>,
    partial_invertibles: bool,
}

fn assess(table: CayleyTable, target: Target) -> Result<Outcome> {
    let s = invertible_set(&table)?;
    let partial_invertibles = s.len() < table.order();
    let certificate = match target {
        Target::None => Some(Certificate {
            structure: Structure::Magma(table),
            constants: None,
            evidence: None,
        }),
        Target::JNotClosed => closure_defect(&table, &s).map(|(a, b)| Certificate {
            structure: Structure::Magma(table),
            constants: None,
            evidence: Some(PropertyReport::missing(
                Property::InvertiblesClosed,
                vec![a, b],
            )),
        }),
        Target::NotAlternative | Target::NotBol => unreachable!("rejected by validation"),
    };
    Ok(Outcome {
        certificate,
        partial_invertibles,
    })
}

#[derive(Default)]
struct Chunk {
    outcomes: Vec<Outcome>,
    nodes: u64,
    error: Option<crate::Error>,
}

pub(crate) fn run(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult> {
    match spec.mode {
        SearchMode::Exhaustive => exhaustive(spec, options),
        SearchMode::Random => random(spec, options),
    }
}

fn exhaustive(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult> {
    let n = spec.order;
    let engine = MagmaEngine::new(n, spec.kind == SearchKind::BolLoop, spec.iso_reduce);
    let deadline = options.budget.map(|b| Instant::now() + b);
    let timed_out = AtomicBool::new(false);
    let halt = |_: u64| {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out.store(true, Ordering::Relaxed);
        }
        timed_out.load(Ordering::Relaxed)
    };

    let split = SPLIT_DEPTH.min(engine.free_cells());
    let mut prefixes = Vec::new();
    let mut result = SearchResult::default();
    engine.explore(
        &mut engine.root(),
        0,
        split,
        &mut result.explored,
        &mut |p| {
            prefixes.push(p.clone());
            Flow::Continue
        },
        &|_| false,
    );

    // `quota` caps the outcomes collected in this subtree.
    let solve = |prefix: &Partial, quota: Option<u64>| -> Chunk {
        let mut chunk = Chunk::default();
        let mut p = prefix.clone();
        let mut nodes = 0;
        engine.explore(
            &mut p,
            split,
            engine.free_cells(),
            &mut nodes,
            &mut |complete| {
                if spec.iso_reduce && !complete.is_canonical(n) {
                    return Flow::Continue;
                }
                match assess(complete.to_table(n), spec.target) {
                    Ok(outcome) => chunk.outcomes.push(outcome),
                    Err(e) => {
                        chunk.error = Some(e);
                        return Flow::Stop;
                    }
                }
                if quota.is_some_and(|q| chunk.outcomes.len() as u64 >= q) {
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            },
            &halt,
        );
        chunk.nodes = nodes;
        chunk
    };

    let absorb = |chunk: Chunk, result: &mut SearchResult| -> Result<()> {
        if let Some(e) = chunk.error {
            return Err(e);
        }
        result.explored += chunk.nodes;
        for outcome in chunk.outcomes {
            result.emitted += 1;
            result.partial_invertibles += outcome.partial_invertibles as u64;
            result.certificates.extend(outcome.certificate);
        }
        Ok(())
    };

    let mut limit_reached = false;
    if let Some(limit) = spec.limit {
        // Sequential so that the cut-off point does not depend on scheduling.
        for prefix in &prefixes {
            if result.emitted >= limit {
                limit_reached = true;
                break;
            }
            let chunk = solve(prefix, Some(limit - result.emitted));
            absorb(chunk, &mut result)?;
            if timed_out.load(Ordering::Relaxed) {
                break;
            }
        }
        limit_reached |= result.emitted >= limit;
    } else {
        let chunks: Vec<Chunk> = prefixes.par_iter().map(|p| solve(p, None)).collect();
        for chunk in chunks {
            absorb(chunk, &mut result)?;
        }
    }
    result.budget_exceeded = timed_out.load(Ordering::Relaxed);
    result.exhausted = !result.budget_exceeded && !limit_reached;
    Ok(result)
}

/// Uniform complete tables (neutral row and column fixed) filtered by the
/// kind's predicate. Draw `i` uses its own ChaCha stream, so the outcome
/// does not depend on the thread count.
fn random(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult> {
    let n = spec.order;
    let deadline = options.budget.map(|b| Instant::now() + b);
    let timed_out = AtomicBool::new(false);
    let draws: Vec<Option<CayleyTable>> = (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            if i % POLL_INTERVAL == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                timed_out.store(true, Ordering::Relaxed);
            }
            if timed_out.load(Ordering::Relaxed) {
                return None;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(i);
            let table = CayleyTable::from_fn(n, |x, y| match (x, y) {
                (0, y) => y,
                (x, 0) => x,
                _ => rng.gen_range(0..n),
            })
            .expect("valid random table");
            let keep = check_right_bol(&table).holds
                && (spec.kind != SearchKind::BolLoop || is_loop(&table).holds);
            keep.then_some(table)
        })
        .collect();

    let mut result = SearchResult {
        explored: spec.samples,
        ..SearchResult::default()
    };
    let mut seen = std::collections::HashSet::new();
    for table in draws.into_iter().flatten() {
        let table = if spec.iso_reduce {
            let canon = super::canonical::canonical_form(&table)?;
            if !seen.insert(canon.clone()) {
                continue;
            }
            canon
        } else {
            table
        };
        if spec.limit.is_some_and(|l| result.emitted >= l) {
            break;
        }
        let outcome = assess(table, spec.target)?;
        result.emitted += 1;
        result.partial_invertibles += outcome.partial_invertibles as u64;
        result.certificates.extend(outcome.certificate);
    }
    result.budget_exceeded = timed_out.load(Ordering::Relaxed);
    // Random mode never certifies coverage.
    result.exhausted = false;
    Ok(result)
}
