//! Rings on a fixed additive group, parametrized by the products of
//! generator pairs and extended bilinearly.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magma::{check_left_alternative, check_right_bol, CayleyTable};
use crate::ring::FinRing;

use super::group::{AdditiveGroup, StructureConstants};
use super::spec::{
    gcd, Certificate, SearchKind, SearchMode, SearchOptions, SearchResult, SearchSpec, Structure,
    Target,
};

/// Candidates per work unit; fixed so chunking never depends on thread count.
const CHUNK: u64 = 1 << 14;

struct RingSpace {
    group: AdditiveGroup,
    n: usize,
    k: usize,
    /// Admissible values of `e_i * e_j`: elements killed by `gcd(m_i, m_j)`.
    choices: Vec<Vec<usize>>,
    total: u64,
    add: Vec<usize>,
    /// `scale[c * n + x] = c * x` for `c` below the largest factor.
    scale: Vec<usize>,
    coords: Vec<Vec<usize>>,
    automorphisms: Vec<Vec<usize>>,
}

impl RingSpace {
    fn new(factors: &[usize]) -> Result<Self> {
        let group = AdditiveGroup::new(factors.to_vec())?;
        let (n, k) = (group.order(), group.rank());
        let mut choices = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                choices.push(group.annihilated_by(gcd(factors[i], factors[j])));
            }
        }
        let total = choices
            .iter()
            .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
            .ok_or_else(|| Error::InvalidSpec("structure-constant space too large".into()))?;
        let max_m = *factors.iter().max().unwrap();
        let add = (0..n * n).map(|i| group.add(i / n, i % n)).collect();
        let scale = (0..max_m * n).map(|i| group.scale(i / n, i % n)).collect();
        let coords = (0..n)
            .map(|x| (0..k).map(|i| group.coord(x, i)).collect())
            .collect();
        let automorphisms = group.automorphisms();
        Ok(RingSpace {
            group,
            n,
            k,
            choices,
            total,
            add,
            scale,
            coords,
            automorphisms,
        })
    }

    /// Candidate `t` in lexicographic order of the constants, first pair
    /// most significant.
    fn decode(&self, mut t: u64, out: &mut [usize]) {
        for (slot, choice) in out.iter_mut().zip(&self.choices).rev() {
            let len = choice.len() as u64;
            *slot = choice[(t % len) as usize];
            t /= len;
        }
    }

    fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y]
    }

    /// `rows[i * n + y] = e_i * y`.
    fn rows(&self, constants: &[usize], rows: &mut [usize]) {
        let n = self.n;
        for i in 0..self.k {
            for y in 0..n {
                let mut acc = 0;
                for (j, &coeff) in self.coords[y].iter().enumerate() {
                    if coeff != 0 {
                        acc = self.add(acc, self.scale[coeff * n + constants[i * self.k + j]]);
                    }
                }
                rows[i * n + y] = acc;
            }
        }
    }

    fn mul(&self, rows: &[usize], x: usize, y: usize) -> usize {
        let mut acc = 0;
        for (i, &coeff) in self.coords[x].iter().enumerate() {
            if coeff != 0 {
                acc = self.add(acc, self.scale[coeff * self.n + rows[i * self.n + y]]);
            }
        }
        acc
    }

    fn right_alternative(&self, rows: &[usize]) -> bool {
        (1..self.n).all(|x| {
            (1..self.n).all(|y| {
                let xy = self.mul(rows, x, y);
                let yy = self.mul(rows, y, y);
                self.mul(rows, xy, y) == self.mul(rows, x, yy)
            })
        })
    }

    fn table(&self, rows: &[usize]) -> Vec<usize> {
        (0..self.n * self.n)
            .map(|c| self.mul(rows, c / self.n, c % self.n))
            .collect()
    }

    /// True iff no additive automorphism yields a smaller row-major table.
    fn is_minimal(&self, table: &[usize]) -> bool {
        let n = self.n;
        let mut inverse = vec![0usize; n];
        for pi in &self.automorphisms[1..] {
            for (x, &y) in pi.iter().enumerate() {
                inverse[y] = x;
            }
            for cell in 0..n * n {
                let v = pi[table[inverse[cell / n] * n + inverse[cell % n]]];
                match v.cmp(&table[cell]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}

fn lower(space: &RingSpace, table: &[usize]) -> Result<FinRing> {
    let mul = CayleyTable::from_cells(space.n, table.iter().map(|&c| c as u16).collect())?;
    let ring = FinRing::new(space.group.table(), mul)?;
    // Bilinear extension guarantees the axioms; this guards the lowering.
    ring.ensure_valid()?;
    Ok(ring)
}

/// Certificate for one candidate, or `None` if it is not of the requested
/// kind (or misses the target).
fn examine(
    space: &RingSpace,
    spec: &SearchSpec,
    constants: &[usize],
    rows: &mut [usize],
) -> Result<Option<Option<Certificate>>> {
    space.rows(constants, rows);
    if !space.right_alternative(rows) {
        return Ok(None);
    }
    let table = space.table(rows);
    let mul = CayleyTable::from_cells(space.n, table.iter().map(|&c| c as u16).collect())?;
    let bol = check_right_bol(&mul);
    if spec.kind == SearchKind::SraRing && !bol.holds {
        return Ok(None);
    }
    if spec.iso_reduce && !space.is_minimal(&table) {
        return Ok(None);
    }
    let evidence = match spec.target {
        Target::None => None,
        Target::NotBol if !bol.holds => Some(bol),
        Target::NotAlternative => Some(check_left_alternative(&mul)).filter(|r| !r.holds),
        _ => None,
    };
    if spec.target != Target::None && evidence.is_none() {
        return Ok(Some(None));
    }
    let ring = lower(space, &table)?;
    Ok(Some(Some(Certificate {
        structure: Structure::Ring(ring),
        constants: Some(StructureConstants {
            additive_group: space.group.factors().to_vec(),
            products: constants.to_vec(),
        }),
        evidence,
    })))
}

#[derive(Default)]
struct Chunk {
    emitted: u64,
    certificates: Vec<Certificate>,
    explored: u64,
}

pub(crate) fn run(spec: &SearchSpec, options: &SearchOptions) -> Result<SearchResult> {
    let space = RingSpace::new(&spec.additive_group)?;
    let deadline = options.budget.map(|b| Instant::now() + b);
    let timed_out = AtomicBool::new(false);
    let expired = || {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out.store(true, Ordering::Relaxed);
        }
        timed_out.load(Ordering::Relaxed)
    };

    let kk = space.k * space.k;
    let draw = |index: u64, constants: &mut [usize]| match spec.mode {
        SearchMode::Exhaustive => space.decode(index, constants),
        SearchMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(index);
            for (slot, choice) in constants.iter_mut().zip(&space.choices) {
                *slot = choice[rng.gen_range(0..choice.len())];
            }
        }
    };
    let total = match spec.mode {
        SearchMode::Exhaustive => space.total,
        SearchMode::Random => spec.samples,
    };

    let solve = |start: u64, quota: Option<u64>| -> Result<Chunk> {
        let mut chunk = Chunk::default();
        let mut constants = vec![0usize; kk];
        let mut rows = vec![0usize; space.k * space.n];
        if expired() {
            return Ok(chunk);
        }
        for index in start..(start + CHUNK).min(total) {
            draw(index, &mut constants);
            chunk.explored += 1;
            if let Some(found) = examine(&space, spec, &constants, &mut rows)? {
                chunk.emitted += 1;
                chunk.certificates.extend(found);
                if quota.is_some_and(|q| chunk.emitted >= q) {
                    break;
                }
            }
        }
        Ok(chunk)
    };

    let starts: Vec<u64> = (0..total).step_by(CHUNK as usize).collect();
    let mut result = SearchResult::default();
    let mut limit_reached = false;
    let mut covered = 0u64;
    if let Some(limit) = spec.limit {
        for &start in &starts {
            if result.emitted >= limit {
                limit_reached = true;
                break;
            }
            let chunk = solve(start, Some(limit - result.emitted))?;
            covered += chunk.explored;
            result.explored += chunk.explored;
            result.emitted += chunk.emitted;
            result.certificates.extend(chunk.certificates);
        }
        limit_reached |= result.emitted >= limit && covered < total;
    } else {
        let chunks: Vec<Result<Chunk>> = starts.par_iter().map(|&s| solve(s, None)).collect();
        for chunk in chunks {
            let chunk = chunk?;
            covered += chunk.explored;
            result.explored += chunk.explored;
            result.emitted += chunk.emitted;
            result.certificates.extend(chunk.certificates);
        }
    }
    result.budget_exceeded = timed_out.load(Ordering::Relaxed);
    result.exhausted = spec.mode == SearchMode::Exhaustive && covered == total && !limit_reached;
    Ok(result)
}
