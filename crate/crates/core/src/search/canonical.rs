use crate::error::{Error, Result};
use crate::magma::CayleyTable;
use crate::ring::FinRing;

use super::group::AdditiveGroup;

const UNLABELED: usize = usize::MAX;

/// Branch-and-bound search for the relabeling (neutral -> 0) whose table is
/// lexicographically least in row-major order.
///
/// Row 0 and column 0 are the same for every such relabeling, so the
/// comparison starts at `(1, 1)`. Every label is fixed by the end of row 1:
/// a column whose label is still free branches over the unlabeled elements,
/// and an unlabeled product always takes the next free label, since any
/// larger label loses at that cell while earlier cells are unaffected.
struct Canonizer<'a, F> {
    n: usize,
    op: &'a F,
    label_of: Vec<usize>,
    element_of: Vec<usize>,
    next: usize,
    current: Vec<usize>,
    best: Option<Vec<usize>>,
    best_labels: Vec<usize>,
    /// Bumped whenever `best` changes.
    improvements: u64,
}

impl<'a, F: Fn(usize, usize) -> usize> Canonizer<'a, F> {
    fn new(n: usize, op: &'a F, neutral: usize) -> Self {
        let mut c = Canonizer {
            n,
            op,
            label_of: vec![UNLABELED; n],
            element_of: vec![UNLABELED; n],
            next: 0,
            current: Vec::with_capacity((n - 1) * (n - 1)),
            best: None,
            best_labels: Vec::new(),
            improvements: 0,
        };
        c.assign(neutral);
        c
    }

    fn assign(&mut self, element: usize) {
        self.label_of[element] = self.next;
        self.element_of[self.next] = element;
        self.next += 1;
    }

    fn unassign(&mut self) {
        self.next -= 1;
        let element = self.element_of[self.next];
        self.label_of[element] = UNLABELED;
        self.element_of[self.next] = UNLABELED;
    }

    /// `less` records whether the current prefix is already strictly below
    /// the best table. A new best found below this frame shares the current
    /// prefix, so after one the prefix is no longer below it.
    fn search(&mut self, pos: usize, less: bool) {
        let side = self.n - 1;
        if pos == side * side {
            if less || self.best.is_none() {
                self.best = Some(self.current.clone());
                self.best_labels = self.label_of.clone();
                self.improvements += 1;
            }
            return;
        }
        let (i, j) = (pos / side + 1, pos % side + 1);
        if j == self.next {
            let seen = self.improvements;
            for element in 0..self.n {
                if self.label_of[element] == UNLABELED {
                    self.assign(element);
                    self.place(pos, i, j, less && self.improvements == seen);
                    self.unassign();
                }
            }
        } else {
            self.place(pos, i, j, less);
        }
    }

    fn place(&mut self, pos: usize, i: usize, j: usize, less: bool) {
        let product = (self.op)(self.element_of[i], self.element_of[j]);
        let fresh = self.label_of[product] == UNLABELED;
        if fresh {
            self.assign(product);
        }
        let value = self.label_of[product];
        let mut now_less = less;
        let keep = match (&self.best, less) {
            (Some(best), false) => {
                now_less = value < best[pos];
                value <= best[pos]
            }
            _ => true,
        };
        if keep {
            self.current.push(value);
            self.search(pos + 1, now_less);
            self.current.pop();
        }
        if fresh {
            self.unassign();
        }
    }
}

/// Relabeling `element -> label` producing the canonical table.
pub(crate) fn canonical_labels(
    n: usize,
    neutral: usize,
    op: impl Fn(usize, usize) -> usize,
) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    let mut c = Canonizer::new(n, &op, neutral);
    c.search(0, false);
    c.best_labels
}

/// Least row-major table over all relabelings sending the neutral element
/// to 0. Isomorphic tables with neutral element have equal canonical forms.
pub fn canonical_form(t: &CayleyTable) -> Result<CayleyTable> {
    let neutral = t.require_neutral()?.index();
    let labels = canonical_labels(t.order(), neutral, |x, y| t.op(x, y));
    t.relabel(&labels)
}

pub fn is_canonical(t: &CayleyTable) -> Result<bool> {
    Ok(&canonical_form(t)? == t)
}

/// Row-major least multiplication table over the automorphisms of the
/// additive group. `autos` must contain the identity.
pub(crate) fn min_mul_under(
    autos: &[Vec<usize>],
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut candidate = vec![0usize; n * n];
    for pi in autos {
        let mut inverse = vec![0usize; n];
        for (x, &y) in pi.iter().enumerate() {
            inverse[y] = x;
        }
        // Cell (a, b) of the relabeled table is pi(mul(pi^-1 a, pi^-1 b)).
        let mut ordering = std::cmp::Ordering::Equal;
        for a in 0..n {
            for b in 0..n {
                let v = pi[mul(inverse[a], inverse[b])];
                candidate[a * n + b] = v;
                if ordering == std::cmp::Ordering::Equal {
                    if let Some(best) = &best {
                        ordering = v.cmp(&best[a * n + b]);
                    }
                }
            }
            if ordering == std::cmp::Ordering::Greater {
                break;
            }
        }
        if best.is_none() || ordering == std::cmp::Ordering::Less {
            best = Some(candidate.clone());
        }
    }
    best.expect("identity automorphism present")
}

/// Isomorphism-invariant form of a ring whose addition is `group`: the
/// additive table is kept and the multiplication table minimized over the
/// automorphisms of the additive group.
pub fn canonical_ring(r: &FinRing, group: &AdditiveGroup) -> Result<FinRing> {
    if r.add_table() != &group.table() {
        return Err(Error::InvalidTable(
            "ring addition does not match the additive group".into(),
        ));
    }
    let cells = min_mul_under(&group.automorphisms(), r.order(), |x, y| {
        r.mul_table().op(x, y)
    });
    let mul = CayleyTable::from_cells(r.order(), cells.into_iter().map(|c| c as u16).collect())?;
    FinRing::new(group.table(), mul)
}
