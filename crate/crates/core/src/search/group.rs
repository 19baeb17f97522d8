use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::magma::CayleyTable;
use crate::ring::FinRing;

/// A direct sum of cyclic groups `Z_m0 + Z_m1 + ...`.
///
/// Element `(x0, x1, ...)` has index `x0 + m0*(x1 + m1*(...))`, so for
/// `[2, 2, 2]` the index is the bit mask of the coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdditiveGroup {
    factors: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

impl AdditiveGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::InvalidSpec(
                "additive group needs positive cyclic factors".into(),
            ));
        }
        let mut strides = Vec::with_capacity(factors.len());
        let mut order = 1usize;
        for &m in &factors {
            strides.push(order);
            order = order
                .checked_mul(m)
                .filter(|&o| o <= crate::Element::MAX_ORDER)
                .ok_or_else(|| Error::InvalidSpec("additive group too large".into()))?;
        }
        Ok(AdditiveGroup {
            factors,
            strides,
            order,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Index of the `i`-th generator.
    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn coord(&self, x: usize, i: usize) -> usize {
        x / self.strides[i] % self.factors[i]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        (0..self.rank())
            .map(|i| (self.coord(x, i) + self.coord(y, i)) % self.factors[i] * self.strides[i])
            .sum()
    }

    /// `k * x`.
    pub fn scale(&self, k: usize, x: usize) -> usize {
        (0..self.rank())
            .map(|i| k * self.coord(x, i) % self.factors[i] * self.strides[i])
            .sum()
    }

    pub fn table(&self) -> CayleyTable {
        CayleyTable::from_fn(self.order, |x, y| self.add(x, y)).expect("group table")
    }

    /// Elements `c` with `k * c = 0`.
    pub fn annihilated_by(&self, k: usize) -> Vec<usize> {
        (0..self.order).filter(|&c| self.scale(k, c) == 0).collect()
    }

    /// Every automorphism as an image array, identity first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let choices: Vec<Vec<usize>> = self
            .factors
            .iter()
            .map(|&m| self.annihilated_by(m))
            .collect();
        let mut autos = Vec::new();
        let mut images = vec![0usize; self.rank()];
        self.collect_automorphisms(&choices, 0, &mut images, &mut autos);
        autos.sort_by_key(|a| a.iter().enumerate().any(|(i, &x)| i != x));
        autos
    }

    fn collect_automorphisms(
        &self,
        choices: &[Vec<usize>],
        i: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == self.rank() {
            let map: Vec<usize> = (0..self.order)
                .map(|x| {
                    (0..self.rank()).fold(0, |acc, j| {
                        self.add(acc, self.scale(self.coord(x, j), images[j]))
                    })
                })
                .collect();
            let mut seen = vec![false; self.order];
            if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                out.push(map);
            }
            return;
        }
        for &c in &choices[i] {
            images[i] = c;
            self.collect_automorphisms(choices, i + 1, images, out);
        }
    }
}

/// Products of generator pairs, `e_i * e_j`, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StructureConstants {
    pub additive_group: Vec<usize>,
    pub products: Vec<usize>,
}

impl StructureConstants {
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.products[i * self.additive_group.len() + j]
    }

    /// Extends the generator products bilinearly to a full ring.
    pub fn lower(&self) -> Result<FinRing> {
        let group = AdditiveGroup::new(self.additive_group.clone())?;
        let k = group.rank();
        if self.products.len() != k * k || self.products.iter().any(|&c| c >= group.order()) {
            return Err(Error::InvalidSpec(
                "structure constants do not match the group".into(),
            ));
        }
        let mul = |x: usize, y: usize| {
            let mut acc = 0;
            for i in 0..k {
                for j in 0..k {
                    let coeff = group.coord(x, i) * group.coord(y, j);
                    acc = group.add(acc, group.scale(coeff, self.product(i, j)));
                }
            }
            acc
        };
        FinRing::new(group.table(), CayleyTable::from_fn(group.order(), mul)?)
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.additive_group.len();
        let group: Vec<String> = self.additive_group.iter().map(|m| m.to_string()).collect();
        write!(f, "group=[{}]", group.join(","))?;
        for i in 0..k {
            for j in 0..k {
                write!(f, " e{i}*e{j}={}", self.product(i, j))?;
            }
        }
        Ok(())
    }
}
