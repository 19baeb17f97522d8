use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element of a finite structure, `0..order`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(u16);

impl Element {
    pub const MAX_ORDER: usize = u16::MAX as usize;

    /// Panics if `index` does not fit the 16-bit index space.
    pub fn new(index: usize) -> Self {
        assert!(
            index < Self::MAX_ORDER,
            "element index {index} out of range"
        );
        Element(index as u16)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<Element> for usize {
    fn from(e: Element) -> usize {
        e.index()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite magma given by its full operation table.
///
/// Entry `(x, y)` holds the product `x*y`. The two-sided neutral element, if
/// any, is located once at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u16>,
    neutral: Option<Element>,
}

impl CayleyTable {
    /// Builds a table from a row-major cell vector of length `order * order`.
    pub fn from_cells(order: usize, cells: Vec<u16>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if order > Element::MAX_ORDER {
            return Err(Error::InvalidTable(format!(
                "order {order} exceeds {}",
                Element::MAX_ORDER
            )));
        }
        if cells.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} cells for order {order}, got {}",
                order * order,
                cells.len()
            )));
        }
        if let Some(pos) = cells.iter().position(|&c| c as usize >= order) {
            return Err(Error::InvalidTable(format!(
                "entry at row {} column {} is {}, outside 0..{order}",
                pos / order,
                pos % order,
                cells[pos]
            )));
        }
        if order > crate::LARGE_ORDER_WARNING {
            log::warn!("order {order} table: cubic identity checks will be slow");
        }
        let mut table = CayleyTable {
            order,
            cells,
            neutral: None,
        };
        table.neutral = find_neutral(&table);
        Ok(table)
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidTable(format!(
                        "row {i} has entry {v}, outside 0..{order}"
                    )));
                }
                cells.push(v as u16);
            }
        }
        Self::from_cells(order, cells)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut cells = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let v = f(x, y);
                if v >= order {
                    return Err(Error::InvalidTable(format!(
                        "product {x}*{y} = {v}, outside 0..{order}"
                    )));
                }
                cells.push(v as u16);
            }
        }
        Self::from_cells(order, cells)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn neutral(&self) -> Option<Element> {
        self.neutral
    }

    pub fn require_neutral(&self) -> Result<Element> {
        self.neutral.ok_or(Error::NoNeutral)
    }

    /// Product on raw indices. Callers guarantee `x, y < order`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        Element(self.cells[x.index() * self.order + y.index()])
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order {
            Ok(Element::new(index))
        } else {
            Err(Error::InvalidTable(format!(
                "element {index} outside 0..{}",
                self.order
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(Element::new)
    }

    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn row(&self, x: usize) -> &[u16] {
        &self.cells[x * self.order..(x + 1) * self.order]
    }

    /// The isomorphic copy under the bijection `perm`: `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        if perm.len() != n {
            return Err(Error::InvalidTable("relabeling has wrong length".into()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidTable(
                    "relabeling is not a permutation".into(),
                ));
            }
        }
        let mut cells = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[perm[x] * n + perm[y]] = perm[self.op(x, y)] as u16;
            }
        }
        Self::from_cells(n, cells)
    }

    /// The sub-magma on `members` (sorted, closed), re-indexed by position.
    pub(crate) fn restrict(&self, members: &[Element]) -> Result<Self> {
        let mut position = vec![usize::MAX; self.order];
        for (i, m) in members.iter().enumerate() {
            position[m.index()] = i;
        }
        let k = members.len();
        let mut cells = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                let p = position[self.op(a.index(), b.index())];
                if p == usize::MAX {
                    return Err(Error::NotClosed(a, b));
                }
                cells.push(p as u16);
            }
        }
        Self::from_cells(k, cells)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.op(x, y) == self.op(y, x)))
    }
}

/// Scans for the unique two-sided neutral element.
///
/// One-sided identities are never returned.
pub fn find_neutral(t: &CayleyTable) -> Option<Element> {
    let n = t.order();
    (0..n)
        .find(|&e| (0..n).all(|x| t.op(e, x) == x && t.op(x, e) == x))
        .map(Element::new)
}
