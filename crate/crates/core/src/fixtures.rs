//! Named structures used by tests, benches and the `fixtures` command.

use crate::magma::{CayleyTable, Element};
use crate::ring::{self, FinRing};
use crate::search::Structure;

/// A table together with a short identifying name.
#[derive(Clone, Debug)]
pub struct NamedTable {
    pub name: String,
    pub table: CayleyTable,
}

pub fn cyclic_group(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |x, y| (x + y) % n).expect("cyclic group table")
}

/// `(a, b) -> a * |B| + b`.
pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let m = b.order();
    CayleyTable::from_fn(a.order() * m, |x, y| {
        a.op(x / m, y / m) * m + b.op(x % m, y % m)
    })
    .expect("direct product table")
}

/// Symmetries of the regular `n`-gon, order `2n`; `r^i s^j` has index `i + n*j`.
pub fn dihedral_group(n: usize) -> CayleyTable {
    CayleyTable::from_fn(2 * n, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    })
    .expect("dihedral group table")
}

/// Quaternion group; index `4*sign + unit` with units `1, i, j, k`.
pub fn quaternion_group() -> CayleyTable {
    // (sign, unit) of the product of basis units.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    CayleyTable::from_fn(8, |x, y| {
        let (sign, unit) = UNIT[x % 4][y % 4];
        ((x / 4 + y / 4 + sign) % 2) * 4 + unit
    })
    .expect("quaternion group table")
}

fn named(name: &str, table: CayleyTable) -> NamedTable {
    NamedTable {
        name: name.to_string(),
        table,
    }
}

/// One representative of every group of order at most `max_order` (at most 8).
pub fn groups_up_to(max_order: usize) -> Vec<NamedTable> {
    let c = cyclic_group;
    let mut all: Vec<NamedTable> = (1..=8).map(|n| named(&format!("c{n}"), c(n))).collect();
    all.push(named("klein4", direct_product(&c(2), &c(2))));
    all.push(named("s3", dihedral_group(3)));
    all.push(named("c2xc4", direct_product(&c(2), &c(4))));
    all.push(named(
        "c2xc2xc2",
        direct_product(&direct_product(&c(2), &c(2)), &c(2)),
    ));
    all.push(named("d4", dihedral_group(4)));
    all.push(named("q8", quaternion_group()));
    all.retain(|g| g.table.order() <= max_order);
    all.sort_by_key(|g| g.table.order());
    all
}

/// Resolves a fixture name: `z<n>` (integers mod n), `zero-<m1>x<m2>...`
/// (zero multiplication on a sum of cyclic groups), `zorn_gf2`, or any group
/// name from [`groups_up_to`].
pub fn by_name(name: &str) -> Option<Structure> {
    if name == "zorn_gf2" {
        return Some(Structure::Ring(ring::zorn_gf2()));
    }
    if let Some(spec) = name.strip_prefix("zero-") {
        let factors: Option<Vec<usize>> = spec.split('x').map(|f| f.parse().ok()).collect();
        let factors = factors.filter(|f| !f.is_empty() && f.iter().all(|&m| m >= 1))?;
        let group = crate::search::AdditiveGroup::new(factors).ok()?;
        return Some(Structure::Ring(ring::zero_ring(&group.table())));
    }
    if let Some(n) = name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
        if (1..=Element::MAX_ORDER).contains(&n) {
            return Some(Structure::Ring(ring::residue_ring(n)));
        }
        return None;
    }
    groups_up_to(8)
        .into_iter()
        .find(|g| g.name == name)
        .map(|g| Structure::Magma(g.table))
}

/// The ring fixtures exercised by default: `z1..=z12` and the zero rings on
/// the groups of order 4.
pub fn small_rings() -> Vec<(String, FinRing)> {
    let mut rings: Vec<(String, FinRing)> = (1..=12)
        .map(|n| (format!("z{n}"), ring::residue_ring(n)))
        .collect();
    rings.push(("zero-4".into(), ring::zero_ring(&cyclic_group(4))));
    rings.push((
        "zero-2x2".into(),
        ring::zero_ring(&direct_product(&cyclic_group(2), &cyclic_group(2))),
    ));
    rings
}
