use std::collections::BTreeSet;
use std::time::Duration;

use bolkit_core::search::{canonical_form, enumerate_structures, SearchOptions};
use bolkit_core::{CayleyTable, SearchKind, SearchResult, SearchSpec, Structure};

fn naive_bol(n: usize, cells: &[usize]) -> bool {
    let m = |x: usize, y: usize| cells[x * n + y];
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m(m(m(x, y), z), y) == m(x, m(m(y, z), y)))))
}

fn table(n: usize, cells: &[usize]) -> CayleyTable {
    CayleyTable::from_cells(n, cells.iter().map(|&c| c as u16).collect()).unwrap()
}

/// Every table with row and column 0 the identity, no pruning at all.
fn brute_force_tables(n: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let free: Vec<usize> = (1..n)
        .flat_map(|r| (1..n).map(move |c| r * n + c))
        .collect();
    let mut cells: Vec<usize> = (0..n * n)
        .map(|i| {
            if i / n == 0 {
                i % n
            } else if i % n == 0 {
                i / n
            } else {
                0
            }
        })
        .collect();
    let total = n.pow(free.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        for &f in &free {
            cells[f] = code % n;
            code /= n;
        }
        if keep(&cells) {
            out.push(cells.clone());
        }
    }
    out
}

fn tables(result: &SearchResult) -> Vec<CayleyTable> {
    result
        .certificates
        .iter()
        .map(|c| match &c.structure {
            Structure::Magma(t) => t.clone(),
            Structure::Ring(_) => panic!("magma search emitted a ring"),
        })
        .collect()
}

fn run(spec: &SearchSpec) -> SearchResult {
    enumerate_structures(spec, &SearchOptions::default()).unwrap()
}

#[test]
fn pruned_matches_unpruned_bol_magmas() {
    for n in 1..=4 {
        let oracle = brute_force_tables(n, |c| naive_bol(n, c));
        let oracle_tables: BTreeSet<Vec<u16>> = oracle
            .iter()
            .map(|c| c.iter().map(|&v| v as u16).collect())
            .collect();

        let labeled = run(&SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, n));
        assert!(labeled.exhausted);
        let found: BTreeSet<Vec<u16>> = tables(&labeled)
            .iter()
            .map(|t| t.cells().to_vec())
            .collect();
        assert_eq!(labeled.emitted as usize, oracle.len(), "order {n}");
        assert_eq!(found, oracle_tables, "order {n}");

        let reduced =
            run(&SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, n).iso_reduced());
        let canon_oracle: BTreeSet<Vec<u16>> = oracle
            .iter()
            .map(|c| canonical_form(&table(n, c)).unwrap().cells().to_vec())
            .collect();
        let canon_found: BTreeSet<Vec<u16>> = tables(&reduced)
            .iter()
            .map(|t| t.cells().to_vec())
            .collect();
        assert_eq!(
            canon_found.len() as u64,
            reduced.emitted,
            "duplicates at order {n}"
        );
        assert_eq!(canon_found, canon_oracle, "order {n}");
    }
}

/// Reduced Latin squares (row and column 0 the identity) by plain
/// backtracking.
fn latin_squares(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cells: &mut Vec<usize>, pos: usize, out: &mut Vec<Vec<usize>>) {
        if pos == n * n {
            out.push(cells.clone());
            return;
        }
        let (r, c) = (pos / n, pos % n);
        if r == 0 || c == 0 {
            cells[pos] = r.max(c);
            return go(n, cells, pos + 1, out);
        }
        for v in 0..n {
            let clash =
                (0..c).any(|j| cells[r * n + j] == v) || (0..r).any(|i| cells[i * n + c] == v);
            if !clash {
                cells[pos] = v;
                go(n, cells, pos + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![0; n * n], 0, &mut out);
    out
}

#[test]
fn bol_loops_match_filtered_latin_squares() {
    for n in 1..=6 {
        let oracle: Vec<Vec<usize>> = latin_squares(n)
            .into_iter()
            .filter(|c| naive_bol(n, c))
            .collect();
        let labeled = run(&SearchSpec::exhaustive(SearchKind::BolLoop, n));
        assert_eq!(labeled.emitted as usize, oracle.len(), "order {n}");
        let reduced = run(&SearchSpec::exhaustive(SearchKind::BolLoop, n).iso_reduced());
        let canon_oracle: BTreeSet<Vec<u16>> = oracle
            .iter()
            .map(|c| canonical_form(&table(n, c)).unwrap().cells().to_vec())
            .collect();
        let canon_found: BTreeSet<Vec<u16>> = tables(&reduced)
            .iter()
            .map(|t| t.cells().to_vec())
            .collect();
        assert_eq!(canon_found, canon_oracle, "order {n}");
    }
}

#[test]
fn small_bol_loop_counts() {
    // Up to order 7 every Bol loop is a group; order 8 adds six proper ones.
    let expected = [
        (1, 1),
        (2, 1),
        (3, 1),
        (4, 2),
        (5, 1),
        (6, 2),
        (7, 1),
        (8, 11),
    ];
    for (n, count) in expected {
        let r = run(&SearchSpec::exhaustive(SearchKind::BolLoop, n).iso_reduced());
        assert!(r.exhausted);
        assert_eq!(r.emitted, count, "order {n}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    for spec in [
        SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 5),
        SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 5).iso_reduced(),
        SearchSpec::exhaustive(SearchKind::BolLoop, 5)
            .random(7, 3000)
            .iso_reduced(),
        SearchSpec::rings(SearchKind::RightAltRing, vec![2, 2]),
    ] {
        let one = enumerate_structures(
            &spec,
            &SearchOptions {
                jobs: Some(1),
                budget: None,
            },
        )
        .unwrap();
        let four = enumerate_structures(
            &spec,
            &SearchOptions {
                jobs: Some(4),
                budget: None,
            },
        )
        .unwrap();
        assert_eq!(one.emitted, four.emitted);
        assert_eq!(one.explored, four.explored);
        let structures = |r: &SearchResult| {
            r.certificates
                .iter()
                .map(|c| c.structure.clone())
                .collect::<Vec<_>>()
        };
        assert_eq!(structures(&one), structures(&four));
    }
}

#[test]
fn random_mode_depends_only_on_seed() {
    let spec = SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 4).random(11, 5000);
    let a = run(&spec);
    let b = run(&spec);
    assert_eq!(tables(&a), tables(&b));
    assert!(!a.exhausted);
    assert!(a.emitted > 0);
    let other = run(&SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 4).random(12, 5000));
    assert_ne!(tables(&a), tables(&other));
    for t in tables(&a) {
        assert!(naive_bol(
            4,
            &t.cells().iter().map(|&c| c as usize).collect::<Vec<_>>()
        ));
    }
}

#[test]
fn limit_takes_a_prefix_of_the_full_run() {
    let full = run(&SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 4));
    let mut spec = SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 4);
    spec.limit = Some(10);
    let limited = run(&spec);
    assert_eq!(limited.emitted, 10);
    assert!(!limited.exhausted);
    assert_eq!(tables(&limited), tables(&full)[..10].to_vec());
}

#[test]
fn budget_interrupts_without_claiming_coverage() {
    let spec = SearchSpec::exhaustive(SearchKind::BolLoop, 8);
    let r = enumerate_structures(
        &spec,
        &SearchOptions {
            jobs: Some(1),
            budget: Some(Duration::from_nanos(1)),
        },
    )
    .unwrap();
    assert!(r.budget_exceeded);
    assert!(!r.exhausted);
}

#[test]
fn emitted_magmas_are_bol_with_neutral_zero() {
    let r = run(&SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 5).iso_reduced());
    for t in tables(&r) {
        assert_eq!(t.neutral().map(|e| e.index()), Some(0));
        assert!(naive_bol(
            5,
            &t.cells().iter().map(|&c| c as usize).collect::<Vec<_>>()
        ));
        assert_eq!(canonical_form(&t).unwrap(), t);
    }
}
