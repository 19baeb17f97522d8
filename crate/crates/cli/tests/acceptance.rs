//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bolkit_core::format::{read_structure, read_structures, write_structure};
use bolkit_core::magma::{
    check_associative, check_flexible, check_moufang, check_right_bol, is_loop, jloop,
    verify_theorems,
};
use bolkit_core::ring::{
    check_left_alternative, check_right_alternative, circle_magma, quasiregular_bol_loop,
    quasiregular_set, residue_ring, unit_bol_loop, units, validate_ring, verify_corollaries,
    zero_ring, zorn_decode, zorn_encode, zorn_gf2,
};
use bolkit_core::search::{
    canonical_form, enumerate_structures, hunt_conjecture, AdditiveGroup, SearchOptions,
};
use bolkit_core::{
    fixtures, CayleyTable, Element, FinRing, SearchKind, SearchSpec, Structure, Target, Witness,
};

/// Order searched beyond the required order 5, if it fits the budget.
const STRETCH_ORDER: usize = 6;
const STRETCH_BUDGET: Duration = Duration::from_secs(600);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn magmas(spec: &SearchSpec, options: &SearchOptions) -> (Vec<CayleyTable>, bool) {
    let r = enumerate_structures(spec, options).expect("valid spec");
    let tables = r
        .certificates
        .into_iter()
        .map(|c| match c.structure {
            Structure::Magma(t) => t,
            Structure::Ring(_) => unreachable!(),
        })
        .collect();
    (tables, r.exhausted)
}

fn rings(factors: &[usize]) -> Vec<FinRing> {
    let spec = SearchSpec::rings(SearchKind::SraRing, factors.to_vec());
    let r = enumerate_structures(&spec, &SearchOptions::default()).expect("valid spec");
    assert!(r.exhausted);
    r.certificates
        .into_iter()
        .map(|c| match c.structure {
            Structure::Ring(r) => r,
            Structure::Magma(_) => unreachable!(),
        })
        .collect()
}

/// Bol magmas with neutral element: every labeled table (neutral at 0) of
/// order at most 5, plus the isomorphism classes of the stretch order.
struct Corpus {
    tables: Vec<CayleyTable>,
    stretch_done: bool,
    stretch_classes: usize,
}

fn build_corpus() -> Corpus {
    let mut tables = Vec::new();
    for n in 1..=5 {
        let (t, exhausted) = magmas(
            &SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, n),
            &SearchOptions::default(),
        );
        assert!(exhausted);
        tables.extend(t);
    }
    let (stretch, stretch_done) = magmas(
        &SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, STRETCH_ORDER).iso_reduced(),
        &SearchOptions {
            jobs: None,
            budget: Some(STRETCH_BUDGET),
        },
    );
    let stretch_classes = stretch.len();
    tables.extend(stretch);
    Corpus {
        tables,
        stretch_done,
        stretch_classes,
    }
}

fn corpus_note(c: &Corpus) -> String {
    format!(
        "{} tables (all labeled of order <= 5, {} classes of order {STRETCH_ORDER}{})",
        c.tables.len(),
        c.stretch_classes,
        if c.stretch_done {
            ""
        } else {
            ", budget exceeded"
        }
    )
}

fn theorem_closed(c: &Corpus) -> Outcome {
    let failures = c
        .tables
        .iter()
        .filter(|t| match jloop(t) {
            Ok(j) => !(is_loop(&j).holds && check_right_bol(&j).holds),
            Err(_) => true,
        })
        .count();
    outcome(
        failures == 0,
        format!("{}, failures {failures}", corpus_note(c)),
    )
}

fn theorem_flex(c: &Corpus) -> Outcome {
    let flexible: Vec<&CayleyTable> = c
        .tables
        .iter()
        .filter(|t| check_flexible(t).holds)
        .collect();
    let failures = flexible
        .iter()
        .filter(|t| jloop(t).map_or(true, |j| !check_moufang(&j).holds))
        .count();
    outcome(
        failures == 0,
        format!("{} flexible tables, failures {failures}", flexible.len()),
    )
}

fn lemma_suite(c: &Corpus) -> Outcome {
    let mut checks = 0;
    let mut failures = Vec::new();
    for t in &c.tables {
        let suite = verify_theorems(t).expect("corpus tables are Bol with neutral");
        checks += suite.reports.len();
        failures.extend(suite.failures().map(|r| r.to_string()));
    }
    let first = failures
        .first()
        .map(|f| format!(", first: {f}"))
        .unwrap_or_default();
    outcome(
        failures.is_empty(),
        format!(
            "{checks} statement checks, failures {}{first}",
            failures.len()
        ),
    )
}

fn corollary_loops() -> Outcome {
    let mut corpus: Vec<(String, FinRing)> = Vec::new();
    for factors in [vec![2], vec![4], vec![2, 2]] {
        corpus.extend(
            rings(&factors)
                .into_iter()
                .map(|r| (format!("{factors:?}"), r)),
        );
    }
    corpus.extend((2..=12).map(|n| (format!("z{n}"), residue_ring(n))));
    let mut failures = Vec::new();
    for (name, r) in &corpus {
        let circle_bol = circle_magma(r).is_ok_and(|c| check_right_bol(&c).holds);
        let bol_loop = |t: &CayleyTable| is_loop(t).holds && check_right_bol(t).holds;
        let quasi = quasiregular_bol_loop(r).is_ok_and(|q| bol_loop(&q));
        let unit = r.one().is_none() || unit_bol_loop(r).is_ok_and(|u| bol_loop(&u));
        let corollaries =
            verify_corollaries(r).is_ok_and(|reports| reports.iter().all(|x| x.holds));
        if !(circle_bol && quasi && unit && corollaries) {
            failures.push(name.clone());
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} rings (SRA on [2], [4], [2,2] plus z2..z12), failures {failures:?}",
            corpus.len()
        ),
    )
}

fn corollary_moufang() -> Outcome {
    let started = Instant::now();
    let r = zorn_gf2();
    let valid = validate_ring(&r).iter().all(|x| x.holds);
    let alternative = check_left_alternative(&r).is_ok_and(|x| x.holds)
        && check_right_alternative(&r).is_ok_and(|x| x.holds);
    let assoc = check_associative(r.mul_table());
    let e = Element::new;
    let recorded = Some(Witness::Unequal {
        args: vec![e(1), e(2), e(4)],
        lhs: e(64),
        rhs: e(0),
    });
    let assoc_ok = !assoc.holds && assoc.witness == recorded;
    // Brute-force inverse scan straight from the vector-matrix product.
    let one = zorn_encode(bolkit_core::ring::ZornElement {
        a: 1,
        u: 0,
        v: 0,
        d: 1,
    });
    let mul = |x: usize, y: usize| {
        zorn_encode(bolkit_core::ring::zorn_mul(zorn_decode(x), zorn_decode(y)))
    };
    let oracle = (0..256)
        .filter(|&x| (0..256).any(|y| mul(x, y) == one && mul(y, x) == one))
        .count();
    let unit_count = units(&r).map_or(0, |u| u.len());
    let extraction = started.elapsed();
    let moufang = unit_bol_loop(&r).is_ok_and(|l| check_moufang(&l).holds);
    let elapsed = started.elapsed();
    outcome(
        valid && alternative && assoc_ok && oracle == 120 && unit_count == oracle && moufang,
        format!(
            "valid {valid}, alternative {alternative}, associativity fails at (1, 2, 4) {assoc_ok}, \
             units {unit_count} (oracle {oracle}), unit loop Moufang {moufang}, \
             extraction {:.2?}, total {:.2?}",
            extraction, elapsed
        ),
    )
}

fn sanity_values() -> Outcome {
    let members =
        |s: &bolkit_core::InvertibleSet| s.members().iter().map(|m| m.index()).collect::<Vec<_>>();
    let u6 = units(&residue_ring(6)).map(|s| members(&s));
    let u4 = units(&residue_ring(4)).map(|s| members(&s));
    let q4 = quasiregular_set(&residue_ring(4)).map(|s| members(&s));
    let g = AdditiveGroup::new(vec![2, 3]).unwrap();
    let zero = zero_ring(&g.table());
    let zero_ok = quasiregular_set(&zero).is_ok_and(|q| {
        q.len() == zero.order()
            && zero
                .add_table()
                .elements()
                .all(|x| q.inverse(x) == zero.neg(x))
    });
    let pass = u6 == Ok(vec![1, 5]) && u4 == Ok(vec![1, 3]) && q4 == Ok(vec![0, 2]) && zero_ok;
    outcome(
        pass,
        format!("units(z6) {u6:?}, units(z4) {u4:?}, quasi(z4) {q4:?}, zero ring quasi-inverse = negation {zero_ok}"),
    )
}

fn conjecture_harness() -> Outcome {
    let spec =
        SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 5).with_target(Target::JNotClosed);
    match hunt_conjecture(&spec, &SearchOptions::default()) {
        Ok(r) => outcome(
            r.certificates.is_empty() && r.exhausted && r.verified_bound == Some(5),
            format!(
                "certificates {}, exhausted {}, verified bound {:?}, structures {}",
                r.certificates.len(),
                r.exhausted,
                r.verified_bound,
                r.emitted
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn naive_bol(n: usize, cells: &[usize]) -> bool {
    let m = |x: usize, y: usize| cells[x * n + y];
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m(m(m(x, y), z), y) == m(x, m(m(y, z), y)))))
}

fn search_integrity(c: &Corpus, bin: &Path) -> Outcome {
    // Pruned enumeration against a filter over every table, orders 1..=4.
    let mut pruned_ok = true;
    for n in 1..=4usize {
        let free: Vec<usize> = (1..n)
            .flat_map(|r| (1..n).map(move |c| r * n + c))
            .collect();
        let mut cells: Vec<usize> = (0..n * n)
            .map(|i| {
                if i < n {
                    i
                } else if i % n == 0 {
                    i / n
                } else {
                    0
                }
            })
            .collect();
        let mut filtered = BTreeSet::new();
        for mut code in 0..n.pow(free.len() as u32) {
            for &f in &free {
                cells[f] = code % n;
                code /= n;
            }
            if naive_bol(n, &cells) {
                let t =
                    CayleyTable::from_cells(n, cells.iter().map(|&v| v as u16).collect()).unwrap();
                filtered.insert(canonical_form(&t).unwrap().cells().to_vec());
            }
        }
        let (reduced, _) = magmas(
            &SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, n).iso_reduced(),
            &SearchOptions::default(),
        );
        let pruned: BTreeSet<Vec<u16>> = reduced.iter().map(|t| t.cells().to_vec()).collect();
        pruned_ok &= pruned == filtered && pruned.len() == reduced.len();
    }

    // Canonical form under random relabelings.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let sample: Vec<&CayleyTable> = c.tables.choose_multiple(&mut rng, 50).collect();
    let mut invariant = true;
    for t in &sample {
        let canon = canonical_form(t).unwrap();
        let mut perm: Vec<usize> = (0..t.order()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            invariant &= canonical_form(&t.relabel(&perm).unwrap()).unwrap() == canon;
        }
    }

    // Search output independent of the thread count.
    let run = |jobs: &str, dir: &Path| {
        let status = Command::new(bin)
            .args([
                "search",
                "--kind",
                "bol-magma",
                "--order",
                "5",
                "--mode",
                "random",
                "--seed",
                "17",
            ])
            .args([
                "--samples",
                "20000",
                "--iso-reduce",
                "--jobs",
                jobs,
                "--out",
            ])
            .arg(dir)
            .output()
            .expect("run search");
        let read = |f: &str| std::fs::read(dir.join(f)).unwrap_or_default();
        (
            status.status.success(),
            read("summary.json"),
            read("certificates.txt"),
        )
    };
    let tmp = tempfile::tempdir().unwrap();
    let one = run("1", &tmp.path().join("j1"));
    let four = run("4", &tmp.path().join("j4"));
    let identical = one.0 && four.0 && !one.1.is_empty() && one == four;

    outcome(
        pruned_ok && invariant && identical,
        format!(
            "pruned = filtered (orders 1-4) {pruned_ok}, canonical form invariant over {}x100 relabelings {invariant}, \
             --jobs 1 vs 4 byte-identical {identical}",
            sample.len()
        ),
    )
}

fn format_round_trip(c: &Corpus, bin: &Path) -> Outcome {
    let mut corpus: Vec<Structure> = c.tables.iter().cloned().map(Structure::Magma).collect();
    corpus.extend(
        c.tables
            .iter()
            .filter_map(|t| jloop(t).ok())
            .map(Structure::Magma),
    );
    for factors in [vec![2], vec![4], vec![2, 2], vec![2, 4], vec![8]] {
        corpus.extend(rings(&factors).into_iter().map(Structure::Ring));
    }
    corpus.extend(
        fixtures::small_rings()
            .into_iter()
            .map(|(_, r)| Structure::Ring(r)),
    );
    corpus.extend(
        fixtures::groups_up_to(8)
            .into_iter()
            .map(|g| Structure::Magma(g.table)),
    );
    corpus.push(Structure::Ring(zorn_gf2()));
    let mismatches = corpus
        .iter()
        .filter(|s| {
            let text = write_structure(s);
            match read_structure(&text) {
                Ok(back) => &back != *s || write_structure(&back) != text,
                Err(_) => true,
            }
        })
        .count();

    // Certificates written by the search command parse back to the emitted
    // structures.
    let tmp = tempfile::tempdir().unwrap();
    let ok = Command::new(bin)
        .args(["search", "--kind", "bol-magma", "--order", "4", "--out"])
        .arg(tmp.path())
        .output()
        .is_ok_and(|o| o.status.success());
    let written = std::fs::read_to_string(tmp.path().join("certificates.txt")).unwrap_or_default();
    let (expected, _) = magmas(
        &SearchSpec::exhaustive(SearchKind::BolMagmaWithNeutral, 4),
        &SearchOptions::default(),
    );
    let cli_ok = ok
        && read_structures(&written).is_ok_and(|back| {
            back == expected
                .into_iter()
                .map(Structure::Magma)
                .collect::<Vec<_>>()
        });
    outcome(
        mismatches == 0 && cli_ok,
        format!(
            "{} structures, mismatches {mismatches}, search certificates re-read {cli_ok}",
            corpus.len()
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let bin = Path::new(env!("CARGO_BIN_EXE_bolkit"));
    let started = Instant::now();
    let corpus = build_corpus();
    let criteria: Vec<Criterion> = vec![
        ("theorem closed", Box::new(|| theorem_closed(&corpus))),
        ("theorem flex", Box::new(|| theorem_flex(&corpus))),
        ("lemma suite", Box::new(|| lemma_suite(&corpus))),
        ("corollary loops", Box::new(corollary_loops)),
        ("corollary moufang fixture", Box::new(corollary_moufang)),
        ("sanity values", Box::new(sanity_values)),
        ("conjecture harness", Box::new(conjecture_harness)),
        (
            "search integrity",
            Box::new(|| search_integrity(&corpus, bin)),
        ),
        (
            "format round-trip",
            Box::new(|| format_round_trip(&corpus, bin)),
        ),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        failed += !result.pass as usize;
        println!(
            "criterion {} {name}: {} ({}) [{:.2?}]",
            k + 1,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            t.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
