//! Acceptance criteria, one test per criterion. Each prints a single
//! summary line and pins its wall-clock budget; every equality is exact
//! integer arithmetic.

use std::collections::BTreeMap;
use std::fs;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rayon::prelude::*;

use epos_core::chromatic::{
    chromatic_sym, chromatic_sym_edges, clique_expand, e_coefficients, sink_histogram, AlphaMap,
};
use epos_core::escher::{
    calibrate_convention, count_eschers, count_full_corrects, disjoint_pair_count,
    enumerate_eschers, first_valid_subescher, insertion_chain_violations, is_escher, phi, psi,
    purity, subescher_case, AnchorConvention, EscherSeq, SubEscherCase,
};
use epos_core::ghom::{coeff_alpha, gcauchy_holds, m_coeff_u, m_g, verify_gnechrom};
use epos_core::partition::partitions_of;
use epos_core::uio::{closed_statement, generate_all, LogicalSym};
use epos_core::{Graph, Int, Partition, Uio};

fn finish(number: u32, started: Instant, budget_secs: u64, detail: &str) {
    let elapsed = started.elapsed();
    println!(
        "criterion {:02} PASS ({:.2}s): {}",
        number,
        elapsed.as_secs_f64(),
        detail
    );
    assert!(
        elapsed < Duration::from_secs(budget_secs),
        "criterion {:02} exceeded its {}s budget: {:.2}s",
        number,
        budget_secs,
        elapsed.as_secs_f64()
    );
}

fn uios(n: usize) -> Vec<Uio> {
    generate_all(n).unwrap()
}

fn splits(n_total: usize) -> Vec<(usize, usize)> {
    (1..=n_total / 2).map(|k| (n_total - k, k)).collect()
}

#[test]
fn criterion_01_uio_census() {
    let started = Instant::now();
    let expected: [usize; 8] = [1, 2, 5, 14, 42, 132, 429, 1430];
    let mut counts = Vec::new();
    for n in 1..=8 {
        let all = uios(n);
        assert_eq!(all.len(), expected[n - 1], "census at {} elements", n);
        counts.push(all.len().to_string());
    }
    finish(1, started, 1, &format!("census {}", counts.join(", ")));
}

#[test]
fn criterion_02_complete_graph_law() {
    let started = Instant::now();
    for n in 1..=6usize {
        let expr = e_coefficients::<Int>(&Graph::complete(n)).unwrap();
        let factorial: Int = (1..=n as Int).product();
        let top = Partition::new(vec![n as u32]).unwrap();
        assert_eq!(expr.len(), 1, "K_{} has one e-term", n);
        assert_eq!(expr.coeff(&top), factorial, "K_{} coefficient", n);
    }
    finish(2, started, 10, "complete graphs expand as n! times a single term up to n=6");
}

#[test]
fn criterion_03_dual_chromatic_equality() {
    let started = Instant::now();
    let mut graphs = 0;
    for n in 1..=6usize {
        let all = uios(n);
        graphs += all.len();
        all.par_iter().for_each(|u| {
            let g = u.incomparability_graph();
            let by_colorings = chromatic_sym::<Int>(&g, n).unwrap();
            let by_edges = chromatic_sym_edges::<Int>(&g, n).unwrap();
            assert_eq!(by_colorings, by_edges, "routes disagree for h={}", u);
        });
    }
    finish(3, started, 60, &format!("both routes agree on all {} graphs", graphs));
}

#[test]
fn criterion_04_e_positivity() {
    let started = Instant::now();
    let mut coefficients = 0usize;
    for n in 1..=6usize {
        let lambdas = partitions_of(n as u32);
        coefficients += uios(n)
            .par_iter()
            .map(|u| {
                let expr = e_coefficients::<Int>(&u.incomparability_graph()).unwrap();
                for lambda in &lambdas {
                    assert!(
                        expr.coeff(lambda) >= 0,
                        "h={} has c[{}]={}",
                        u,
                        lambda,
                        expr.coeff(lambda)
                    );
                }
                lambdas.len()
            })
            .sum::<usize>();
    }
    finish(
        4,
        started,
        120,
        &format!("{} coefficients across sizes 1..=6, none negative", coefficients),
    );
}

#[test]
fn criterion_05_correct_sequences_and_divisibility() {
    let started = Instant::now();
    for n in 1..=7usize {
        let top = Partition::new(vec![n as u32]).unwrap();
        uios(n).par_iter().for_each(|u| {
            let eschers = count_eschers(u, n).unwrap();
            let corrects = count_full_corrects(u);
            let m: Int = m_coeff_u(u, &top).unwrap();
            assert_eq!(corrects, eschers, "h={}", u);
            assert_eq!(m, eschers as i64, "h={}", u);
        });
    }
    for n in 1..=8usize {
        uios(n).par_iter().for_each(|u| {
            let eschers = count_eschers(u, n).unwrap();
            assert_eq!(eschers % n as u64, 0, "h={} has {} full Eschers", u, eschers);
        });
    }
    finish(
        5,
        started,
        120,
        "correct sequences = full Eschers = top monomial coefficient up to 7; count divisible by the order up to 8",
    );
}

#[test]
fn criterion_06_counting_identity() {
    let started = Instant::now();
    let mut identities = 0usize;
    for n_total in 2..=7usize {
        identities += uios(n_total)
            .par_iter()
            .map(|u| {
                let full = count_eschers(u, n_total).unwrap();
                for (n, k) in splits(n_total) {
                    let lambda = Partition::new(vec![n as u32, k as u32]).unwrap();
                    let m: Int = m_coeff_u(u, &lambda).unwrap();
                    let pairs = disjoint_pair_count(u, n, k).unwrap();
                    let factor: i128 = if n == k { 2 } else { 1 };
                    assert_eq!(
                        m as i128 * factor,
                        pairs as i128 - full as i128,
                        "h={} split {},{}: m={} pairs={} eschers={}",
                        u,
                        n,
                        k,
                        m,
                        pairs,
                        full
                    );
                    assert!(m >= 0, "h={} split {},{}", u, n, k);
                }
                splits(n_total).len()
            })
            .sum::<usize>();
    }
    finish(
        6,
        started,
        120,
        &format!("{} two-part identities verified, all coefficients nonnegative", identities),
    );
}

#[test]
fn criterion_07_round_trip() {
    let started = Instant::now();
    let conv = AnchorConvention::DEFAULT;
    let calibration = calibrate_convention(8).unwrap();
    assert_eq!(calibration.convention, conv, "calibration drifted");

    let mut coprime_trips = 0u64;
    let mut noncoprime_tally: BTreeMap<(usize, usize, usize), (u64, u64)> = BTreeMap::new();
    for n_total in 2..=8usize {
        for u in uios(n_total) {
            let eschers = enumerate_eschers(&u, n_total).unwrap();
            for (n, k) in splits(n_total) {
                if n == k {
                    continue;
                }
                if n.gcd(&k) == 1 {
                    let mut images: BTreeMap<(Vec<u8>, Vec<u8>), Vec<String>> = BTreeMap::new();
                    for w in &eschers {
                        let pair = phi(&u, w, n, k, conv).unwrap();
                        let back = psi(&u, pair.u(), pair.v(), conv)
                            .unwrap()
                            .unwrap_or_else(|| panic!("h={} w={} has no splice", u, w));
                        assert_eq!(back.elems(), w.elems(), "h={} split {},{}", u, n, k);
                        images
                            .entry((pair.u().elems().to_vec(), pair.v().elems().to_vec()))
                            .or_default()
                            .push(w.to_string());
                        coprime_trips += 1;
                    }
                    for (_, pre) in images {
                        assert_eq!(pre.len(), 1, "h={} preimages {}", u, pre.join(" and "));
                    }
                } else {
                    // Outside the proven scope: tallied, not asserted.
                    let entry = noncoprime_tally.entry((n_total, n, k)).or_insert((0, 0));
                    for w in &eschers {
                        let round = phi(&u, w, n, k, conv)
                            .ok()
                            .and_then(|pair| psi(&u, pair.u(), pair.v(), conv).ok().flatten())
                            .map(|back| back.elems() == w.elems());
                        entry.1 += 1;
                        if round == Some(true) {
                            entry.0 += 1;
                        }
                    }
                }
            }
        }
    }
    let noncoprime: Vec<String> = noncoprime_tally
        .iter()
        .map(|((n_total, n, k), (ok, total))| {
            format!(
                "split {},{} at {} elements: {} of {} return",
                n, k, n_total, ok, total
            )
        })
        .collect();
    finish(
        7,
        started,
        180,
        &format!(
            "{} coprime round trips are the identity with injective splitting; non-coprime tally: {}",
            coprime_trips,
            if noncoprime.is_empty() {
                "none".to_string()
            } else {
                noncoprime.join("; ")
            }
        ),
    );
}

#[test]
fn criterion_08_lemma_suites() {
    let started = Instant::now();
    let mut violations: Vec<String> = Vec::new();
    for n_total in 1..=7usize {
        let found: Vec<String> = uios(n_total)
            .par_iter()
            .map(|u| lemma_violations(u, n_total))
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            });
        violations.extend(found);
    }
    assert!(violations.is_empty(), "{}", violations.join("\n"));
    finish(
        8,
        started,
        180,
        "window trichotomy, shifted windows, valid windows, purity, insertion chains, and closed loops: zero violations up to 7 elements",
    );
}

fn lemma_violations(u: &Uio, n_total: usize) -> Vec<String> {
    let mut violations = Vec::new();
    let full_eschers = enumerate_eschers(u, n_total).unwrap();

    for w in &full_eschers {
        for k in 1..n_total {
            let n = n_total - k;
            for m in 0..n_total {
                match subescher_case(u, w, m, k) {
                    Err(e) => violations.push(format!("h={} w={} m={} k={}: {}", u, w, m, k, e)),
                    Ok(SubEscherCase::Case2) => {
                        for shift in 0..3 {
                            let window = w.window(m + k + shift, n);
                            if !is_escher(u, &window).unwrap() {
                                violations.push(format!(
                                    "h={} w={} m={} k={}: shifted window {} is not an Escher",
                                    u,
                                    w,
                                    m,
                                    k,
                                    m + k + shift
                                ));
                            }
                        }
                    }
                    Ok(_) => {}
                }
            }
            if first_valid_subescher(u, w, k).unwrap().is_none() {
                violations.push(format!("h={} w={} k={}: no valid window", u, w, k));
            }
            // Purity of the doubled chain covers every cyclic window; a
            // mixed chain errors out of the purity call.
            let mut doubled = w.elems().to_vec();
            doubled.extend_from_slice(w.elems());
            if let Err(e) = purity(u, &doubled, k) {
                violations.push(format!("h={} w={} k={}: {}", u, w, k, e));
            }
        }
    }

    for (n, k) in splits(n_total) {
        for (seq_u, seq_v) in disjoint_pairs(u, n, k) {
            match insertion_chain_violations(u, &seq_u, &seq_v) {
                Ok(found) => {
                    violations.extend(found.into_iter().map(|v| format!("h={}: {}", u, v)))
                }
                Err(e) => violations.push(format!("h={} u={} v={}: {}", u, seq_u, seq_v, e)),
            }
        }
    }

    if let Some(witness) = funlemma_violation(u, 5) {
        violations.push(format!("h={}: {}", u, witness));
    }
    violations
}

fn disjoint_pairs(u: &Uio, n: usize, k: usize) -> Vec<(EscherSeq, EscherSeq)> {
    let mut by_support_n: BTreeMap<u64, Vec<EscherSeq>> = BTreeMap::new();
    for e in enumerate_eschers(u, n).unwrap() {
        by_support_n.entry(e.support()).or_default().push(e);
    }
    let mut by_support_k: BTreeMap<u64, Vec<EscherSeq>> = BTreeMap::new();
    for e in enumerate_eschers(u, k).unwrap() {
        by_support_k.entry(e.support()).or_default().push(e);
    }
    let full = (1u64 << u.n()) - 1;
    let mut pairs = Vec::new();
    for (mask, us) in &by_support_n {
        if let Some(vs) = by_support_k.get(&(full & !mask)) {
            for a in us {
                for b in vs {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    pairs
}

fn funlemma_violation(u: &Uio, max_len: usize) -> Option<String> {
    let n = u.n() as u8;
    for len in 1..=max_len {
        for bits in 0u32..(1 << len) {
            let pattern: Vec<LogicalSym> = (0..len)
                .map(|i| {
                    if bits & (1 << i) != 0 {
                        LogicalSym::Prec
                    } else {
                        LogicalSym::Arrow
                    }
                })
                .collect();
            let precs = pattern.iter().filter(|s| **s == LogicalSym::Prec).count();
            if 2 * precs < len {
                continue;
            }
            let mut elems = Vec::with_capacity(len);
            if let Some(witness) = funlemma_search(u, n, &pattern, &mut elems) {
                return Some(witness);
            }
        }
    }
    None
}

fn funlemma_search(u: &Uio, n: u8, pattern: &[LogicalSym], elems: &mut Vec<u8>) -> Option<String> {
    if elems.len() == pattern.len() {
        if closed_statement(u, elems, pattern) {
            return Some(format!("elems={:?} pattern={:?} is satisfied", elems, pattern));
        }
        return None;
    }
    for z in 1..=n {
        if let Some(&prev) = elems.last() {
            let holds = match pattern[elems.len() - 1] {
                LogicalSym::Prec => u.prec(prev, z),
                LogicalSym::Arrow => u.arrow(prev, z),
            };
            if !holds {
                continue;
            }
        }
        elems.push(z);
        if let Some(witness) = funlemma_search(u, n, pattern, elems) {
            return Some(witness);
        }
        elems.pop();
    }
    None
}

#[test]
fn criterion_09_sink_theorem() {
    let started = Instant::now();
    let mut graphs = 0;
    for n in 1..=6usize {
        let all = uios(n);
        graphs += all.len();
        all.par_iter().for_each(|u| {
            let g = u.incomparability_graph();
            let hist = sink_histogram(&g).unwrap();
            let expr = e_coefficients::<Int>(&g).unwrap();
            for j in 1..=n {
                let sinks = hist.get(&j).copied().unwrap_or(0);
                let total: i64 = expr
                    .iter()
                    .filter(|(lambda, _)| lambda.len() == j)
                    .map(|(_, c)| *c)
                    .sum();
                assert_eq!(total, sinks as i64, "h={} j={}", u, j);
            }
        });
    }
    finish(
        9,
        started,
        60,
        &format!("orientation sink counts match coefficient masses on all {} graphs", graphs),
    );
}

#[test]
fn criterion_10_clique_expansion_bridge() {
    let started = Instant::now();
    let mut checked = 0usize;
    for n in 1..=3usize {
        for u in uios(n) {
            let g = u.incomparability_graph();
            for alpha in alpha_maps(n, 6) {
                assert!(
                    verify_gnechrom::<Int>(&g, &alpha).unwrap(),
                    "h={} alpha={:?}",
                    u,
                    alpha.values()
                );
                let expanded = clique_expand(&g, &alpha).unwrap();
                let expr = e_coefficients::<Int>(&expanded).unwrap();
                let factorial: Int = alpha
                    .values()
                    .iter()
                    .map(|&a| (1..=a as Int).product::<Int>())
                    .product();
                for lambda in partitions_of(alpha.total()) {
                    let via_m: Int = coeff_alpha(
                        &m_g::<Int>(&g, &lambda, Some(alpha.values())).unwrap(),
                        &alpha,
                    ) * factorial;
                    assert_eq!(
                        via_m,
                        expr.coeff(&lambda),
                        "h={} alpha={:?} lambda={}",
                        u,
                        alpha.values(),
                        lambda
                    );
                    checked += 1;
                }
            }
            for degree in 1..=4 {
                assert!(gcauchy_holds::<Int>(&g, degree).unwrap(), "h={} degree={}", u, degree);
            }
        }
    }
    finish(
        10,
        started,
        120,
        &format!("{} expansion coefficients bridged through the monomial images", checked),
    );
}

fn alpha_maps(n: usize, max_total: u32) -> Vec<AlphaMap> {
    let mut out = Vec::new();
    let mut current = vec![1u32; n];
    fn rec(current: &mut Vec<u32>, pos: usize, budget: u32, out: &mut Vec<AlphaMap>) {
        if pos == current.len() {
            out.push(AlphaMap::new(current.clone()).unwrap());
            return;
        }
        for value in 1..=budget.saturating_sub((current.len() - pos - 1) as u32) {
            current[pos] = value;
            rec(current, pos + 1, budget - value, out);
        }
        current[pos] = 1;
    }
    if (n as u32) <= max_total {
        rec(&mut current, 0, max_total, &mut out);
    }
    out
}

#[test]
fn criterion_11_determinism_and_merge() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let epos = env!("CARGO_BIN_EXE_epos");
    let sweep = |out: &str, jobs: &str| {
        let status = std::process::Command::new(epos)
            .args(["sweep", "--n", "4", "--out", out, "--jobs", jobs])
            .current_dir(dir.path())
            .env_remove("EPOS_JOBS")
            .env_remove("EPOS_TEST_PANIC_AT")
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    };
    sweep("a.json", "1");
    sweep("b.json", "4");
    let a = fs::read_to_string(dir.path().join("a.json")).unwrap();
    let b = fs::read_to_string(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b, "reports differ across job counts");

    let merge = std::process::Command::new(epos)
        .args(["merge", "m.json", "a.json", "a.json"])
        .current_dir(dir.path())
        .status()
        .unwrap();
    assert_eq!(merge.code(), Some(0));
    let merged = fs::read_to_string(dir.path().join("m.json")).unwrap();
    assert_eq!(merged, a, "merge with itself changed the report");

    // The full-suite example at 3 elements: five records, no failures.
    let status = std::process::Command::new(epos)
        .args(["sweep", "--n", "3", "--out", "three.json"])
        .current_dir(dir.path())
        .env_remove("EPOS_JOBS")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let three: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("three.json")).unwrap()).unwrap();
    assert_eq!(three["summary"]["records"], 5);
    assert_eq!(three["summary"]["failed"], 0);
    finish(
        11,
        started,
        120,
        "byte-identical reports across schedules, merge idempotent, full-suite run clean at 3 elements",
    );
}
