//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The process exits nonzero when a criterion fails, except criteria listed in
//! `UNATTAINABLE`, whose failure is expected and explained in the output.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use ncforms::aswd::{cbrt_mod_p2, sqrt_mod_p2, CaseKind, CongruenceReport, Residue};
use ncforms::catalog::basis::construct_basis;
use ncforms::catalog::groups::{all_groups, group, primary_groups};
use ncforms::catalog::newforms::{hecke_check, hecke_check_with, newform_series, NewformTag};
use ncforms::catalog::structure::{noncongruence_test, CongruenceVerdict};
use ncforms::catalog::BiquadraticNumber;
use ncforms::report::{
    check_ratio_table, check_series, congruence_reports, golden_dir, parse_trace_csv, read_golden, series_golden_extent,
    series_golden_paths, trace_table, RatioGolden, TraceRow, RATIO_TABLES,
};
use ncforms::series::rational::{int, rat};
use ncforms::series::{eta_expansion, ExactRational, PuiseuxSeries};
use ncforms::surface::isogeny::inter_family_relations;
use ncforms::trace::{count_points_short, trace_fingerprint, FiniteField, PrimeField};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criterion 5 asks for the Hecke relation with the printed level-48
/// character, which is even; the coefficients satisfy it with (-3/.) only.
const UNATTAINABLE: &[u32] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn golden(name: &str) -> String {
    read_golden(&golden_dir().join(name)).unwrap_or_else(|e| panic!("{e}"))
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut terms = 0;
    let mut bad = Vec::new();
    for g in all_groups() {
        for (path, form) in series_golden_paths(g).iter().zip([&g.h1, &g.h2]) {
            let text = read_golden(path).unwrap();
            let s = match form.root(3, 501) {
                Ok(s) => s,
                Err(e) => return outcome(false, format!("{}: {e}", g.name)),
            };
            let golden_terms = series_golden_extent(&text).unwrap();
            assert!(golden_terms <= 501);
            terms += text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count();
            for (t, got) in check_series(&s, &text).unwrap() {
                bad.push(format!("{} {}: {}/{} got {got:?}", g.name, path.display(), t.exp_num, t.exp_den));
            }
        }
    }
    let spot = group("24.6.1^6").unwrap().h1.root(3, 6).unwrap().coefficient(5).unwrap() == rat(-850, 243);
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && spot && elapsed < Duration::from_secs(5);
    outcome(
        pass,
        format!(
            "{} groups, {terms} printed coefficients at order 501, {} mismatches, q^5 of 24.6.1^6 h1 = -850/243: {spot}, {} (target < 5s){}",
            all_groups().len(),
            bad.len(),
            secs(elapsed),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion2() -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for g in primary_groups() {
        n += 1;
        if let Err(e) = construct_basis(g, 50) {
            failures.push(format!("{}: {e}", g.name));
        }
    }
    outcome(failures.is_empty(), format!("{n} groups equal to order 50 {failures:?}"))
}

fn trace_rows_matching(golden: &[TraceRow], computed: &[TraceRow]) -> Vec<String> {
    golden
        .iter()
        .filter(|want| {
            !computed.iter().any(|c| {
                c.group == want.group && c.parameterization == want.parameterization && c.p == want.p && c == *want
            })
        })
        .map(|w| format!("{} {} p={}", w.group, w.parameterization, w.p))
        .collect()
}

fn criterion3(golden_rows: &[TraceRow], primes: &[u64]) -> (Outcome, Vec<TraceRow>) {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let start = Instant::now();
        let rows = pool.install(|| trace_table(None, primes)).unwrap();
        (rows, start.elapsed())
    };
    let (rows1, t1) = run(1);
    let (rows4, t4) = run(4);
    let mut bad = trace_rows_matching(golden_rows, &rows1);
    bad.extend(trace_rows_matching(golden_rows, &rows4));
    let params: std::collections::BTreeSet<_> = golden_rows.iter().map(|r| &r.parameterization).collect();
    let pass = bad.is_empty() && params.len() == 12 && t1 < Duration::from_secs(60) && t4 < Duration::from_secs(15);
    (
        outcome(
            pass,
            format!(
                "{} rows ({} parameterizations, p in {primes:?}), {} mismatches, 1 thread {} (target < 60s), 4 threads {} (target < 15s)",
                golden_rows.len(),
                params.len(),
                bad.len(),
                secs(t1),
                secs(t4)
            ),
        ),
        rows4,
    )
}

fn criterion4() -> (Outcome, BTreeMap<&'static str, Vec<CongruenceReport>>) {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut cells = 0;
    let mut by_group: BTreeMap<&'static str, Vec<CongruenceReport>> = BTreeMap::new();
    for name in RATIO_TABLES {
        let table = RatioGolden::parse(&golden(name)).unwrap();
        let g = group(&table.group).unwrap();
        let reports = congruence_reports(g, &table.primes(), 500).unwrap();
        cells += table.rows.iter().map(|r| r.len() - 1).sum::<usize>();
        for m in check_ratio_table(&table, &reports).unwrap() {
            bad.push(format!("{name} {m}"));
        }
        let entry = by_group.entry(g.id).or_default();
        for r in reports {
            if !entry.iter().any(|e| e.p == r.p) {
                entry.push(r);
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(10);
    (
        outcome(
            pass,
            format!(
                "{} tables, {cells} printed cells, pn <= 500, {} mismatches, {} (target < 10s){}",
                RATIO_TABLES.len(),
                bad.len(),
                secs(elapsed),
                bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
            ),
        ),
        by_group,
    )
}

fn newform_golden() -> Vec<(NewformTag, usize, BiquadraticNumber)> {
    let text = golden("newforms.csv");
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            let tag = NewformTag::parse(&r[0]).unwrap();
            let n: usize = r[1].parse().unwrap();
            let c: [i64; 4] = std::array::from_fn(|i| r[2 + i].parse().unwrap());
            (tag, n, BiquadraticNumber::from_ints(tag.config(), c))
        })
        .collect()
}

fn criterion5() -> Outcome {
    let rows = newform_golden();
    let mut bad = Vec::new();
    let mut counts = BTreeMap::new();
    for tag in [NewformTag::L48, NewformTag::L432] {
        let n_max = rows.iter().filter(|r| r.0 == tag).map(|r| r.1).max().unwrap();
        let s = newform_series(tag, n_max).unwrap();
        for (_, n, want) in rows.iter().filter(|r| r.0 == tag) {
            *counts.entry(tag).or_insert(0) += 1;
            if s[*n] != *want {
                bad.push(format!("{tag:?} a_{n}: {} vs {want}", s[*n]));
            }
        }
    }
    let printed = hecke_check_with(NewformTag::L48, &NewformTag::L48.record().character, 31, 15).unwrap();
    let nebentypus = hecke_check(NewformTag::L48, 31, 15).unwrap();
    let pass = bad.is_empty() && printed.holds();
    outcome(
        pass,
        format!(
            "L48 {} and L432 {} printed coefficients, {} mismatches; Hecke p <= 31, n <= 15 with chi = (-3/.)(-4/.): {} of {} fail {:?}; with nebentypus (-3/.): {}",
            counts[&NewformTag::L48],
            counts[&NewformTag::L432],
            bad.len(),
            printed.violations.len(),
            printed.checked,
            printed.violations,
            if nebentypus.holds() { "holds".to_string() } else { format!("fails {:?}", nebentypus.violations) }
        ),
    )
}

fn criterion6(reports: &BTreeMap<&'static str, Vec<CongruenceReport>>, traces: &[TraceRow], primes: &[u64]) -> Outcome {
    let (mut case1, mut case2, mut derived) = (0, 0, 0);
    let mut bad = Vec::new();
    let mut minus_one = Vec::new();
    for (id, rs) in reports {
        for r in rs {
            if r.newform_matches().is_none() {
                if r.case_kind != CaseKind::Indeterminate {
                    derived += 1;
                    continue;
                }
                bad.push(format!("{id} p={} indeterminate", r.p));
                continue;
            }
            match r.case_kind {
                CaseKind::Case1 => {
                    case1 += 1;
                    let ok = [&r.newform.aa, &r.newform.bb].iter().all(|m| {
                        m.as_ref().is_some_and(|m| m.u.is_none_or(|u| u.pow(6) == Some(Residue::new(1, u.p, u.e))))
                    });
                    if !ok {
                        bad.push(format!("{id} p={} case 1", r.p));
                    }
                }
                CaseKind::Case2 => {
                    case2 += 1;
                    let w = r.newform.product.as_ref().and_then(|m| m.u);
                    let one = Residue::p2(1, r.p);
                    match w {
                        Some(w) if w == one => {}
                        Some(w) if w == one.neg() && r.newform.tag == NewformTag::L432 && r.p % 12 == 5 => {
                            minus_one.push(format!("{id}:{}", r.p))
                        }
                        _ => bad.push(format!("{id} p={} case 2 product w = {:?}", r.p, w.map(|w| w.signed()))),
                    }
                }
                CaseKind::Indeterminate => unreachable!(),
            }
        }
    }
    let mut fp_bad = Vec::new();
    let relations = inter_family_relations();
    for rel in &relations {
        let (a, b) = rel.cover_models();
        for row in trace_fingerprint(&a, &b, primes).unwrap() {
            if !row.p2_equal() {
                fp_bad.push(format!("{} p={}", rel.label, row.p));
            }
        }
    }
    let zero_bad: Vec<String> = traces
        .iter()
        .filter(|t| t.p % 3 == 2 && t.tr_p != 0)
        .map(|t| format!("{} p={}", t.parameterization, t.p))
        .collect();
    let zero_checked = traces.iter().filter(|t| t.p % 3 == 2).count();
    let pass = bad.is_empty() && fp_bad.is_empty() && zero_bad.is_empty();
    outcome(
        pass,
        format!(
            "(a) {case1} case-1 rows u^6 = 1; (b) {case2} case-2 rows with product = A_p^2 (w = -1 as printed at {minus_one:?}); {derived} rows without a catalog A_p; (c) {} isogenous pairs x {} primes share Tr_p2, {} differ; (d) Tr_p = 0 at {zero_checked} entries with p = 2 mod 3, {} nonzero{}",
            relations.len(),
            primes.len(),
            fp_bad.len(),
            zero_bad.len(),
            bad.first().or(fp_bad.first()).or(zero_bad.first()).map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion7() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for g in primary_groups() {
        n += 1;
        if noncongruence_test(&g.cusp_widths).ok() != Some(CongruenceVerdict::Noncongruence) {
            bad.push(format!("{} verdict", g.name));
        }
        match g.dimension() {
            Ok(d) if d.dim == 2 => {}
            d => bad.push(format!("{} dim {d:?}", g.name)),
        }
        if !g.involution_identity_check().unwrap_or(false) {
            bad.push(format!("{} involution identity", g.name));
        }
    }
    outcome(bad.is_empty(), format!("{n} groups: noncongruence, dim S_3 = 2 from derived cusp data, involution identity {bad:?}"))
}

/// Direct product of `(1 - q^{m n})` truncated below `q^order`.
fn naive_eta(m: u32, order: usize) -> Vec<i64> {
    let mut c = vec![0i64; order];
    c[0] = 1;
    let mut k = m as usize;
    while k < order {
        for i in (k..order).rev() {
            c[i] -= c[i - k];
        }
        k += m as usize;
    }
    c
}

fn random_series(rng: &mut StdRng, len: usize) -> PuiseuxSeries {
    let coeffs: Vec<ExactRational> = (0..len).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
    let val = rng.gen_range(-2..=2);
    PuiseuxSeries::new(1, val, coeffs, val + len as i64)
}

fn criterion8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut notes = Vec::new();
    let mut pass = true;

    let mut eta_ok = true;
    for m in 1..=8 {
        let s = eta_expansion(m, 60);
        let naive = naive_eta(m, 60);
        eta_ok &= (0..60).all(|i| s.coefficient(i as i64).unwrap() == int(naive[i]));
    }
    pass &= eta_ok;
    notes.push(format!("eta m <= 8, N <= 60: {}", if eta_ok { "equal" } else { "DIFFER" }));

    let mut curves = 0;
    let mut count_ok = true;
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
        let f = PrimeField::new(p).unwrap();
        let mut done = 0;
        while done < 100 {
            let (a, b) = (rng.gen_range(0..p), rng.gen_range(0..p));
            if (4 * a * a * a + 27 * b * b) % p == 0 {
                continue;
            }
            let brute = 1 + (0..p)
                .flat_map(|x| (0..p).map(move |y| (x, y)))
                .filter(|&(x, y)| (y * y) % p == (x * x % p * x + a * x + b) % p)
                .count() as u64;
            count_ok &= count_points_short(&f, f.from_base(a), f.from_base(b)).unwrap() == brute;
            done += 1;
            curves += 1;
        }
    }
    pass &= count_ok;
    notes.push(format!("{curves} random curves p <= 31: {}", if count_ok { "counts equal" } else { "counts DIFFER" }));

    let primes: Vec<u64> = (5..50).filter(|&p| ncforms::trace::field::is_prime(p)).collect();
    let mut root_ok = true;
    for _ in 0..200 {
        let p = primes[rng.gen_range(0..primes.len())];
        let x = loop {
            let x = Residue::p2(rng.gen_range(1..(p * p) as i64), p);
            if x.is_unit() {
                break x;
            }
        };
        let sq = x.mul(&x);
        root_ok &= sqrt_mod_p2(sq).is_some_and(|(r1, r2)| r1.mul(&r1) == sq && r2.mul(&r2) == sq && (r1 == x || r2 == x));
        let cube = x.mul(&x).mul(&x);
        root_ok &= match cbrt_mod_p2(cube) {
            Ok(c) => c.mul(&c).mul(&c) == cube && (p % 3 != 2 || c == x),
            Err(_) => p % 3 == 1,
        };
    }
    pass &= root_ok;
    notes.push(format!("200 sqrt/cbrt mod p^2 round trips p < 50: {}", if root_ok { "exact" } else { "FAILED" }));

    let mut ring_ok = true;
    for _ in 0..50 {
        let [a, b, c] = std::array::from_fn(|_| random_series(&mut rng, 12));
        ring_ok &= a.add(&b) == b.add(&a);
        ring_ok &= a.mul(&b) == b.mul(&a);
        ring_ok &= a.add(&b).add(&c) == a.add(&b.add(&c));
        ring_ok &= a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
        ring_ok &= a.add(&b).mul(&c) == a.mul(&c).add(&b.mul(&c));
        if !a.is_zero() {
            let inv = a.invert().unwrap();
            let one = PuiseuxSeries::one(a.mul(&inv).prec());
            ring_ok &= a.mul(&inv) == one;
        }
    }
    pass &= ring_ok;
    notes.push(format!("series ring laws on 50 random triples: {}", if ring_ok { "hold" } else { "FAIL" }));
    outcome(pass, notes.join("; "))
}

fn main() {
    let total = Instant::now();
    let trace_golden = parse_trace_csv(&golden("table8.csv")).unwrap();
    let mut primes: Vec<u64> = trace_golden.iter().map(|r| r.p).collect();
    primes.sort_unstable();
    primes.dedup();

    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "q-expansion fidelity", criterion1()));
    results.push((2, "construction equivalence", criterion2()));
    let (o3, traces) = criterion3(&trace_golden, &primes);
    results.push((3, "trace table", o3));
    let (o4, reports) = criterion4();
    results.push((4, "congruence tables", o4));
    results.push((5, "newform consistency", criterion5()));
    results.push((6, "cross-checks", criterion6(&reports, &traces, &primes)));
    results.push((7, "structural verdicts", criterion7()));
    results.push((8, "oracle suites", criterion8()));

    let mut unexpected = Vec::new();
    for (n, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n} [{tag}] {name}: {}", o.detail);
        if !o.pass {
            if UNATTAINABLE.contains(n) {
                println!("  criterion {n} cannot pass as stated: the printed character is even, a weight-3 form needs an odd one");
            } else {
                unexpected.push(*n);
            }
        }
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!("acceptance: {passed}/{} criteria pass in {}", results.len(), secs(total.elapsed()));
    if !unexpected.is_empty() {
        println!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
