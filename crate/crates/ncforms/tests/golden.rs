//! Every shipped golden file against the library.

use ncforms::catalog::groups::{all_groups, group};
use ncforms::report::{
    check_ratio_table, check_series, congruence_reports, golden_dir, parse_trace_csv, read_golden, series_golden_extent,
    series_golden_paths, trace_table, RatioGolden, RunConfig, RATIO_TABLES,
};

#[test]
fn ratio_tables() {
    let mut failures = Vec::new();
    for name in RATIO_TABLES {
        let golden = RatioGolden::parse(&read_golden(&golden_dir().join(name)).unwrap()).unwrap();
        let g = group(&golden.group).unwrap_or_else(|_| panic!("{name}: unknown group {}", golden.group));
        let reports = congruence_reports(g, &golden.primes(), RunConfig::default().pn_bound).unwrap();
        for m in check_ratio_table(&golden, &reports).unwrap() {
            failures.push(format!("{name}: {m}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn series_files() {
    for g in all_groups() {
        for (path, form) in series_golden_paths(g).iter().zip([&g.h1, &g.h2]) {
            let text = read_golden(path).unwrap();
            let s = form.root(3, series_golden_extent(&text).unwrap() + 1).unwrap();
            let bad = check_series(&s, &text).unwrap();
            assert!(bad.is_empty(), "{}: {bad:?}", path.display());
        }
    }
}

#[test]
fn trace_table_matches() {
    let golden = parse_trace_csv(&read_golden(&golden_dir().join("table8.csv")).unwrap()).unwrap();
    let mut primes: Vec<u64> = golden.iter().map(|r| r.p).collect();
    primes.sort();
    primes.dedup();
    let computed = trace_table(None, &primes).unwrap();
    for want in &golden {
        let got = computed
            .iter()
            .find(|c| c.group == want.group && c.parameterization == want.parameterization && c.p == want.p)
            .unwrap_or_else(|| panic!("no computed row for {want:?}"));
        assert_eq!(got, want);
    }
}

fn mismatches(text: &str) -> Vec<String> {
    let golden = RatioGolden::parse(text).unwrap();
    let g = group(&golden.group).unwrap();
    let reports = congruence_reports(g, &golden.primes(), 500).unwrap();
    check_ratio_table(&golden, &reports).unwrap().into_iter().map(|m| m.column).collect()
}

#[test]
fn perturbed_tables_are_caught() {
    let base = "# group: 9.6^3.3.2^3\np,aa,bb,ab,ba,ab_expr,aa_expr,w,w_sq,cbrt,cbrt_radicand\n";
    assert!(mismatches(&format!("{base}5,,,3,13,-6*c,,,,12,3\n7,36,2,,,,11*w^2,18,30,,\n")).is_empty());
    assert_eq!(mismatches(&format!("{base}5,,,4,13,,,,,,\n")), ["ab"]);
    assert_eq!(mismatches(&format!("{base}5,,,,,6*c,,,,12,3\n")), ["ab_expr"]);
    assert_eq!(mismatches(&format!("{base}7,,,,,,11*w,18,,,\n")), ["aa_expr"]);
    assert_eq!(mismatches(&format!("{base}7,,,,,,,20,,,\n")), ["w"]);
    assert_eq!(mismatches(&format!("{base}7,,,,,,,18,31,,\n")), ["w_sq"]);
    assert_eq!(mismatches(&format!("{base}5,,,,,,,,,13,3\n")), ["cbrt"]);
    let a = "# group: 18.6.3^3.1^3\np,aa,bb,ord_w,aa_over_bb_pow3,aa_expr\n";
    assert!(mismatches(&format!("{a}7,36,2,3,1,11*w\n")).is_empty());
    assert_eq!(mismatches(&format!("{a}7,,,,2,\n")), ["aa_over_bb_pow3"]);
    assert_eq!(mismatches(&format!("{a}7,,,2,,11*w\n")), ["aa_expr"]);
}

#[test]
fn isogenous_covers_share_p2_traces() {
    for rel in ncforms::surface::isogeny::inter_family_relations() {
        let (a, b) = rel.cover_models();
        for row in ncforms::trace::trace_fingerprint(&a, &b, &[5, 7, 11, 13]).unwrap() {
            assert!(row.p2_equal(), "{}: {row:?}", rel.label);
        }
    }
}
