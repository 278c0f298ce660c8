//! `ncforms` command-line front end.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails
//! (the failures are printed to stderr as JSON), 2 on bad input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncforms::aswd::{CaseKind, CongruenceReport, RatioTest};
use ncforms::catalog::groups::{all_groups, group, primary_groups, GroupRecord};
use ncforms::catalog::structure::{noncongruence_test, CongruenceVerdict};
use ncforms::report::{
    check_ratio_table, congruence_reports, format_series_human, golden_dir, parse_prime_list, primes_up_to, read_golden,
    trace_table, write_congruence_csv, write_trace_csv, OutputFormat, RatioGolden, RunConfig,
};
use ncforms::series::io::write_series;
use ncforms::series::{eisenstein_e6, EtaQuotient, PuiseuxSeries};
use ncforms::surface::isogeny::{inter_family_relations, CheckMode, IsogenyRelation};
use ncforms::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ncforms", version, about = "Cusp forms on noncongruence subgroups: expansions, traces, congruences")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "human")]
    format: OutputFormat,
    /// Worker threads for trace and congruence computations.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a q-expansion: a group basis form, `eta <spec>`, or `E6`.
    Expand(ExpandArgs),
    /// Frobenius traces of the elliptic surfaces, in trace-table layout.
    Traces(TracesArgs),
    /// Ratio constancy, case detection and newform matching at each prime.
    Aswd(AswdArgs),
    /// Catalog listing.
    Catalog {
        /// Restrict to one group.
        group: Option<String>,
    },
    /// Dimension of weight-3 cusp forms with the derived cusp data.
    Dim {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Noncongruence verdicts from cusp widths.
    Noncongruence {
        group: Option<String>,
        #[arg(long)]
        all: bool,
        /// Comma-separated cusp widths instead of a catalog group.
        #[arg(long, value_delimiter = ',')]
        widths: Option<Vec<u32>>,
    },
    /// Check modular-polynomial relations between fibres.
    Isogeny(IsogenyArgs),
}

#[derive(Args)]
struct ExpandArgs {
    /// Group, `eta` or `E6`.
    form: String,
    /// `h1` / `h2` for a group, the eta-quotient spec (`1:4,2:-6,4:20`) for `eta`.
    which: Option<String>,
    /// Precision in powers of q.
    #[arg(long, default_value_t = 8)]
    order: i64,
    /// Take this root of an eta quotient.
    #[arg(long)]
    root: Option<u32>,
}

#[derive(Args)]
struct TracesArgs {
    group: Option<String>,
    #[arg(long)]
    all: bool,
    /// Prime list such as `5..23,73`.
    #[arg(long, default_value = "5..23,73")]
    primes: String,
}

#[derive(Args)]
struct AswdArgs {
    group: String,
    /// Largest prime.
    #[arg(long, default_value_t = 47)]
    pmax: u64,
    /// Bound on the indices np entering the ratios.
    #[arg(long, default_value_t = 500)]
    pn_bound: u64,
    /// Golden ratio table to compare against (name under golden/ or a path).
    #[arg(long)]
    golden: Option<String>,
}

#[derive(Args)]
struct IsogenyArgs {
    /// Group id or name for its involution, a relation label, or `families`.
    #[arg(long)]
    pair: Option<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "sampled")]
    mode: String,
    #[arg(long, default_value = "101,103")]
    primes: String,
    /// Points per prime in sampled mode.
    #[arg(long, default_value_t = 40)]
    samples: usize,
    /// Directory with Phi_d data files (else the environment or shipped data).
    #[arg(long)]
    modpoly: Option<PathBuf>,
}

enum Failure {
    Input(Error),
    Checks(Vec<Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn lookup(key: &str) -> Result<&'static GroupRecord, Error> {
    group(key).map_err(|_| {
        let known: Vec<String> = all_groups().iter().map(|g| format!("{} ({})", g.display_name(), g.id)).collect();
        Error::Unknown(format!("group {key:?}; known groups: {}", known.join(", ")))
    })
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_series(s: &PuiseuxSeries, format: OutputFormat) {
    match format {
        OutputFormat::Human => println!("{}", format_series_human(s)),
        OutputFormat::Csv => {
            println!("exponent,coefficient");
            for line in write_series(s).lines() {
                let (e, c) = line.split_once('\t').expect("series line");
                println!("{e},{c}");
            }
        }
        OutputFormat::Json => {
            let terms: Vec<Value> = write_series(s)
                .lines()
                .map(|l| {
                    let (e, c) = l.split_once('\t').expect("series line");
                    json!({"exponent": e, "coefficient": c})
                })
                .collect();
            print_json(&json!({"mu": s.mu(), "precision": format!("{}/{}", s.prec(), s.mu()), "terms": terms}));
        }
    }
}

fn expand(a: &ExpandArgs, format: OutputFormat) -> Outcome {
    let series = match a.form.as_str() {
        "E6" | "e6" => eisenstein_e6(a.order),
        "eta" => {
            let spec = a.which.as_deref().ok_or_else(|| Error::Invalid("`expand eta` needs a spec such as 1:4,2:-6".into()))?;
            let q = EtaQuotient::parse(spec)?;
            match a.root {
                Some(n) => q.root(n, a.order)?,
                None => q.expansion(a.order)?,
            }
        }
        key => {
            let g = lookup(key)?;
            let forms: Vec<(&str, &EtaQuotient)> = match a.which.as_deref() {
                None => vec![("h1", &g.h1), ("h2", &g.h2)],
                Some("h1") => vec![("h1", &g.h1)],
                Some("h2") => vec![("h2", &g.h2)],
                Some(w) => return Err(Error::Invalid(format!("form {w:?} (expected h1 or h2)")).into()),
            };
            for (i, (label, q)) in forms.iter().enumerate() {
                if format == OutputFormat::Human && forms.len() > 1 {
                    print!("{label} = ");
                } else if i > 0 {
                    println!();
                }
                print_series(&q.root(3, a.order)?, format);
            }
            return Ok(());
        }
    };
    print_series(&series, format);
    Ok(())
}

fn traces(a: &TracesArgs, format: OutputFormat) -> Outcome {
    let primes = parse_prime_list(&a.primes)?;
    let g = match (&a.group, a.all) {
        (Some(k), false) => Some(lookup(k)?),
        (None, true) => None,
        _ => return Err(Error::Invalid("give a group or --all".into()).into()),
    };
    let rows = trace_table(g, &primes)?;
    match format {
        OutputFormat::Csv => print!("{}", write_trace_csv(&rows)),
        OutputFormat::Json => print_json(&rows),
        OutputFormat::Human => {
            for r in rows {
                println!("{} {} p={}: {}, {}", r.group, r.parameterization, r.p, r.tr_p, r.tr_p2);
            }
        }
    }
    Ok(())
}

fn constant(t: &Option<RatioTest>) -> String {
    match t.as_ref().map(|t| t.constant()) {
        Some(Some(r)) => r.value.to_string(),
        Some(None) => "-".into(),
        None => "?".into(),
    }
}

fn human_report(r: &CongruenceReport) -> String {
    let case = match (r.case_kind, r.degenerate) {
        (CaseKind::Case1, false) => "case1",
        (CaseKind::Case2, false) => "case2",
        (CaseKind::Indeterminate, _) => "indeterminate",
        (_, true) => "zero",
    };
    let mut line = format!(
        "p={:<3} {case:<13} aa={:<5} bb={:<5} ab={:<5} ba={:<5}",
        r.p,
        constant(&r.aa),
        constant(&r.bb),
        constant(&r.ab),
        constant(&r.ba)
    );
    if let Some(alpha) = &r.alpha {
        line.push_str(&format!(" alpha^2={}", alpha.alpha_squared.value));
        for (k, v) in &alpha.power_pattern {
            line.push_str(&format!(" (ab/ba)^{k}={}", v.signed()));
        }
    }
    let nf = &r.newform;
    if let Some(ap) = &nf.ap {
        line.push_str(&format!(" A_p={ap}"));
    }
    let twists = [("aa", &nf.aa), ("bb", &nf.bb), ("ab*ba/A_p^2", &nf.product)];
    for (name, m) in twists {
        if let Some(m) = m {
            match (m.u, m.order) {
                (Some(u), Some(o)) => {
                    line.push_str(&format!(" {name}: w={} o(w)={o}{}", u.value, if m.weakened { " mod p" } else { "" }))
                }
                _ => line.push_str(&format!(" {name}: both vanish")),
            }
        }
    }
    match r.newform_matches() {
        Some(true) => line.push_str(&format!(" [{:?} ok]", nf.tag)),
        Some(false) => line.push_str(&format!(" [{:?} MISMATCH]", nf.tag)),
        None => line.push_str(&format!(" [{:?} derived]", nf.tag)),
    }
    line
}

fn resolve_golden(name: &str) -> PathBuf {
    let p = Path::new(name);
    if p.exists() {
        p.to_path_buf()
    } else {
        golden_dir().join(name)
    }
}

fn aswd(a: &AswdArgs, format: OutputFormat) -> Outcome {
    let g = lookup(&a.group)?;
    let config = RunConfig { prime_bound: a.pmax, pn_bound: a.pn_bound, ..RunConfig::default() };
    config.validate()?;
    let golden = a.golden.as_deref().map(|n| read_golden(&resolve_golden(n)).and_then(|t| RatioGolden::parse(&t))).transpose()?;
    let mut primes = primes_up_to(a.pmax);
    if let Some(t) = &golden {
        if lookup(&t.group)?.id != g.id {
            return Err(Error::Invalid(format!("golden table is for {}, not {}", t.group, g.name)).into());
        }
        primes.extend(t.primes());
        primes.sort_unstable();
        primes.dedup();
    }
    let reports = congruence_reports(g, &primes, a.pn_bound)?;
    match format {
        OutputFormat::Csv => print!("{}", write_congruence_csv(&reports)),
        OutputFormat::Json => print_json(&reports),
        OutputFormat::Human => {
            println!("{} (newform {:?}, pn <= {})", g.display_name(), g.newform, a.pn_bound);
            for r in &reports {
                println!("{}", human_report(r));
            }
        }
    }
    let mut failures: Vec<Value> = reports
        .iter()
        .filter(|r| r.newform_matches() == Some(false))
        .map(|r| json!({"p": r.p, "check": "newform"}))
        .collect();
    if let Some(t) = &golden {
        let mismatches = check_ratio_table(t, &reports)?;
        if format == OutputFormat::Human {
            println!("golden {}: {} mismatches", a.golden.as_deref().unwrap_or_default(), mismatches.len());
        }
        failures.extend(mismatches.iter().map(|m| serde_json::to_value(m).expect("serializable")));
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failures))
    }
}

fn catalog(key: Option<&str>, format: OutputFormat) -> Outcome {
    let groups: Vec<&GroupRecord> = match key {
        Some(k) => vec![lookup(k)?],
        None => all_groups().iter().collect(),
    };
    match format {
        OutputFormat::Json => print_json(&groups),
        OutputFormat::Csv => {
            println!("id,group,parent,widths,covering_map,newform,surfaces");
            for g in groups {
                let widths: Vec<String> = g.cusp_widths.iter().map(u32::to_string).collect();
                let surfaces: Vec<String> = g.surfaces.iter().map(|s| s.label()).collect();
                println!(
                    "{},{},{:?},{},\"{}\",{:?},\"{}\"",
                    g.id,
                    g.display_name(),
                    g.parent,
                    widths.join(" "),
                    g.covering_map.unwrap_or(""),
                    g.newform,
                    surfaces.join(" ")
                );
            }
        }
        OutputFormat::Human => {
            for g in groups {
                let surfaces: Vec<String> = g.surfaces.iter().map(|s| s.label()).collect();
                println!(
                    "{:<3} {:<24} parent {:?}, widths {:?}, m(t) = {}, newform {:?}, surfaces [{}]",
                    g.id,
                    g.display_name(),
                    g.parent,
                    g.cusp_widths,
                    g.covering_map.unwrap_or("-"),
                    g.newform,
                    surfaces.join(", ")
                );
            }
        }
    }
    Ok(())
}

fn selected(key: Option<&str>, all: bool) -> Result<Vec<&'static GroupRecord>, Error> {
    match (key, all) {
        (Some(k), false) => Ok(vec![lookup(k)?]),
        (None, true) => Ok(primary_groups().collect()),
        _ => Err(Error::Invalid("give a group or --all".into())),
    }
}

fn dim(key: Option<&str>, all: bool, format: OutputFormat) -> Outcome {
    let reports = selected(key, all)?.into_iter().map(|g| g.dimension()).collect::<Result<Vec<_>, _>>()?;
    match format {
        OutputFormat::Json => print_json(&reports),
        OutputFormat::Csv => {
            println!("group,genus,u,u_irr,dim");
            for r in &reports {
                println!("{},{},{},{},{}", r.group, r.genus, r.u, r.u_irr, r.dim);
            }
        }
        OutputFormat::Human => {
            for r in &reports {
                println!("{}: dim S_3 = {} (genus {}, u = {}, u' = {})", r.group, r.dim, r.genus, r.u, r.u_irr);
            }
        }
    }
    Ok(())
}

fn noncongruence(key: Option<&str>, all: bool, widths: Option<&[u32]>, format: OutputFormat) -> Outcome {
    let cases: Vec<(String, Vec<u32>)> = match widths {
        Some(w) => vec![(format!("{w:?}"), w.to_vec())],
        None => selected(key, all)?.into_iter().map(|g| (g.display_name(), g.cusp_widths.clone())).collect(),
    };
    let mut rows = Vec::new();
    for (name, w) in cases {
        rows.push((name, noncongruence_test(&w)?));
    }
    match format {
        OutputFormat::Json => {
            print_json(&rows.iter().map(|(n, v)| json!({"group": n, "verdict": v})).collect::<Vec<_>>())
        }
        OutputFormat::Csv => {
            println!("group,verdict");
            for (n, v) in &rows {
                println!("\"{n}\",{}", json!(v).as_str().unwrap_or_default());
            }
        }
        OutputFormat::Human => {
            for (n, v) in &rows {
                println!("{n}: {}", json!(v).as_str().unwrap_or_default());
            }
        }
    }
    let failures: Vec<Value> = rows
        .iter()
        .filter(|(_, v)| *v != CongruenceVerdict::Noncongruence)
        .map(|(n, v)| json!({"group": n, "verdict": v}))
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failures))
    }
}

fn relations(a: &IsogenyArgs) -> Result<Vec<IsogenyRelation>, Error> {
    let involutions = || all_groups().iter().filter_map(|g| g.involution_relation());
    match (a.pair.as_deref(), a.all) {
        (None, true) => Ok(involutions().chain(inter_family_relations()).collect()),
        (Some("families"), false) => Ok(inter_family_relations()),
        (Some(k), false) => {
            if let Some(r) = inter_family_relations().into_iter().find(|r| r.label == k) {
                return Ok(vec![r]);
            }
            let g = lookup(k)?;
            g.involution_relation()
                .map(|r| vec![r])
                .ok_or_else(|| Error::OutOfScope(format!("{} has no involution data", g.name)))
        }
        _ => Err(Error::Invalid("give --pair or --all".into())),
    }
}

fn isogeny(a: &IsogenyArgs, format: OutputFormat) -> Outcome {
    let mode = CheckMode::parse(&a.mode)?;
    let primes = parse_prime_list(&a.primes)?;
    let checks = relations(a)?
        .iter()
        .map(|r| r.check(mode, &primes, a.samples, a.modpoly.as_deref()))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        OutputFormat::Json => print_json(&checks),
        OutputFormat::Csv => {
            println!("relation,d,mode,points,holds");
            for c in &checks {
                println!("\"{}\",{},{:?},{},{}", c.label, c.d, c.mode, c.points, c.holds);
            }
        }
        OutputFormat::Human => {
            for c in &checks {
                let verdict = if c.holds { "pass" } else { "FAIL" };
                println!("{}: Phi_{} {verdict} ({:?}, {} points)", c.label, c.d, c.mode, c.points);
            }
        }
    }
    let failures: Vec<Value> = checks.iter().filter(|c| !c.holds).map(|c| json!({"relation": c.label, "d": c.d})).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failures))
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Invalid("--threads must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let f = cli.format;
    match &cli.command {
        Command::Expand(a) => expand(a, f),
        Command::Traces(a) => traces(a, f),
        Command::Aswd(a) => aswd(a, f),
        Command::Catalog { group } => catalog(group.as_deref(), f),
        Command::Dim { group, all } => dim(group.as_deref(), *all, f),
        Command::Noncongruence { group, all, widths } => noncongruence(group.as_deref(), *all, widths.as_deref(), f),
        Command::Isogeny(a) => isogeny(a, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(list)) => {
            eprintln!("{}", json!({ "failures": list }));
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
