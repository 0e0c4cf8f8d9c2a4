//! Command-line front end.
//!
//! Subcommands map one-to-one onto the library: `compute` and `eval` expose
//! single polynomials, `verify` and `crosscheck` run the factorization and
//! oracle sweeps, `reproduce-appendix` compares against the shipped golden
//! corpus, and `bench` times the phases. Machine-readable output (JSON)
//! goes to stdout, human summaries to stderr, and exit codes distinguish
//! success (0), a failed check (1), and a usage problem (2).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use faulhaber::exact::rational_text;
use faulhaber::factor::{asymptotic_check, structural_factor, verify_factorization_range, CheckOutcome};
use faulhaber::render::{
    compare_golden, compare_spots, factored_text, parse_golden, parse_spots, GoldenDiff,
    PolynomialDocument,
};
use faulhaber::series::{power_sum_bernoulli, power_sum_direct, BernoulliCache, FaulhaberTable};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "faulhaber",
    version,
    about = "Exact power-sum polynomials: compute, evaluate, verify, cross-check, reproduce, bench"
)]
struct Cli {
    /// Ceiling on the polynomial order any subcommand may request
    #[arg(long, global = true, default_value_t = 100, value_name = "M")]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the power-sum polynomial for one order
    Compute {
        /// Polynomial order
        #[arg(value_name = "N")]
        order: usize,
        /// Output form
        #[arg(long, value_enum, default_value_t = Format::Expanded)]
        format: Format,
    },
    /// Evaluate at an integer point, cross-checked against direct summation
    Eval {
        /// Polynomial order
        #[arg(value_name = "N")]
        order: usize,
        /// Evaluation point
        #[arg(value_name = "n")]
        point: u64,
        /// Largest point still cross-checked by brute-force summation
        #[arg(long, default_value_t = 1_000_000)]
        oracle_ceiling: u64,
    },
    /// Check factorization shape and top coefficients for orders up to a bound
    Verify {
        /// Highest order to check
        #[arg(long, default_value_t = 100)]
        max: usize,
    },
    /// Compare the recursion against the Bernoulli closed form, coefficient-wise
    Crosscheck {
        /// Highest order to compare
        #[arg(long, default_value_t = 50)]
        max: usize,
    },
    /// Compare canonical factored forms against the golden corpus
    ReproduceAppendix {
        /// Golden file of `order<TAB>factored-text` records
        #[arg(long, default_value = "golden/appendix.tsv")]
        golden: PathBuf,
    },
    /// Time the build, factorization-sweep, and Bernoulli-sweep phases
    Bench {
        /// Highest order to build
        #[arg(long, default_value_t = 100)]
        max: usize,
        /// Repetitions per phase (medians are reported)
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Expanded,
    Factored,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ceiling = cli.max_order;
    match cli.command {
        Command::Compute { order, format } => cmd_compute(order, format, ceiling),
        Command::Eval { order, point, oracle_ceiling } => {
            cmd_eval(order, point, oracle_ceiling, ceiling)
        }
        Command::Verify { max } => cmd_verify(max, ceiling),
        Command::Crosscheck { max } => cmd_crosscheck(max, ceiling),
        Command::ReproduceAppendix { golden } => cmd_reproduce_appendix(&golden, ceiling),
        Command::Bench { max, reps } => cmd_bench(max, reps, ceiling),
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn check_ceiling(requested: usize, ceiling: usize) -> Option<ExitCode> {
    if requested > ceiling {
        return Some(usage_error(&format!(
            "order {requested} exceeds the ceiling {ceiling}; raise it with --max-order"
        )));
    }
    None
}

fn cmd_compute(order: usize, format: Format, ceiling: usize) -> ExitCode {
    if let Some(code) = check_ceiling(order, ceiling) {
        return code;
    }
    let table = FaulhaberTable::build(order);
    let poly = table.poly(order).expect("table was built to this order");
    match format {
        Format::Expanded => println!("{poly}"),
        Format::Factored => match structural_factor(&table, order) {
            Ok(form) => println!("{}", factored_text(&form)),
            Err(failure) => {
                eprintln!("error: internal consistency: {failure}");
                return ExitCode::from(EXIT_CHECK_FAILED);
            }
        },
        Format::Json => println!("{}", PolynomialDocument::from_polynomial(order, poly).to_json()),
    }
    ExitCode::SUCCESS
}

fn cmd_eval(order: usize, point: u64, oracle_ceiling: u64, ceiling: usize) -> ExitCode {
    if let Some(code) = check_ceiling(order, ceiling) {
        return code;
    }
    let table = FaulhaberTable::build(order);
    let value = match table.eval_at(order, point) {
        Ok(v) => v,
        Err(failure) => {
            eprintln!("error: internal consistency: {failure}");
            return ExitCode::from(EXIT_CHECK_FAILED);
        }
    };
    if point <= oracle_ceiling {
        let direct = power_sum_direct(point, order);
        if direct != value {
            eprintln!(
                "error: internal consistency: polynomial gives {value} but direct summation gives {direct} at order {order}, n = {point}"
            );
            return ExitCode::from(EXIT_CHECK_FAILED);
        }
    }
    println!("{value}");
    ExitCode::SUCCESS
}

fn cmd_verify(max: usize, ceiling: usize) -> ExitCode {
    if max < 2 {
        return usage_error("verify needs --max >= 2 (the factorization claim starts at order 2)");
    }
    if let Some(code) = check_ceiling(max, ceiling) {
        return code;
    }
    let table = FaulhaberTable::build(max);
    let report = verify_factorization_range(&table, 2, max).expect("table covers the range");
    let asymptotic: Vec<(usize, bool)> = (1..=max)
        .map(|order| {
            let ok = asymptotic_check(&table, order).expect("order within range");
            (order, ok)
        })
        .collect();

    let factor_entries: Vec<serde_json::Value> = report
        .entries()
        .iter()
        .map(|e| {
            let mut entry = json!({
                "order": e.order,
                "outcome": e.outcome.label(),
                "elapsed_nanos": u64::try_from(e.elapsed.as_nanos()).unwrap_or(u64::MAX),
            });
            if let CheckOutcome::DegreeMismatch { expected, actual } = e.outcome {
                entry["expected_degree"] = json!(expected);
                entry["actual_degree"] = json!(actual);
            }
            entry
        })
        .collect();
    let asymptotic_entries: Vec<serde_json::Value> = asymptotic
        .iter()
        .map(|(order, ok)| json!({ "order": order, "pass": ok }))
        .collect();
    let all_asymptotic = asymptotic.iter().all(|(_, ok)| *ok);
    let all_pass = report.all_pass() && all_asymptotic;
    let doc = json!({
        "range": [2, max],
        "all_pass": all_pass,
        "factorization": factor_entries,
        "asymptotic": asymptotic_entries,
    });
    println!("{doc}");

    let passed = report.entries().iter().filter(|e| e.outcome.is_pass()).count();
    eprintln!("factorization 2..={max}: {passed}/{} pass", report.entries().len());
    for failure in report.failures() {
        eprintln!("  order {}: {}", failure.order, failure.outcome);
    }
    let asym_passed = asymptotic.iter().filter(|(_, ok)| *ok).count();
    eprintln!("asymptotic coefficients 1..={max}: {asym_passed}/{} pass", asymptotic.len());
    for (order, _) in asymptotic.iter().filter(|(_, ok)| !ok) {
        eprintln!("  order {order}: top coefficients differ from 1/(order+1), 1/2");
    }

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn cmd_crosscheck(max: usize, ceiling: usize) -> ExitCode {
    if let Some(code) = check_ceiling(max, ceiling) {
        return code;
    }
    let table = FaulhaberTable::build(max);
    let cache = BernoulliCache::compute(max);
    for order in 0..=max {
        let recursion = table.poly(order).expect("table covers the range");
        let closed_form = power_sum_bernoulli(order, &cache).expect("cache covers the range");
        if recursion != &closed_form {
            let power = (0..=order + 1)
                .find(|&p| recursion.coeff(p) != closed_form.coeff(p))
                .expect("polynomials differ at some power");
            eprintln!(
                "error: constructions diverge at order {order}, power {power}: recursion {} vs closed form {}",
                rational_text(&recursion.coeff(power)),
                rational_text(&closed_form.coeff(power)),
            );
            return ExitCode::from(EXIT_CHECK_FAILED);
        }
    }
    println!("orders 0..={max}: recursion and Bernoulli closed form agree coefficient-wise");
    ExitCode::SUCCESS
}

fn spots_path(golden: &Path) -> PathBuf {
    let stem = golden.file_stem().and_then(|s| s.to_str()).unwrap_or("golden");
    golden.with_file_name(format!("{stem}_spots.tsv"))
}

fn print_diffs(kind: &str, diffs: &[GoldenDiff]) {
    for diff in diffs {
        println!("{kind} order {}:", diff.order);
        println!("  expected: {}", diff.expected);
        println!("  actual:   {}", diff.actual);
    }
}

fn cmd_reproduce_appendix(golden: &Path, ceiling: usize) -> ExitCode {
    let text = match std::fs::read_to_string(golden) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read golden file {}: {e}", golden.display())),
    };
    let entries = match parse_golden(&text) {
        Ok(entries) if !entries.is_empty() => entries,
        Ok(_) => return usage_error(&format!("golden file {} is empty", golden.display())),
        Err(e) => return usage_error(&format!("{}: {e}", golden.display())),
    };

    let spots_file = spots_path(golden);
    let spots = match std::fs::read_to_string(&spots_file) {
        Ok(text) => match parse_spots(&text) {
            Ok(spots) => spots,
            Err(e) => return usage_error(&format!("{}: {e}", spots_file.display())),
        },
        Err(_) => Vec::new(),
    };

    let needed = entries
        .iter()
        .map(|e| e.order)
        .chain(spots.iter().map(|s| s.order))
        .max()
        .expect("entries is nonempty");
    if let Some(code) = check_ceiling(needed, ceiling) {
        return code;
    }

    let table = FaulhaberTable::build(needed);
    let golden_diffs = compare_golden(&table, &entries).expect("table covers all golden orders");
    let spot_diffs = compare_spots(&table, &spots).expect("table covers all spot orders");

    print_diffs("golden", &golden_diffs);
    print_diffs("spot", &spot_diffs);
    println!(
        "golden entries: {}/{} match; spot entries: {}/{} match",
        entries.len() - golden_diffs.len(),
        entries.len(),
        spots.len() - spot_diffs.len(),
        spots.len(),
    );

    if golden_diffs.is_empty() && spot_diffs.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn cmd_bench(max: usize, reps: usize, ceiling: usize) -> ExitCode {
    if reps < 1 {
        return usage_error("bench needs --reps >= 1");
    }
    if let Some(code) = check_ceiling(max, ceiling) {
        return code;
    }
    let report = faulhaber::bench::run(max, reps);
    let doc = json!({
        "max_order": report.max_order,
        "repetitions": report.repetitions,
        "phases": {
            "build": { "median_nanos": report.build_median(), "reps_nanos": report.build_nanos },
            "verify": { "median_nanos": report.verify_median(), "reps_nanos": report.verify_nanos },
            "bernoulli": { "median_nanos": report.bernoulli_median(), "reps_nanos": report.bernoulli_nanos },
        },
        "cumulative_build_nanos": report.cumulative_build_nanos,
    });
    println!("{doc}");

    let ms = |nanos: u64| nanos as f64 / 1e6;
    eprintln!("build to order {max}: {:.3} ms (median of {reps})", ms(report.build_median()));
    eprintln!("factorization sweep: {:.3} ms (median of {reps})", ms(report.verify_median()));
    eprintln!("bernoulli sweep:     {:.3} ms (median of {reps})", ms(report.bernoulli_median()));
    ExitCode::SUCCESS
}
