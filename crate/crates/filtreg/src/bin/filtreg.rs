//! Command-line front end.
//!
//! ```text
//! filtreg run --config <path> [--seed N] [--jobs K] [--out <path>]
//!             [--format json|csv] [--no-timings] [--profile]
//! filtreg corpus [--filter TAG] [--seed N] [--jobs K] [--out <path>]
//!                [--format json|csv] [--no-timings] [--profile]
//! filtreg bound <id> --args k=v,...
//! ```
//!
//! Exit codes: 0 all pass, 1 check failure, 2 configuration error,
//! 3 computation error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use filtreg::config::ExperimentConfig;
use filtreg::corpus::run_corpus;
use filtreg::groebner::stats_snapshot;
use filtreg::harness::{evaluate_bound_by_id, run_experiment, tally, HarnessError};
use filtreg::report::{InvariantReport, CSV_HEADER};

struct Options {
    config: Option<String>,
    seed: Option<u64>,
    jobs: usize,
    out: Option<String>,
    format: String,
    no_timings: bool,
    profile: bool,
    filter: Option<String>,
    args: Option<String>,
}

impl Options {
    fn parse(args: &[String]) -> Result<Options, String> {
        let mut o = Options {
            config: None,
            seed: None,
            jobs: 1,
            out: None,
            format: "json".into(),
            no_timings: false,
            profile: false,
            filter: None,
            args: None,
        };
        let mut it = args.iter();
        while let Some(a) = it.next() {
            let mut value = |name: &str| -> Result<String, String> {
                it.next()
                    .cloned()
                    .ok_or_else(|| format!("{name} needs a value"))
            };
            match a.as_str() {
                "--config" => o.config = Some(value("--config")?),
                "--seed" => {
                    o.seed = Some(
                        value("--seed")?
                            .parse()
                            .map_err(|_| "bad --seed".to_string())?,
                    )
                }
                "--jobs" => {
                    o.jobs = value("--jobs")?
                        .parse()
                        .map_err(|_| "bad --jobs".to_string())?
                }
                "--out" => o.out = Some(value("--out")?),
                "--format" => o.format = value("--format")?,
                "--no-timings" => o.no_timings = true,
                "--profile" => o.profile = true,
                "--filter" => o.filter = Some(value("--filter")?),
                "--args" => o.args = Some(value("--args")?),
                other => return Err(format!("unknown option `{other}`")),
            }
        }
        if o.format != "json" && o.format != "csv" {
            return Err("--format must be json or csv".into());
        }
        Ok(o)
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = args.first() else {
        eprintln!("usage: filtreg <run|corpus|bound> [options]");
        return ExitCode::from(2);
    };
    match command.as_str() {
        "run" => cmd_run(&args[1..]),
        "corpus" => cmd_corpus(&args[1..]),
        "bound" => cmd_bound(&args[1..]),
        other => {
            eprintln!("unknown command `{other}`");
            ExitCode::from(2)
        }
    }
}

fn cmd_run(rest: &[String]) -> ExitCode {
    let opts = match Options::parse(rest) {
        Ok(o) => o,
        Err(m) => {
            eprintln!("{m}");
            return ExitCode::from(2);
        }
    };
    let Some(path) = &opts.config else {
        eprintln!("run needs --config <path>");
        return ExitCode::from(2);
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {path}: {e}");
            return ExitCode::from(2);
        }
    };
    let mut cfg = match ExperimentConfig::parse(&text) {
        Ok(c) => c,
        Err(m) => {
            eprintln!("{m}");
            return ExitCode::from(2);
        }
    };
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    match run_experiment(&cfg) {
        Ok(report) => {
            let body = render(std::slice::from_ref(&report), &opts);
            emit(&body, &opts);
            if opts.profile {
                print_profile();
            }
            let (_, fail, _) = tally(&report.checks);
            if fail > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{e}");
            exit_for(&e)
        }
    }
}

fn cmd_corpus(rest: &[String]) -> ExitCode {
    let opts = match Options::parse(rest) {
        Ok(o) => o,
        Err(m) => {
            eprintln!("{m}");
            return ExitCode::from(2);
        }
    };
    let seed = opts.seed.unwrap_or(42);
    let (results, summary) = run_corpus(opts.filter.as_deref(), seed, opts.jobs);
    let mut reports: Vec<InvariantReport> = Vec::new();
    for (name, res) in &results {
        match res {
            Ok(report) => {
                let (p, f, s) = tally(&report.checks);
                println!("{name}: {p} pass, {f} fail, {s} skip");
                reports.push(report.clone());
            }
            Err(e) => println!("{name}: error: {e}"),
        }
    }
    println!(
        "total: {} pass, {} fail, {} skip, {} errors",
        summary.pass,
        summary.fail,
        summary.skip,
        summary.errors.len()
    );
    if opts.out.is_some() {
        let body = render(&reports, &opts);
        emit(&body, &opts);
    }
    if opts.profile {
        print_profile();
    }
    if !summary.errors.is_empty() {
        for (name, e) in &summary.errors {
            eprintln!("{name}: {e}");
        }
        return ExitCode::from(3);
    }
    if summary.fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_bound(rest: &[String]) -> ExitCode {
    let Some(id) = rest.first() else {
        eprintln!("bound needs an identifier, e.g. `filtreg bound A3 --args d=2,D=1,r=0`");
        return ExitCode::from(2);
    };
    let opts = match Options::parse(&rest[1..]) {
        Ok(o) => o,
        Err(m) => {
            eprintln!("{m}");
            return ExitCode::from(2);
        }
    };
    let mut args: BTreeMap<String, i64> = BTreeMap::new();
    if let Some(spec) = &opts.args {
        for pair in spec.split(',') {
            let Some((k, v)) = pair.split_once('=') else {
                eprintln!("bad --args entry `{pair}` (expected k=v)");
                return ExitCode::from(2);
            };
            let Ok(v) = v.trim().parse::<i64>() else {
                eprintln!("bad integer in `{pair}`");
                return ExitCode::from(2);
            };
            args.insert(k.trim().to_string(), v);
        }
    }
    match evaluate_bound_by_id(id, &args) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn render(reports: &[InvariantReport], opts: &Options) -> String {
    if opts.format == "csv" {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in reports {
            out.push_str(&r.to_csv());
        }
        out
    } else {
        let items: Vec<String> = reports
            .iter()
            .map(|r| r.to_json(!opts.no_timings))
            .collect();
        if items.len() == 1 {
            format!("{}\n", items[0])
        } else {
            format!("[{}]\n", items.join(","))
        }
    }
}

fn emit(body: &str, opts: &Options) {
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("cannot write {path}: {e}");
            }
        }
        None => print!("{body}"),
    }
}

fn print_profile() {
    let (spairs, reductions, bases) = stats_snapshot();
    eprintln!("groebner: {bases} bases, {spairs} s-pairs, {reductions} reduction steps");
}

fn exit_for(e: &HarnessError) -> ExitCode {
    match e {
        HarnessError::Config(_) => ExitCode::from(2),
        HarnessError::Computation { .. } => ExitCode::from(3),
    }
}
