//! Scenario runner for the `qmbench` workbench.
//!
//! `qmbench <scenario> [--key value]...` resolves the scenario's parameter
//! schema from defaults, an optional TOML section `[scenario]` and the
//! command line, runs it and writes one CSV or JSON artifact.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::Parser;

pub mod error;
pub mod params;
pub mod report;
pub mod scenarios;

pub use error::CliError;
pub use report::{Format, Report};
pub use scenarios::{find, registry, Scenario};

use params::{config_section, parse_pairs, Params};

#[derive(Debug, Parser)]
#[command(name = "qmbench", version, about = "Run a named qmbench scenario and write its tables")]
pub struct Cli {
    /// Print every registered scenario with its parameters.
    #[arg(long)]
    pub list: bool,

    /// TOML file with one `[scenario]` section of parameters.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    pub scenario: Option<String>,

    /// Scenario parameters as `--key value` pairs.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    pub rest: Vec<String>,
}

/// Resolve parameters and run one scenario.
pub fn execute(scenario: &Scenario, section: &[(String, String)], flags: &[(String, String)]) -> Result<Report, CliError> {
    let params = Params::resolve(scenario.params, section, flags)?;
    let mut report = Report {
        scenario: scenario.name.to_string(),
        version: report::VERSION.to_string(),
        anchors: scenario.anchors.iter().map(|a| a.to_string()).collect(),
        params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        ..Default::default()
    };
    (scenario.run)(&params, &mut report)?;
    report.ensure_finite()?;
    Ok(report)
}

/// Registry dump for `--list`.
pub fn listing() -> String {
    let mut out = String::new();
    for s in registry() {
        let help = scenario_help(s);
        let (head, params) = help.split_once('\n').unwrap_or((&help, ""));
        let _ = writeln!(out, "{head}\n    reproduces: {}", s.anchors.join("; "));
        out.push_str(params);
    }
    out
}

fn scenario_help(s: &Scenario) -> String {
    let mut out = format!("{}: {}\n", s.name, s.description);
    for p in s.params {
        let _ = writeln!(out, "    {p}");
    }
    out
}

fn usage() -> String {
    let names: Vec<&str> = registry().iter().map(|s| s.name).collect();
    format!("usage: qmbench <scenario> [--key value]... [--config PATH] [--output PATH] [--format csv|json]\nscenarios: {}", names.join(", "))
}

/// Parse `args`, run, write the artifact. Returns the process exit status.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    if let Some(scenario) = args.get(1).and_then(|a| a.to_str()).and_then(find) {
        if args[2..].iter().any(|a| a == "--help" || a == "-h") {
            print!("{}", scenario_help(scenario));
            return 0;
        }
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qmbench: {e}");
            if matches!(e, CliError::Usage(_) | CliError::UnknownScenario(_)) {
                eprintln!("{}", usage());
            }
            e.exit_code()
        }
    }
}

fn dispatch(mut cli: Cli) -> Result<(), CliError> {
    if cli.list {
        print!("{}", listing());
        return Ok(());
    }
    let name = cli.scenario.take().ok_or_else(|| CliError::Usage("no scenario given".into()))?;
    let scenario = find(&name).ok_or_else(|| CliError::UnknownScenario(name.clone()))?;

    let mut flags = Vec::new();
    for (k, v) in parse_pairs(&cli.rest)? {
        match k.as_str() {
            "output" => cli.output = Some(PathBuf::from(v)),
            "config" => cli.config = Some(PathBuf::from(v)),
            "format" => {
                cli.format = <Format as clap::ValueEnum>::from_str(&v, true)
                    .map_err(|_| CliError::Usage(format!("unknown format `{v}`")))?
            }
            _ => flags.push((k, v)),
        }
    }
    let section = match &cli.config {
        Some(path) => config_section(path, scenario.name)?,
        None => Vec::new(),
    };

    let report = execute(scenario, &section, &flags)?;
    let text = report.encode(cli.format);
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output { path: path.display().to_string(), source })?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Output { path: "<stdout>".into(), source })?,
    }

    let failed = report.failed_checks();
    if !failed.is_empty() {
        let names: Vec<String> = failed.iter().map(|c| format!("{} = {:e} > {:e}", c.name, c.value, c.tolerance)).collect();
        return Err(CliError::Tolerance(names.join(", ")));
    }
    Ok(())
}
