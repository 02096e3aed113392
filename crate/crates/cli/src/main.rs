mod commands;
mod error;
mod params;
mod table;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{value_parser, Arg, ArgAction, ArgMatches};

use commands::{Report, COMMANDS};
use error::CliError;
use params::{normalize_key, unknown_key, Params};

fn cli() -> clap::Command {
    let mut root = clap::Command::new("entenerg")
        .about("Ground-state energetics of small quantum systems coupled to bosonic environments")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(
            Arg::new("output")
                .long("output")
                .short('o')
                .global(true)
                .value_parser(value_parser!(PathBuf))
                .help("write the table here instead of stdout"),
        )
        .arg(
            Arg::new("config")
                .long("config")
                .short('c')
                .global(true)
                .value_parser(value_parser!(PathBuf))
                .help("file of `key = value` lines; flags take precedence"),
        )
        .arg(
            Arg::new("jobs")
                .long("jobs")
                .short('j')
                .global(true)
                .env("ENTENERG_JOBS")
                .value_parser(value_parser!(u64).range(1..))
                .help("worker threads for sweeps"),
        );
    for c in COMMANDS {
        let mut sub = clap::Command::new(c.name).about(c.about);
        for p in c.params {
            let mut arg = Arg::new(p.key)
                .long(p.key.replace('_', "-"))
                .value_name("VALUE")
                .allow_negative_numbers(true)
                .action(ArgAction::Set)
                .help(p.help.to_string() + &default_note(p.default));
            if p.key.contains('_') {
                arg = arg.alias(p.key);
            }
            if p.key.len() == 1 {
                arg = arg.alias(p.key.to_ascii_uppercase());
            }
            sub = sub.arg(arg);
        }
        root = root.subcommand(sub);
    }
    root
}

fn default_note(d: params::Default) -> String {
    match d {
        params::Default::Num(x) => format!(" [default: {x}]"),
        params::Default::Int(n) => format!(" [default: {n}]"),
        params::Default::Text(t) => format!(" [default: {t}]"),
        params::Default::Unset => String::new(),
    }
}

fn clap_error(e: clap::Error, args: &[String]) -> CliError {
    if e.kind() == ErrorKind::UnknownArgument {
        let command = args.iter().find_map(|a| commands::find(a));
        if let (Some(c), Some(ContextValue::String(bad))) = (command, e.get(ContextKind::InvalidArg)) {
            let key = normalize_key(bad.trim_start_matches('-').split('=').next().unwrap_or(bad));
            return unknown_key(c.name, &key, c.params);
        }
    }
    CliError::Config(e.to_string().trim_end().to_string())
}

fn run(args: Vec<String>) -> Result<(), CliError> {
    let matches = match cli().try_get_matches_from(&args) {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.print()?;
            return Ok(());
        }
        Err(e) => return Err(clap_error(e, &args)),
    };
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let command = commands::find(name).expect("registered subcommand");

    if let Some(&jobs) = global::<u64>(&matches, sub, "jobs") {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot start {jobs} workers: {e}")))?;
    }
    let file = match global::<PathBuf>(&matches, sub, "config") {
        Some(path) => params::read_config(path)?,
        None => BTreeMap::new(),
    };
    let flags = command
        .params
        .iter()
        .filter_map(|p| sub.get_one::<String>(p.key).map(|v| (p.key.to_string(), v.clone())))
        .collect();
    let params = Params::merge(command.name, command.params, file, flags)?;

    let mut report = Report::default();
    let result = (command.run)(&params, &mut report);
    for line in &report.lines {
        eprintln!("{line}");
    }
    let table = result?;
    match global::<PathBuf>(&matches, sub, "output") {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            table.write(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            table.write(&mut out)?;
        }
    }
    match report.verify_failures {
        Some((failed, total)) if failed > 0 => Err(CliError::VerifyFailed(failed, total)),
        _ => Ok(()),
    }
}

fn global<'a, T: Clone + Send + Sync + 'static>(root: &'a ArgMatches, sub: &'a ArgMatches, id: &str) -> Option<&'a T> {
    sub.get_one::<T>(id).or_else(|| root.get_one::<T>(id))
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
