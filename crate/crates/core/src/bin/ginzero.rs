use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::Value;

use ginzero::criteria::CrystallizationTarget;
use ginzero::job::{parse_ideal_file, run_command, Report, COMMANDS};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Gin0,
    Gin,
}

/// Zero-generic initial ideals and the invariants they control.
#[derive(Debug, Parser)]
#[command(name = "ginzero", version, after_help = commands_help())]
struct Cli {
    /// Command to run; `run` uses the "command" field of the job file.
    command: String,

    /// Job file in JSON, or `-` for standard input.
    file: PathBuf,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    trials: Option<usize>,

    #[arg(long)]
    min_field_size: Option<u128>,

    /// Degree window `LO:HI` for Hilbert and cohomology values.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,

    /// Restriction index for `restrict-reg`.
    #[arg(long)]
    index: Option<usize>,

    /// Ideal audited by `crystallize`.
    #[arg(long, value_enum)]
    target: Option<Target>,

    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn commands_help() -> String {
    format!("Commands: run, {}", COMMANDS.join(", "))
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for e in a {
                            out.push_str(&format!("{pad}  -\n"));
                            render_text(e, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn write_atomically(path: &PathBuf, text: &str) -> std::io::Result<()> {
    let mut tmp = path.clone().into_os_string();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

fn run(cli: &Cli) -> ginzero::Result<Report> {
    let text = if cli.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&cli.file)?
    };
    let mut spec = parse_ideal_file(&text)?;
    if let Some(s) = cli.seed {
        spec.seed = s;
    }
    if let Some(t) = cli.trials {
        spec.trials = t;
    }
    if let Some(m) = cli.min_field_size {
        spec.min_field_size = m;
    }
    if cli.window.is_some() {
        spec.flags.window = cli.window;
    }
    if cli.index.is_some() {
        spec.flags.index = cli.index;
    }
    if let Some(t) = cli.target {
        spec.flags.target = Some(match t {
            Target::Gin0 => CrystallizationTarget::Gin0,
            Target::Gin => CrystallizationTarget::Gin,
        });
    }
    let command = (cli.command != "run").then_some(cli.command.as_str());
    run_command(&spec, command)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_pretty_string(),
                Format::Text => {
                    let mut s = String::new();
                    render_text(&report.json, 0, &mut s);
                    s
                }
            };
            let written = match &cli.output {
                Some(p) => write_atomically(p, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let ginzero::Error::Certification { trial_outputs, .. } = &e {
                for t in trial_outputs {
                    eprintln!("  trial: {t}");
                }
            }
            ExitCode::from(1)
        }
    }
}
