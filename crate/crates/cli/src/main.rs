use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use simplecurrent_cli::{parse_input, run_analysis, CliError, Format};

#[derive(Parser)]
#[command(
    name = "simplecurrent",
    version,
    about = "Simple current extensions of braided categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the simple current algebra described by a TOML or JSON file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Cross-check a pointed input against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

fn analyze(file: &PathBuf, format: OutputFormat, oracle: bool) -> Result<(String, bool), CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", file.display())))?;
    let mut doc = parse_input(&text, Format::for_path(file))?;
    doc.options.oracle |= oracle;
    let report = run_analysis(&doc)?;
    let agrees = report.oracle.as_ref().is_none_or(|o| o.agrees);
    let out = match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
    };
    Ok((out, agrees))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Analyze {
        file,
        format,
        oracle,
    } = cli.command;
    match analyze(&file, format, oracle) {
        Ok((out, agrees)) => {
            print!("{out}");
            if agrees {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: engine and brute-force oracle disagree");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
