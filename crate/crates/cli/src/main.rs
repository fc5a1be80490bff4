use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use freelocus_cli::{run, Format, RunConfig, COMMANDS};

#[derive(Parser)]
#[command(name = "freelocus", version, about = "Decision procedures for noncommutative matrix polynomials")]
struct Cli {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest matrix size sampled.
    #[arg(long = "max-size", default_value_t = 4)]
    max_size: usize,
    /// Samples per size.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Modulus for modular identity testing.
    #[arg(long, default_value_t = freelocus::linalg::DEFAULT_PRIME)]
    prime: u64,
    /// Certify containment by block matching instead of sampling lines.
    #[arg(long)]
    certified: bool,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,
    /// Inputs as `key=value` or in positional order.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    args: Vec<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // malformed flags are input errors like any other
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    let config = RunConfig {
        seed: cli.seed,
        n_max: cli.max_size,
        trials: cli.trials,
        prime: cli.prime,
        certified: cli.certified,
        format: if cli.text { Format::Text } else { Format::Json },
    };
    let out = run(&cli.command, &cli.args, &config);
    // a closed pipe downstream is not an error of the command
    let _ = writeln!(std::io::stdout().lock(), "{}", out.body);
    ExitCode::from(out.exit_code as u8)
}
