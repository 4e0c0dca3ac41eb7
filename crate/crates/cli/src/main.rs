//! `taut-calc`: command-line front end for the tautological intersection calculus.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "taut-calc", version, about = "Exact intersection numbers on tautological rings of nodal curve families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,

    /// Character file with `key = value` lines.
    #[arg(long, global = true)]
    pub chars: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Kv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Area under the staircase j_m(m).
    Alpha {
        #[arg(short = 'm', long = "level")]
        m: u32,
    },
    /// Colength vector beta(m, 1..m-1).
    Beta {
        m: u32,
        /// Binomial coefficient eta (nonzero rational).
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Colength of the staircase ideal j_m(m), or of its binomial deformation for one j.
    Colength {
        #[arg(short = 'm', long = "level")]
        m: u32,
        #[arg(short = 'j')]
        j: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Chain and syzygy identities among the mixed Vandermonde determinants.
    VdmCheck {
        #[arg(short = 'm', long = "level")]
        m: usize,
    },
    /// Valuations of G_j along special-fibre components, by component size.
    OrdTable {
        #[arg(short = 'm', long = "level")]
        m: usize,
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
    /// t-exponents relating G_i G_j to the discriminant.
    Eta {
        #[arg(short = 'm', long = "level")]
        m: usize,
    },
    /// Normal form of an expression on W^m.
    Normalize {
        #[arg(short = 'm', long = "level")]
        m: u32,
        expr: String,
    },
    /// Integral of an expression over W^m.
    Integrate {
        #[arg(short = 'm', long = "level")]
        m: u32,
        expr: String,
    },
    /// Graded pieces of the Chern class of the tautological bundle of a divisor.
    Chern {
        #[arg(short = 'm', long = "level")]
        m: u32,
        #[arg(long, default_value = "L")]
        class: String,
    },
    /// Integral of a product of special Schubert classes over a Grassmannian.
    Schubert {
        /// Box `A,B`: A rows, B columns.
        #[arg(long = "box")]
        bounds: String,
        /// Comma-separated factors like `r4,r3,c2` (row or column strips).
        #[arg(long)]
        factors: String,
    },
    /// The 3-secant count assembled from Grassmannian and tower integrals.
    Nsec3,
    /// Replays every published check and prints a summary table.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::CliError;

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["taut-calc", "integrate", "-m", "3", "Delta<3>^4", "--format", "kv"]).unwrap();
        assert_eq!(cli.format, Format::Kv);
        assert!(matches!(cli.command, Command::Integrate { m: 3, .. }));
    }

    #[test]
    fn usage_errors_are_errors() {
        assert!(Cli::try_parse_from(["taut-calc", "beta"]).is_err());
        assert!(Cli::try_parse_from(["taut-calc", "integrate", "-m", "x", "Gamma<2>"]).is_err());
    }

    #[test]
    fn exit_codes_are_disjoint() {
        let usage = CliError::Usage("x".into()).exit_code();
        let grading = CliError::from(taut_core::TautError::Dimension("x".into())).exit_code();
        assert_eq!((usage, grading), (1, 2));
    }
}
