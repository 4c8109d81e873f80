//! Command-line front end. Exit status: 0 when every check passes, 1 when a
//! check fails, 2 on a configuration error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::ext::Convention;
use crate::qalgebra::Algebra;
use crate::report::Report;
use crate::resolution::{build_minimal_segment, build_p_complex, build_resolution_n2, complex_to_json};
use crate::scalars::{with_field, Field, FieldVisitor};
use crate::suite::{self, default_n_max, Command, RunConfig, Suite};

#[derive(Debug, Parser)]
#[command(name = "nichols-ext", version, about = "Ext algebra of the A2 Nichols algebra at a root of unity")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Order of the diagonal braiding scalar qbar.
    #[arg(long = "N", global = true, default_value_t = 3)]
    pub n: usize,
    /// cyclotomic:L or fp:p:L. Defaults to the smallest prime p >= 1000 with p = 1 mod N.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// q12 as a power of the field's primitive root.
    #[arg(long = "q12-exp", global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub q12_exp: i64,
    #[arg(long, global = true, default_value = "full")]
    pub mode: String,
    /// Top Ext degree. Defaults to 8 for N=3, 6 for N>=5 and 10 for N=2.
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    /// Yoneda composition order: left or right.
    #[arg(long, global = true, default_value = "left")]
    pub convention: String,
    /// Also write the report as JSON; "-" prints JSON instead of text.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Report timing_ms as 0 so output is byte-stable.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Use the resolution stored in this JSON file instead of building one.
    #[arg(long, global = true)]
    pub complex: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Algebra parameters and basis sanity.
    Info,
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Ext dimensions with the closed form and complexity estimate.
    ExtDims,
    /// Write a resolution as JSON.
    Complex {
        #[arg(long, value_enum, default_value_t = ComplexChoice::Resolution)]
        kind: ComplexChoice,
        /// Destination file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexChoice {
    /// The resolution used for Ext: the N=2 resolution or the complex P.
    Resolution,
    /// The minimal segment through degree 4.
    Segment,
}

impl GlobalArgs {
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut config = RunConfig::new(self.n);
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("N must be at least 2, got {}", self.n)));
        }
        if let Some(field) = &self.field {
            config.field = field.parse()?;
        }
        config.q12_exp = self.q12_exp;
        config.mode = self.mode.parse()?;
        config.n_max = self.n_max.unwrap_or_else(|| default_n_max(self.n));
        config.convention = self.convention.parse::<Convention>()?;
        config.deterministic = self.deterministic;
        config.complex = self.complex.clone();
        suite::validate(&config)?;
        Ok(config)
    }
}

fn emit(report: &Report, json: Option<&PathBuf>) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match json {
        Some(p) if p.as_os_str() == "-" => writeln!(stdout, "{}", report.to_json())?,
        Some(p) => {
            std::fs::write(p, report.to_json() + "\n")?;
            write!(stdout, "{}", report.to_text())?;
        }
        None => write!(stdout, "{}", report.to_text())?,
    }
    Ok(())
}

fn write_complex(config: &RunConfig, kind: ComplexChoice, output: Option<&PathBuf>) -> Result<()> {
    struct V<'a>(&'a RunConfig, ComplexChoice);
    impl FieldVisitor for V<'_> {
        type Output = Result<String>;
        fn visit<F: Field>(self, field: F) -> Result<String> {
            let c = self.0;
            let alg = Algebra::from_exponents(field, c.n, c.q12_exp, c.mode)?;
            let complex = match (self.1, c.n) {
                (ComplexChoice::Segment, 2) => {
                    return Err(Error::Unsupported("the minimal segment is built for N >= 3".into()))
                }
                (ComplexChoice::Segment, _) => build_minimal_segment(&alg)?,
                (ComplexChoice::Resolution, 2) => build_resolution_n2(&alg, c.n_max + 1)?,
                (ComplexChoice::Resolution, _) => build_p_complex(&alg, c.n_max + 1)?,
            };
            complex_to_json(&alg, &complex)
        }
    }
    let text = with_field(&config.field, V(config, kind))??;
    match output {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli) -> u8 {
    let config = match cli.global.to_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let command = match &cli.command {
        CliCommand::Info => Command::Info,
        CliCommand::ExtDims => Command::ExtDims,
        CliCommand::Verify { suite } => match suite.parse::<Suite>() {
            Ok(s) => Command::Verify(s),
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        CliCommand::Complex { kind, output } => {
            return match write_complex(&config, *kind, output.as_ref()) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
    };
    let report = match suite::run(&config, command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Err(e) = emit(&report, cli.global.json.as_ref()) {
        eprintln!("error: {e}");
        return 2;
    }
    if report.passed() {
        0
    } else {
        1
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(execute(&cli))
}
