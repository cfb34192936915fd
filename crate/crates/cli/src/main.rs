mod groupfile;
mod report;
mod suites;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::suites::Params;

#[derive(Parser)]
#[command(name = "stein", about = "Exact finite-field checks for Steinberg idempotents, subgroup posets and layer series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup lattice summary.
    Lattice(Common),
    /// Run one invariant suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Per-subgroup and total series for both sides.
    Series(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Steinberg,
    Strata,
    Frattini,
    Homs,
    Gsets,
    Series,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Catalog spec (`cyclic:8`, `elem:2,3`, ...) or `@path` to a Cayley table.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest number of non-basepoint points for the gsets suite.
    #[arg(long)]
    max_points: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    allow_large: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn params(&self) -> Params {
        Params {
            group: self.group.clone(),
            n: self.n,
            r: self.r,
            p: self.p,
            max_degree: self.max_degree,
            max_points: self.max_points,
            allow_large: self.allow_large,
            seed: self.seed,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Lattice(c) => (c, suites::cmd_lattice(&c.params())),
        Command::Series(c) => (c, suites::cmd_series(&c.params())),
        Command::Verify { suite, common: c } => {
            let params = c.params();
            let result = match suite {
                Suite::Steinberg => suites::verify_steinberg(&params),
                Suite::Strata => suites::verify_strata(&params),
                Suite::Frattini => suites::verify_frattini(&params),
                Suite::Homs => suites::verify_homs(&params),
                Suite::Gsets => suites::verify_gsets(&params),
                Suite::Series => suites::verify_series(&params),
            };
            (c, result)
        }
    };
    match result {
        Ok(report) => {
            match common.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Csv => print!("{}", report.to_csv()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
