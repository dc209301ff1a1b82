//! Command-line front end.
//!
//! ```text
//! torsion compute <file> [--pin-sign] [--out <path>] [--pretty]
//! torsion verify <file> [--seed N] [--out <path>] [--pretty]
//! torsion catalog --genus G --euler N [--out <path>] [--pretty]
//! torsion alexander <file> [--out <path>] [--pretty]
//! ```
//!
//! All I/O is UTF-8 JSON. Exit codes: 0 success, 2 input/syntax error,
//! 3 link not algebraically split, 4 first Betti number out of scope,
//! 5 internal consistency alarm or failed identity check.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use torsion_core::engine::{torsion_function, LinkData, SurgeryComputation};
use torsion_core::error::Error;
use torsion_core::identities::{circle_bundle_catalog, run_verify};
use torsion_core::io::{
    alexander_json, catalog_json, error_json, exit_code, parse_link_file, torsion_json,
    verify_json,
};
use torsion_core::link::{alexander_multi, conway_data, conway_normalize};

#[derive(Parser)]
#[command(name = "torsion", version, about = "Exact torsion of surgered 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Write JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pretty-print the JSON output
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the torsion function and tau for a surgery input
    Compute {
        file: PathBuf,
        /// Mark the reported sign as pinned (asserts the engine's choice)
        #[arg(long)]
        pin_sign: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the identity suite against a surgery input
    Verify {
        file: PathBuf,
        /// Seed for the randomized moment checks
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Closed-form circle-bundle entry with its identity checks
    Catalog {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        euler: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Emit Alexander/Conway data for a link file
    Alexander {
        file: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e)))
}

fn emit(value: &Value, output: &OutputOpts) -> Result<(), Error> {
    let text = if output.pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    };
    match &output.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e))),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn cmd_compute(file: &PathBuf, pin_sign: bool, output: &OutputOpts) -> Result<(), Error> {
    let text = read_input(file)?;
    let input = torsion_core::io::parse_surgery_input(&text)?;
    let mut result = torsion_function(&input)?;
    if pin_sign {
        result.sign_pinned = true;
    }
    emit(&torsion_json(&result), output)
}

fn cmd_verify(file: &PathBuf, seed: u64, output: &OutputOpts) -> Result<i32, Error> {
    let text = read_input(file)?;
    let input = torsion_core::io::parse_surgery_input(&text)?;
    let result = SurgeryComputation::prepare(&input)?.run()?;
    let report = run_verify(&result, seed)?;
    emit(&verify_json(&report), output)?;
    Ok(if report.ok() { 0 } else { 5 })
}

fn cmd_catalog(genus: i64, euler: i64, output: &OutputOpts) -> Result<(), Error> {
    let entry = circle_bundle_catalog(genus, euler)?;
    emit(&catalog_json(&entry)?, output)
}

fn cmd_alexander(file: &PathBuf, output: &OutputOpts) -> Result<(), Error> {
    let text = read_input(file)?;
    let (link, framings) = parse_link_file(&text)?;
    let LinkData::Diagram(pd) = &link else {
        return Err(Error::InvalidInput(
            "alexander needs a diagram (pd or braid) input".into(),
        ));
    };
    let m = pd.num_components();
    let delta = alexander_multi(pd)?;
    let nabla = if m >= 2 {
        Some(conway_normalize(&delta, m)?.0)
    } else {
        None
    };
    let sublinks = match &framings {
        Some(f) => match conway_data(pd, f) {
            Ok(cd) => Some(cd),
            // sublink table only exists on the algebraically split path
            Err(Error::NotAlgebraicallySplit(..)) | Err(Error::BettiOutOfScope(_)) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    emit(
        &alexander_json(m, &delta, nabla.as_ref(), sublinks.as_ref()),
        output,
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<i32, Error> = match &cli.command {
        Command::Compute {
            file,
            pin_sign,
            output,
        } => cmd_compute(file, *pin_sign, output).map(|_| 0),
        Command::Verify { file, seed, output } => cmd_verify(file, *seed, output),
        Command::Catalog {
            genus,
            euler,
            output,
        } => cmd_catalog(*genus, *euler, output).map(|_| 0),
        Command::Alexander { file, output } => cmd_alexander(file, output).map(|_| 0),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            println!(
                "{}",
                serde_json::to_string(&error_json(&e)).expect("serializable")
            );
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
