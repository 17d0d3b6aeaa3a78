use cdelab::cli::{render_table, run_job, JobSpec};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "cdelab",
    version,
    about = "Exact decomposition/Cartan data for deformed algebras and a truncated category O for sl2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the cde identities for an algebra loaded from JSON.
    Verify {
        /// Path to the algebra description.
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a built-in Hecke algebra example.
    Hecke {
        /// Family: A1 or A2.
        #[arg(long = "type")]
        family: String,
        /// The parameter q, in the scalar grammar (e.g. "z + t").
        #[arg(long)]
        q: String,
        /// Cyclotomic order n of the coefficient field Q(zeta_n).
        #[arg(long = "cyclo", default_value_t = 1)]
        cyclotomic_order: u32,
    },
    /// Reciprocity table for truncated category O of sl2.
    Osl2 {
        /// Reduced window weights (integers).
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        gamma: Vec<i64>,
        /// Truncation depth N.
        #[arg(long)]
        depth: usize,
        /// Work over the undeformed special fiber only.
        #[arg(long)]
        no_deform: bool,
    },
    /// Lift an idempotent of the special fiber to finite t-adic precision.
    Lift {
        /// Path to the algebra description.
        #[arg(long)]
        input: PathBuf,
        /// The idempotent, as an expression in basis labels and scalars.
        #[arg(long)]
        idempotent: String,
        /// Target precision N (modulo t^N).
        #[arg(long)]
        precision: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let job = match cli.command {
        Command::Verify { input } => JobSpec::VerifyCde {
            input: input.to_string_lossy().into_owned(),
        },
        Command::Hecke {
            family,
            q,
            cyclotomic_order,
        } => JobSpec::HeckeExample {
            family,
            q,
            cyclotomic_order,
        },
        Command::Osl2 {
            gamma,
            depth,
            no_deform,
        } => JobSpec::Osl2Duality {
            gammas: gamma,
            depth,
            deform: !no_deform,
        },
        Command::Lift {
            input,
            idempotent,
            precision,
        } => JobSpec::LiftDemo {
            input: input.to_string_lossy().into_owned(),
            idempotent,
            precision,
        },
    };

    let started = Instant::now();
    let report = match run_job(&job) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());

    let rendered = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => render_table(&report),
    };
    match cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).expect("stdout");
        }
    }
}
