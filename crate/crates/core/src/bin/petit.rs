use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use petit_lattice::pipeline::{self, Command, RunOptions};
use petit_lattice::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Inspect,
    Codes,
    Lattice,
    Dual,
    Stbc,
}

/// Codes, lattices and codeword matrices from Petit algebras over natural orders.
#[derive(Debug, Parser)]
#[command(name = "petit", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// JSON pipeline configuration.
    #[arg(long)]
    config: PathBuf,
    /// Directory for output files.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Worker threads; output does not depend on this.
    #[arg(long)]
    workers: Option<usize>,
    /// Also write approximate floating-point lattice generators.
    #[arg(long)]
    float_export: bool,
}

fn fail(e: &Error) -> ExitCode {
    eprint!("{}", pipeline::error_json(e));
    ExitCode::from(pipeline::exit_code(e) as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Inspect => Command::Inspect,
        Cmd::Codes => Command::Codes,
        Cmd::Lattice => Command::Lattice,
        Cmd::Dual => Command::Dual,
        Cmd::Stbc => Command::Stbc,
    };
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return fail(&Error::Config(format!("{}: {e}", args.config.display()))),
    };
    let opts = RunOptions { seed: args.seed, trials: args.trials, float_export: args.float_export };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = args.workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return fail(&Error::Config(format!("thread pool: {e}"))),
    };
    let output = match pool.install(|| pipeline::run(command, &text, opts)) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    if let Err(e) = std::fs::create_dir_all(&args.out) {
        return fail(&Error::Config(format!("{}: {e}", args.out.display())));
    }
    for (name, contents) in &output.files {
        let path = args.out.join(name);
        if let Err(e) = std::fs::write(&path, contents) {
            return fail(&Error::Config(format!("{}: {e}", path.display())));
        }
    }
    println!("{}", output.summary);
    ExitCode::SUCCESS
}
