use clap::{Parser, ValueEnum};
use rankgrowth::cli::{run, Command, RunConfig, RunInputs};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, ValueEnum)]
enum Sub {
    Audit,
    CharCheck,
    Census,
    Classgroup,
    Principal,
    Admissible,
    Quartics,
    SelmerLedger,
    Pipeline,
}

/// Group audits, cubic field arithmetic and Selmer bookkeeping; reports are JSON lines.
#[derive(Parser)]
#[command(version)]
struct Args {
    command: Sub,
    /// TOML config; defaults apply when omitted.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// JSON ledger file for selmer-ledger.
    #[arg(long)]
    ledger: Option<PathBuf>,
    /// Record wall-clock time in each report line.
    #[arg(long)]
    timing: bool,
}

fn load(args: &Args) -> rankgrowth::Result<(RunConfig, RunInputs)> {
    let read = |p: &PathBuf| {
        std::fs::read_to_string(p).map_err(|e| rankgrowth::Error::BadInput(format!("{}: {e}", p.display())))
    };
    let mut cfg = match &args.config {
        Some(p) => RunConfig::from_toml(&read(p)?)?,
        None => RunConfig::default(),
    };
    cfg.apply_env(&|k| std::env::var(k).ok())?;
    cfg.timing |= args.timing;
    let ledger_json = args.ledger.as_ref().map(read).transpose()?;
    Ok((cfg, RunInputs { ledger_json }))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cmd = match args.command {
        Sub::Audit => Command::Audit,
        Sub::CharCheck => Command::CharCheck,
        Sub::Census => Command::Census,
        Sub::Classgroup => Command::ClassGroup,
        Sub::Principal => Command::Principal,
        Sub::Admissible => Command::Admissible,
        Sub::Quartics => Command::Quartics,
        Sub::SelmerLedger => Command::SelmerLedger,
        Sub::Pipeline => Command::Pipeline,
    };
    let result = load(&args).and_then(|(cfg, inputs)| {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        run(cmd, &cfg, &inputs, &mut lock)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rankgrowth {}: {e}", cmd.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
