use clap::Parser;
use ln_kit::cli::{run, Cli, EXIT_USAGE};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    if let Some(threads) = std::env::var("LN_KIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if threads > 0 {
            // Only fails if a pool is already installed, which cannot happen here.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = run(&cli, &mut out, &mut std::io::stderr());
    drop(out);
    ExitCode::from(code as u8)
}
