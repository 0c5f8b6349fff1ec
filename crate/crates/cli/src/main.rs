use std::io::Write;

use clap::Parser;
use qc_cli::{run, Args, EXIT_PRECONDITION};

fn main() {
    let args = match Args::try_parse() {
        Ok(a) => a,
        // Usage errors share the precondition code; help and version exit 0.
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            std::process::exit(EXIT_PRECONDITION);
        }
        Err(e) => e.exit(),
    };
    let out = run(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
