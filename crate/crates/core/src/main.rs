use std::io::Write;

use clap::Parser;
use supergrade::cli::{run, Args, EXIT_ERROR};

fn main() {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            // --help and --version are not errors.
            std::process::exit(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    let outcome = run(&args.into_config());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
