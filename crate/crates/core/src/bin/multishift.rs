use clap::Parser;
use multishift::cli::{main_with, RunConfig, EXIT_INPUT_ERROR};

fn main() {
    let config = RunConfig::try_parse().unwrap_or_else(|err| {
        // Usage errors are input errors; exit status 2 is reserved for
        // failed verification.
        let code = if err.use_stderr() {
            EXIT_INPUT_ERROR
        } else {
            0
        };
        let _ = err.print();
        std::process::exit(code);
    });
    std::process::exit(main_with(&config));
}
