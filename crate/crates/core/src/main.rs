use std::io::Write;
use std::process::ExitCode;

use nnscf::cli::{run_from, EXIT_CHECK_FAILED, EXIT_OK};

fn main() -> ExitCode {
    let outcome = run_from(std::env::args_os());
    // a failing report is still the requested output; errors go to stderr
    let _ = if outcome.code == EXIT_OK || outcome.code == EXIT_CHECK_FAILED {
        std::io::stdout().write_all(outcome.text.as_bytes())
    } else {
        std::io::stderr().write_all(outcome.text.as_bytes())
    };
    ExitCode::from(outcome.code as u8)
}
