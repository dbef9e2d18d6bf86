use std::process::ExitCode;

fn main() -> ExitCode {
    // The library treats 0/1/2/3 as meaningful exits; a panic anywhere is
    // an internal error and gets its own code.
    match std::panic::catch_unwind(forest_csf::cli::run_from_env) {
        Ok(code) => code,
        Err(_) => ExitCode::from(4),
    }
}
