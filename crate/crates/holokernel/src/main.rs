use std::process::ExitCode;

fn main() -> ExitCode {
    holokernel::cli::run()
}
