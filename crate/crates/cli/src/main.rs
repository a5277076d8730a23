use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(selflock::main_with(std::env::args_os()))
}
