use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::init();
    match ellsurj_cli::run(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ellsurj: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
