use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = gordian_cli::run(std::env::args().skip(1));
    print!("{output}");
    ExitCode::from(code as u8)
}
