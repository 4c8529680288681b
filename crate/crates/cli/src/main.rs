use std::process::ExitCode;

use bvd_cli::CliError;

fn main() -> ExitCode {
    let result = bvd_cli::parse_args(std::env::args_os().skip(1))
        .and_then(|cfg| bvd_cli::execute(&cfg, &mut std::io::stdout().lock()));
    let Err(err) = result else {
        return ExitCode::SUCCESS;
    };
    match &err {
        CliError::Clap(e) => {
            let _ = e.print();
        }
        e => eprintln!("bvd: {e}"),
    }
    ExitCode::from(err.exit_code() as u8)
}
