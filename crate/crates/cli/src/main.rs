use std::io::Write;

fn main() {
    let env_out = std::env::var_os(semiphoton_cli::settings::OUT_ENV).map(Into::into);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = semiphoton_cli::run(std::env::args_os(), env_out, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
