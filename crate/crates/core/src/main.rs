use std::io::Write;

fn main() {
    let stdin = std::io::stdin();
    let max_n = std::env::var(factorlab::cli::MAX_N_ENV).ok();
    let out = factorlab::cli::run(std::env::args_os(), &mut stdin.lock(), max_n.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
