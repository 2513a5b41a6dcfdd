use std::io::Write;

fn main() {
    zigzag::cli::init_logging();
    let out = zigzag::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
