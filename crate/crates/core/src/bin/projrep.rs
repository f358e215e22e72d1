use std::io::Write;

fn main() {
    let (code, out) = projrep::cli::run(std::env::args_os());
    let stream = if code == 0 || code == 4 { 1 } else { 2 };
    if stream == 1 {
        let _ = std::io::stdout().write_all(out.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(out.as_bytes());
    }
    std::process::exit(code);
}
