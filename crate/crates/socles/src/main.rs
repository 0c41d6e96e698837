use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    let code = socles::cli::run(&argv, &mut out);
    let _ = out.flush();
    std::process::exit(code);
}
