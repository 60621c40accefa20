use std::io::Write;

fn main() {
    let report = euclid_dual_cli::run_args(std::env::args_os());
    let out = if report.code == 2 { &mut std::io::stderr() as &mut dyn Write } else { &mut std::io::stdout() };
    let _ = out.write_all(report.text.as_bytes());
    std::process::exit(report.code);
}
