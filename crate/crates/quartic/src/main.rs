use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut meta = stderr.lock();
    let code = quartic::run(std::env::args_os(), &mut out, &mut meta);
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
