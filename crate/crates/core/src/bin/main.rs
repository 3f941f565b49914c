use std::io::Write;

fn main() {
    let outcome = nori_kernel::cli::run(std::env::args_os());
    if outcome.written_to.is_none() {
        let stream = if outcome.code == 2 && !outcome.output.trim_start().starts_with('{') {
            &mut std::io::stderr() as &mut dyn Write
        } else {
            &mut std::io::stdout() as &mut dyn Write
        };
        let _ = stream.write_all(outcome.output.as_bytes());
    }
    std::process::exit(outcome.code);
}
