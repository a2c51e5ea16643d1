use clap::Parser;

use moritakit::cli::{run, Args};

fn main() {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (out, code) = run(&args);
    print!("{out}");
    std::process::exit(code);
}
