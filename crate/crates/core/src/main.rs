use std::io;

fn main() {
    let code = taxicab::cli::run(std::env::args().skip(1), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
