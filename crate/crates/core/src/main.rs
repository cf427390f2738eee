use std::io;

fn main() {
    let code = eca_circuits::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
