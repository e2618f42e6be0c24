use std::io;

fn main() {
    let code = qfine_cli::app::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
