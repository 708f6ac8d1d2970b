use clap::Parser;

fn main() {
    // clap exits with code 2 on usage errors
    let cli = qpmlab::cli::Cli::parse();
    if let Err(err) = qpmlab::cli::run(&cli) {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}
