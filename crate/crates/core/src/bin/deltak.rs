fn main() {
    std::process::exit(deltak::cli::run(std::env::args_os()));
}
