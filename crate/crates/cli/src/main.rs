fn main() {
    std::process::exit(qeuler_cli::run(std::env::args_os()));
}
