fn main() {
    std::process::exit(konig::cli::run(std::env::args_os()));
}
