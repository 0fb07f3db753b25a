fn main() {
    std::process::exit(lombardi::cli::run(std::env::args_os()));
}
