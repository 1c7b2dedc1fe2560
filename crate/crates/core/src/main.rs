fn main() {
    std::process::exit(zetalie::cli::run(std::env::args_os()));
}
