fn main() {
    std::process::exit(hingefold::cli::run(std::env::args_os()));
}
