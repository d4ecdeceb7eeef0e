fn main() {
    std::process::exit(noppa::cli::run(std::env::args_os()));
}
