fn main() {
    std::process::exit(ultragram::cli::run_cli(std::env::args_os()));
}
