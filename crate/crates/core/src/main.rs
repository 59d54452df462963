fn main() {
    std::process::exit(oced_forge::cli::run_from_args(std::env::args_os()));
}
