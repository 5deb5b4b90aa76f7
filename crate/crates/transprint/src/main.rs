fn main() {
    std::process::exit(transprint::cli::run_from(std::env::args_os()));
}
