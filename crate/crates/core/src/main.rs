fn main() {
    std::process::exit(qjfrac::cli::run(std::env::args_os()));
}
