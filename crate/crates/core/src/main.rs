fn main() {
    std::process::exit(qsuff::cli::run(std::env::args_os()));
}
