fn main() {
    std::process::exit(logdpp::cli::run(std::env::args_os()));
}
