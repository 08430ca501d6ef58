fn main() {
    std::process::exit(steercoh::cli::run(std::env::args_os()));
}
