fn main() {
    std::process::exit(sepcover_cli::run(std::env::args_os()));
}
