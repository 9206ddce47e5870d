fn main() {
    std::process::exit(spinstar::cli::run(std::env::args_os()));
}
