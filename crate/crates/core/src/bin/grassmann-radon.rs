fn main() {
    std::process::exit(grassmann_radon::cli::run(std::env::args_os()));
}
