fn main() {
    std::process::exit(equicode::cli::run(std::env::args_os()));
}
