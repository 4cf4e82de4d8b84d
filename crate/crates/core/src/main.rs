fn main() {
    std::process::exit(hyperfield::cli::main_with_args(std::env::args_os()));
}
