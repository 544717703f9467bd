fn main() {
    std::process::exit(ci_cli::main_with_args(std::env::args_os()));
}
