fn main() {
    std::process::exit(ritt_cli::main_with_args(std::env::args_os()));
}
