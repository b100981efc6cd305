fn main() {
    std::process::exit(salagean::cli::main_with_args(std::env::args_os()));
}
