fn main() {
    std::process::exit(tetra_horn::cli::main_with_args(std::env::args_os()));
}
