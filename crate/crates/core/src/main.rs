fn main() {
    std::process::exit(qudit_lgt::cli::main_with_args(std::env::args_os()));
}
