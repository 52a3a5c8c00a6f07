fn main() {
    std::process::exit(monodromy_lab::cli::main_with_args(std::env::args_os()));
}
