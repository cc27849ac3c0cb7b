fn main() {
    std::process::exit(hm_forge::cli::main_with_args(std::env::args_os()));
}
