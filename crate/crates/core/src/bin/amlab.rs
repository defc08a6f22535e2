fn main() {
    std::process::exit(amlab::cli::main_with(std::env::args_os()));
}
