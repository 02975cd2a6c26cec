fn main() {
    std::process::exit(lie2kit::cli::main_with(std::env::args_os()));
}
