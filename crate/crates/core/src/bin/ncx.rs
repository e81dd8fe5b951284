fn main() {
    std::process::exit(ncx::cli::main_with(std::env::args_os()));
}
