fn main() {
    std::process::exit(kwong::cli::main_exit_code());
}
