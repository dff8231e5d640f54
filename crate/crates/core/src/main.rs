fn main() {
    std::process::exit(lcfk::cli::main_exit_code());
}
