fn main() {
    std::process::exit(qcert::cli::main_with(std::env::args_os()));
}
