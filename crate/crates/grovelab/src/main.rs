fn main() {
    std::process::exit(grovelab::cli::main_entry());
}
