fn main() {
    std::process::exit(semipi::cli::main_from_env());
}
