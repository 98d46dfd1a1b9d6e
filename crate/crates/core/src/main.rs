fn main() {
    std::process::exit(aspback::cli::main());
}
