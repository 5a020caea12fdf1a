fn main() {
    std::process::exit(lampi::cli::main());
}
