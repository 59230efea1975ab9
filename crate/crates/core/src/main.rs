fn main() {
    std::process::exit(starq::cli::main());
}
