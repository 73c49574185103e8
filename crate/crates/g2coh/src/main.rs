fn main() {
    std::process::exit(g2coh::cli::main());
}
