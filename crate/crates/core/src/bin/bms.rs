fn main() {
    std::process::exit(binary_magic::cli::main());
}
