fn main() {
    std::process::exit(recur2code::cli::main());
}
