fn main() {
    std::process::exit(pathword::cli::main());
}
