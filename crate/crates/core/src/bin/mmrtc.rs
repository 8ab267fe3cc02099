fn main() {
    std::process::exit(mmrtc::cli::main());
}
