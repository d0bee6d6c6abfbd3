fn main() {
    std::process::exit(zerodim::cli::run());
}
