fn main() {
    std::process::exit(zerogen::cli::run());
}
