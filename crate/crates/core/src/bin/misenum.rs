fn main() {
    std::process::exit(misenum::cli::run());
}
