fn main() {
    std::process::exit(sawgadget::cli::run(std::env::args().collect()));
}
