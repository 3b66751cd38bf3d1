fn main() {
    std::process::exit(locent::cli::run(std::env::args()));
}
