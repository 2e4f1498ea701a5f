fn main() {
    std::process::exit(fibcurve::cli::run());
}
