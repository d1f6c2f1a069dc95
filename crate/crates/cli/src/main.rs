fn main() {
    std::process::exit(symclt::run(std::env::args().skip(1)));
}
