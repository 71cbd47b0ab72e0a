fn main() {
    std::process::exit(detsing::run(std::env::args_os()));
}
