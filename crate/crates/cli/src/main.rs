fn main() {
    std::process::exit(fuzzyfix::run(std::env::args_os()));
}
