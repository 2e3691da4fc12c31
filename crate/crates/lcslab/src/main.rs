fn main() {
    std::process::exit(lcslab::run(std::env::args_os()));
}
