fn main() {
    std::process::exit(spineq::cli::run(std::env::args_os()));
}
