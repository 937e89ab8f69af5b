fn main() {
    std::process::exit(omnikit::cli::run(std::env::args_os()));
}
