fn main() {
    std::process::exit(starlab_core::cli::run(std::env::args_os()));
}
