fn main() {
    std::process::exit(recipmaps::cli::run(std::env::args_os()));
}
