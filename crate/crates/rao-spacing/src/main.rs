fn main() {
    std::process::exit(rao_spacing::cli::run(std::env::args_os()));
}
