fn main() {
    std::process::exit(lg_mirror::cli::run(std::env::args_os()));
}
