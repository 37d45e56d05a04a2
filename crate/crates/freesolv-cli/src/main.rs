fn main() {
    std::process::exit(freesolv_cli::run(std::env::args_os()));
}
