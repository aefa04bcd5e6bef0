fn main() {
    std::process::exit(ras_cli::run(std::env::args_os()));
}
