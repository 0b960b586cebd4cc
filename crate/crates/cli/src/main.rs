fn main() {
    std::process::exit(qmbench_cli::run_cli(std::env::args_os()));
}
