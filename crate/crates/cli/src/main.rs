fn main() {
    std::process::exit(flagcoh_cli::run(std::env::args_os()));
}
