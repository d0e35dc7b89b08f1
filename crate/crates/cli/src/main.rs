fn main() {
    std::process::exit(troplat_cli::run(std::env::args_os()));
}
