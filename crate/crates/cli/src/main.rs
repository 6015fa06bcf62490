fn main() {
    std::process::exit(pade_lab_cli::run(std::env::args_os()));
}
