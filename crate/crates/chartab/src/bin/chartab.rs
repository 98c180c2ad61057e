fn main() {
    let code = chartab::cli::run(std::env::args_os());
    std::process::exit(code);
}
