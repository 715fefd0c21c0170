fn main() {
    let code = ri_orthopoly::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
