fn main() {
    let code = ortho8::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
