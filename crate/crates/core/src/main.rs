fn main() {
    let (code, output) = refilt::cli::main_with_args(std::env::args_os());
    if !output.is_empty() {
        if code == 2 {
            eprintln!("{output}");
        } else {
            println!("{output}");
        }
    }
    std::process::exit(code);
}
