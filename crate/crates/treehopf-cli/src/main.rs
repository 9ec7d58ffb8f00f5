use std::io::Read;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut stdin = String::new();
    if args.iter().any(|a| a == "-") {
        let _ = std::io::stdin().read_to_string(&mut stdin);
    }
    let code = treehopf_cli::run(&args, &stdin, &mut std::io::stdout());
    std::process::exit(code);
}
