fn main() {
    std::process::exit(nfa_index::cli::run(std::env::args_os()));
}
