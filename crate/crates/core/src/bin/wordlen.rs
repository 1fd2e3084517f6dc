fn main() {
    std::process::exit(wordlen::cli::run(std::env::args_os()));
}
