fn main() {
    std::process::exit(pareto_judge::cli::run(std::env::args_os()));
}
