fn main() {
    std::process::exit(pso_planner::cli::run(std::env::args_os()));
}
