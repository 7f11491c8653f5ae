fn main() {
    std::process::exit(sbt_ilc::cli::run_cli(std::env::args_os()));
}
