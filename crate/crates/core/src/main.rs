fn main() {
    std::process::exit(neuroalign::cli::run_from_args(std::env::args_os()));
}
