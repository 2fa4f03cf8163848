fn main() {
    std::process::exit(netrobust_core::cli::run(std::env::args_os()));
}
