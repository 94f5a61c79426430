fn main() {
    std::process::exit(partition_identities::cli::run_cli(std::env::args_os()));
}
