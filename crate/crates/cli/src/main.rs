fn main() {
    std::process::exit(i32::from(epsgrade_cli::run(std::env::args_os())));
}
