fn main() -> std::process::ExitCode {
    cyclic_wcl::bench::cli::cli_main(std::env::args_os())
}
