fn main() -> std::process::ExitCode {
    noonflux::cli::main()
}
