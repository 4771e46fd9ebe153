fn main() -> std::process::ExitCode {
    monoquad::cli::main()
}
