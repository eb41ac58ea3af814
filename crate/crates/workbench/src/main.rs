fn main() -> std::process::ExitCode {
    lambda_workbench::cli::main()
}
