fn main() -> std::process::ExitCode {
    sphere_distort::cli::main()
}
