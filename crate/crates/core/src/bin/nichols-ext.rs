fn main() -> std::process::ExitCode {
    nichols_ext::cli::main()
}
