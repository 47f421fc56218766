fn main() -> std::process::ExitCode {
    lcif::cli::main_entry()
}
