fn main() {
    std::process::exit(entrobound::cli::main_entry());
}
