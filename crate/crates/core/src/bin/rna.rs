fn main() {
    std::process::exit(rna_core::cli::main_from_env());
}
