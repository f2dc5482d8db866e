fn main() {
    std::process::exit(toric_df::cli::main_entry());
}
