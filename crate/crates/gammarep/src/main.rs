fn main() {
    gammarep::cli::main()
}
