fn main() {
    std::process::exit(fvs_spectra::cli::dispatch(std::env::args_os()));
}
