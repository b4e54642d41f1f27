fn main() {
    std::process::exit(ircl::cli_main(std::env::args_os()));
}
