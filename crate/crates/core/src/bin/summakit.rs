use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SUMMAKIT_LOG", "warn")).init();
    let cli = summakit::cli::Cli::parse();
    std::process::exit(summakit::cli::run(cli));
}
