use clap::Parser;
use inbody::cli::{execute, RunConfig};

fn main() {
    if let Some(threads) = std::env::var("INBODY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let config = RunConfig::parse();
    std::process::exit(execute(&config));
}
