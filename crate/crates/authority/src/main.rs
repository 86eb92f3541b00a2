use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use bpk_authority::{http, Authority, Config};
use clap::Parser;

/// Runs the central authority.
#[derive(Parser)]
#[command(name = "bpk-authority", version)]
struct Args {
    /// TOML or JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Address to listen on; overrides the config file and BPK_LISTEN.
    #[arg(long)]
    listen: Option<String>,
    /// Registry file; overrides the config file and BPK_DATA.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Print the public contents of the registry as JSON and exit.
    #[arg(long)]
    export: bool,
    /// Passphrase protecting secrets at rest.
    #[arg(long, env = "BPK_PASSPHRASE", hide_env_values = true)]
    passphrase: String,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::FAILURE
        }
    }
}

fn run(args: Args) -> Result<(), Box<dyn std::error::Error>> {
    let mut config = match &args.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    config.apply_env();
    config.apply_overrides(args.listen, args.data);

    let authority = Authority::open(config, args.passphrase.as_bytes())?;
    if args.export {
        println!("{}", serde_json::to_string_pretty(&authority.export_json()?)?);
        return Ok(());
    }

    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&authority.config().listen).await?;
        log::info!("listening on {}", listener.local_addr()?);
        http::serve(Arc::new(authority), listener).await
    })?;
    Ok(())
}
