use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lodlens_server::config::parse_config_text;
use lodlens_server::{open_gateway, App, Overrides, ServerConfig};

/// Serve a Linked Data namespace as HTML, Turtle and N-Triples.
#[derive(Parser)]
#[command(name = "lodlens", version)]
struct Cli {
    /// Configuration file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    port: Option<u16>,
    /// SPARQL endpoint URL.
    #[arg(long)]
    endpoint: Option<String>,
    #[arg(long)]
    base_namespace: Option<String>,
    #[arg(long)]
    page_size: Option<usize>,
    /// Turtle file to serve from memory instead of an endpoint.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

fn load(cli: Cli) -> Result<ServerConfig, String> {
    let pairs = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_config_text(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Default::default(),
    };
    let overrides = Overrides {
        port: cli.port,
        endpoint: cli.endpoint,
        base_namespace: cli.base_namespace,
        page_size: cli.page_size,
        fixtures: cli.fixtures,
    };
    ServerConfig::from_pairs(pairs, overrides).map_err(|e| e.to_string())
}

#[tokio::main]
async fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let config = match load(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            log::error!("{e}");
            return ExitCode::from(1);
        }
    };
    let gateway = match open_gateway(&config) {
        Ok(g) => g,
        Err(e) => {
            log::error!("{e}");
            return ExitCode::from(1);
        }
    };
    let addr = SocketAddr::new(config.listen, config.port);
    let listener = match tokio::net::TcpListener::bind(addr).await {
        Ok(l) => l,
        Err(e) => {
            log::error!("cannot bind {addr}: {e}");
            return ExitCode::from(2);
        }
    };
    // Installed before the startup line so an early Ctrl-C still shuts down cleanly.
    let interrupted = match interrupt() {
        Ok(f) => f,
        Err(e) => {
            log::error!("cannot install signal handler: {e}");
            return ExitCode::from(1);
        }
    };
    let addr = listener.local_addr().unwrap_or(addr);
    log::info!("serving {} on http://{addr}", config.base_namespace());
    let router = App::new(&config, gateway).router();
    let shutdown = async {
        interrupted.await;
        log::info!("shutting down");
    };
    match axum::serve(listener, router).with_graceful_shutdown(shutdown).await {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(unix)]
fn interrupt() -> std::io::Result<impl std::future::Future<Output = ()>> {
    use tokio::signal::unix::{signal, SignalKind};
    let mut sig = signal(SignalKind::interrupt())?;
    Ok(async move {
        sig.recv().await;
    })
}

#[cfg(not(unix))]
fn interrupt() -> std::io::Result<impl std::future::Future<Output = ()>> {
    Ok(async {
        let _ = tokio::signal::ctrl_c().await;
    })
}
