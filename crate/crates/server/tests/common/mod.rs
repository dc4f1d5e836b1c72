#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use lodlens_core::store::MemoryStore;
use lodlens_core::{Graph, Iri};
use lodlens_server::config::parse_config_text;
use lodlens_server::{open_gateway, App, Overrides, ServerConfig};
use tokio::io::{AsyncReadExt, AsyncWriteExt};

pub const RUTHES: (&str, &str) = ("ruthes.ttl", "http://lod.ruthes.org/resource/");
pub const WORDNET: (&str, &str) = ("wordnet.ttl", "http://wordnet-rdf.princeton.edu/wn31/");
pub const PAGING: (&str, &str) = ("paging.ttl", "http://lod.ruthes.org/resource/");

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_graph(name: &str) -> Graph {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    MemoryStore::from_turtle(&text, None).unwrap().graph().clone()
}

pub fn iri(s: &str) -> Iri {
    Iri::parse(s).unwrap()
}

pub fn config(fixture: (&str, &str), extra: &str) -> ServerConfig {
    let text = format!("base_namespace = {}\nsite_title = Test\n{extra}", fixture.1);
    let overrides = Overrides {
        fixtures: Some(fixture_path(fixture.0)),
        ..Default::default()
    };
    ServerConfig::from_pairs(parse_config_text(&text).unwrap(), overrides).unwrap()
}

pub struct TestServer {
    pub addr: std::net::SocketAddr,
    pub config: ServerConfig,
}

impl TestServer {
    pub fn url(&self, path: &str) -> String {
        format!("http://{}{path}", self.addr)
    }
}

pub async fn spawn(fixture: (&str, &str)) -> TestServer {
    spawn_config(config(fixture, "")).await
}

pub async fn spawn_config(config: ServerConfig) -> TestServer {
    let gateway = open_gateway(&config).unwrap();
    spawn_app(config, gateway).await
}

pub async fn spawn_app(
    config: ServerConfig,
    gateway: Arc<dyn lodlens_core::store::Gateway>,
) -> TestServer {
    let router = App::new(&config, gateway).router();
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, router).await.unwrap() });
    TestServer { addr, config }
}

pub fn client() -> reqwest::Client {
    reqwest::Client::builder()
        .redirect(reqwest::redirect::Policy::none())
        .build()
        .unwrap()
}

#[derive(Debug)]
pub struct RawResponse {
    pub status: u16,
    pub headers: Vec<(String, String)>,
    pub body: Vec<u8>,
}

impl RawResponse {
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, v)| v.as_str())
    }
}

/// Sends `target` byte for byte, so raw UTF-8 reaches the server unencoded.
pub async fn raw_get(addr: std::net::SocketAddr, target: &[u8], accept: Option<&str>) -> RawResponse {
    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    let mut request = b"GET ".to_vec();
    request.extend_from_slice(target);
    request.extend_from_slice(b" HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n");
    if let Some(a) = accept {
        request.extend_from_slice(format!("Accept: {a}\r\n").as_bytes());
    }
    request.extend_from_slice(b"\r\n");
    stream.write_all(&request).await.unwrap();
    let mut bytes = Vec::new();
    stream.read_to_end(&mut bytes).await.unwrap();
    let split = bytes.windows(4).position(|w| w == b"\r\n\r\n").expect("header end");
    let head = String::from_utf8(bytes[..split].to_vec()).unwrap();
    let mut lines = head.split("\r\n");
    let status = lines.next().unwrap().split(' ').nth(1).unwrap().parse().unwrap();
    let headers = lines
        .filter_map(|l| l.split_once(':'))
        .map(|(n, v)| (n.trim().to_owned(), v.trim().to_owned()))
        .collect();
    RawResponse {
        status,
        headers,
        body: bytes[split + 4..].to_vec(),
    }
}
