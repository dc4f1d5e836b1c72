//! Routes and handlers.

use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use axum::extract::{Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use lodlens_core::describe::{build_description, mark_math, BuilderConfig};
use lodlens_core::html::{escape_text, HtmlView, PageModel};
use lodlens_core::site::{Site, ASSETS_PREFIX, FRAGMENT_API, VALUES_API};
use lodlens_core::store::{Direction, Gateway, StoreError};
use lodlens_core::turtle::{serialize_ntriples, serialize_turtle, PrefixMap, SerializeOptions};
use lodlens_core::{BlankNodeId, Iri, Subject, Term};
use serde::{Deserialize, Serialize};

use crate::config::ServerConfig;
use crate::negotiate::{negotiate, Format, RouteDecision};

const STYLESHEET: &str = include_str!("lodlens.css");

/// Shared, read-only state of a running server.
pub struct App {
    gateway: Arc<dyn Gateway>,
    view: HtmlView,
    builder: BuilderConfig,
    page_size: usize,
    site_title: String,
    prefixes: PrefixMap,
    assets_dir: Option<PathBuf>,
}

impl App {
    pub fn new(config: &ServerConfig, gateway: Arc<dyn Gateway>) -> Self {
        App {
            gateway,
            view: HtmlView::new(config.site.clone(), config.prefixes.clone()),
            builder: config.builder.clone(),
            page_size: config.page_size,
            site_title: config.site_title.clone(),
            prefixes: config.prefixes.clone(),
            assets_dir: config.assets_dir.clone(),
        }
    }

    fn site(&self) -> &Site {
        self.view.site()
    }

    pub fn router(self) -> Router {
        Router::new()
            .route(FRAGMENT_API, get(fragment))
            .route(VALUES_API, get(values))
            .route(&format!("{ASSETS_PREFIX}{{*file}}"), get(asset))
            .fallback(get(resource))
            .with_state(Arc::new(self))
    }
}

fn text_response(status: StatusCode, message: &str) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, "text/plain; charset=utf-8")],
        format!("{message}\n"),
    )
        .into_response()
}

fn html_error(status: StatusCode, message: &str) -> Response {
    let reason = status.canonical_reason().unwrap_or("Error");
    let body = format!(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\" />\n<title>{} {reason}</title>\n</head>\n<body>\n<h1>{} {reason}</h1>\n<p>{}</p>\n</body>\n</html>\n",
        status.as_u16(),
        status.as_u16(),
        escape_text(message)
    );
    (status, [(header::CONTENT_TYPE, "text/html; charset=utf-8")], body).into_response()
}

fn error(status: StatusCode, message: &str, html: bool) -> Response {
    if html {
        html_error(status, message)
    } else {
        text_response(status, message)
    }
}

fn store_status(e: &StoreError) -> StatusCode {
    match e {
        StoreError::Unreachable(_) | StoreError::Endpoint { .. } | StoreError::MalformedResponse(_) => {
            StatusCode::BAD_GATEWAY
        }
        StoreError::Timeout => StatusCode::GATEWAY_TIMEOUT,
        StoreError::Unsupported(_) => StatusCode::NOT_FOUND,
    }
}

fn store_error(e: StoreError, html: bool) -> Response {
    log::warn!("store error: {e}");
    error(store_status(&e), &e.to_string(), html)
}

/// Canonical decoded form of a raw request path.
pub fn decode_path(site: &Site, raw: &str) -> Result<String, String> {
    let iri = Iri::parse(&format!("{}{raw}", site.origin())).map_err(|e| e.to_string())?;
    Ok(iri.as_str()[site.origin().len()..].to_owned())
}

async fn resource(State(app): State<Arc<App>>, uri: Uri, headers: HeaderMap) -> Response {
    let accept = headers.get(header::ACCEPT).and_then(|v| v.to_str().ok());
    let path = match decode_path(app.site(), uri.path()) {
        Ok(p) => p,
        Err(e) => return text_response(StatusCode::BAD_REQUEST, &format!("bad request path: {e}")),
    };
    let decision = negotiate(&path, accept);
    let (stem, format) = match &decision {
        RouteDecision::Serve { format, resource } => (resource.as_str(), Some(*format)),
        RouteDecision::Redirect303(_) => (path.as_str(), None),
        RouteDecision::BadRequest(reason) => return text_response(StatusCode::BAD_REQUEST, reason),
        RouteDecision::NotFound => return text_response(StatusCode::NOT_FOUND, "not found"),
    };
    let html = format == Some(Format::Html);
    let mut response = match app.site().resource_for_path(stem) {
        None => error(StatusCode::NOT_FOUND, &format!("{path} is not a resource of this site"), html),
        Some(iri) => match app.gateway.ask_exists(&iri).await {
            Err(e) => store_error(e, html),
            Ok(false) => error(StatusCode::NOT_FOUND, &format!("no data about {iri}"), html),
            Ok(true) => match (decision, format) {
                (RouteDecision::Redirect303(target), _) => redirect(&app, &iri, &target),
                (_, Some(format)) => serve(&app, iri, format).await,
                _ => unreachable!("decision and format agree"),
            },
        },
    };
    if format.is_none() {
        response
            .headers_mut()
            .insert(header::VARY, HeaderValue::from_static("Accept"));
    }
    response
}

fn redirect(app: &App, iri: &Iri, target: &str) -> Response {
    let suffix = &target[target.rfind('.').unwrap_or(target.len())..];
    let location = app
        .site()
        .document_path(iri, suffix)
        .expect("resource lies in the namespace");
    (StatusCode::SEE_OTHER, [(header::LOCATION, location)]).into_response()
}

async fn serve(app: &App, iri: Iri, format: Format) -> Response {
    let subject = Subject::Iri(iri);
    let bundle = match app.gateway.fetch_description(&subject, app.page_size).await {
        Ok(b) => b,
        Err(e) => return store_error(e, format == Format::Html),
    };
    let body = match format {
        Format::Html => {
            let d = build_description(&bundle, &subject, &app.builder);
            app.view
                .render_page(&PageModel::new(d, app.site(), &app.site_title))
        }
        Format::Turtle => {
            let graph = bundle.all_triples();
            let opts = SerializeOptions {
                decode_iris: true,
                emit_prefixes: true,
                base: None,
            };
            serialize_turtle(&graph, &app.prefixes.used_by(&graph), &opts)
        }
        Format::NTriples => serialize_ntriples(&bundle.all_triples()),
    };
    ([(header::CONTENT_TYPE, format.content_type())], body).into_response()
}

/// An IRI or `_:label` query parameter.
pub fn parse_node(text: &str) -> Result<Subject, String> {
    match text.strip_prefix("_:") {
        Some(label) => BlankNodeId::new(label)
            .map(Subject::Blank)
            .map_err(|e| e.to_string()),
        None => Iri::parse(text).map(Subject::Iri).map_err(|e| e.to_string()),
    }
}

#[derive(Deserialize)]
struct FragmentParams {
    uri: Option<String>,
}

async fn fragment(State(app): State<Arc<App>>, Query(params): Query<FragmentParams>) -> Response {
    let Some(uri) = params.uri else {
        return text_response(StatusCode::BAD_REQUEST, "missing uri parameter");
    };
    let node = match parse_node(&uri) {
        Ok(n) => n,
        Err(e) => return text_response(StatusCode::BAD_REQUEST, &format!("bad uri parameter: {e}")),
    };
    let bundle = match app.gateway.fetch_description(&node, app.page_size).await {
        Ok(b) => b,
        Err(e) => return store_error(e, false),
    };
    if bundle.is_empty() {
        return text_response(StatusCode::NOT_FOUND, &format!("no data about {uri}"));
    }
    let cfg = BuilderConfig {
        max_nesting_depth: 1,
        ..app.builder.clone()
    };
    let d = build_description(&bundle, &node, &cfg);
    (
        [(header::CONTENT_TYPE, Format::Html.content_type())],
        app.view.render_fragment(&d),
    )
        .into_response()
}

#[derive(Deserialize)]
struct ValuesParams {
    uri: Option<String>,
    property: Option<String>,
    direction: Option<String>,
    offset: Option<String>,
    limit: Option<String>,
}

/// One value in a page of the values API.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueObject {
    /// `iri`, `literal` or `bnode`.
    pub kind: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datatype: Option<String>,
    /// Where an IRI value leads.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<String>,
    /// Fragment API URL for values that can be expanded in place.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expand: Option<String>,
    pub is_math: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuesPage {
    pub values: Vec<ValueObject>,
    pub offset: usize,
    pub limit: usize,
    pub total: usize,
}

impl App {
    fn value_object(&self, term: &Term) -> ValueObject {
        let base = |kind: &str, text: String| ValueObject {
            kind: kind.into(),
            text,
            language: None,
            datatype: None,
            link: None,
            expand: None,
            is_math: false,
        };
        match term {
            Term::Iri(iri) => ValueObject {
                link: Some(self.site().href(iri)),
                expand: self
                    .site()
                    .is_local(iri)
                    .then(|| self.site().fragment_url(&Subject::Iri(iri.clone()))),
                ..base("iri", self.prefixes.compact(iri).unwrap_or_else(|| iri.as_str().to_owned()))
            },
            Term::Blank(b) => ValueObject {
                expand: Some(self.site().fragment_url(&Subject::Blank(b.clone()))),
                ..base("bnode", b.to_string())
            },
            Term::Literal(l) => ValueObject {
                language: l.language().map(str::to_owned),
                datatype: l.datatype().map(|d| d.as_str().to_owned()),
                is_math: mark_math(l, &self.builder),
                ..base("literal", l.lexical().to_owned())
            },
        }
    }
}

async fn values(State(app): State<Arc<App>>, Query(p): Query<ValuesParams>) -> Response {
    let bad = |m: String| text_response(StatusCode::BAD_REQUEST, &m);
    let (Some(uri), Some(property)) = (p.uri, p.property) else {
        return bad("uri and property parameters are required".into());
    };
    let node = match parse_node(&uri) {
        Ok(n) => n,
        Err(e) => return bad(format!("bad uri parameter: {e}")),
    };
    let property = match Iri::parse(&property) {
        Ok(i) => i,
        Err(e) => return bad(format!("bad property parameter: {e}")),
    };
    let direction = match p.direction.as_deref().map(str::parse::<Direction>) {
        None => Direction::Direct,
        Some(Ok(d)) => d,
        Some(Err(e)) => return bad(e.to_string()),
    };
    let offset = match p.offset.as_deref().map(str::parse::<i64>) {
        None => 0,
        Some(Ok(o)) if o >= 0 => o as usize,
        Some(Ok(o)) => return bad(format!("negative offset {o}")),
        Some(Err(e)) => return bad(format!("bad offset: {e}")),
    };
    let limit = match p.limit.as_deref().map(str::parse::<usize>) {
        None => app.page_size,
        Some(Ok(l)) if (1..=app.page_size).contains(&l) => l,
        Some(Ok(l)) => return bad(format!("limit {l} outside 1..={}", app.page_size)),
        Some(Err(e)) => return bad(format!("bad limit: {e}")),
    };
    let page = match app
        .gateway
        .fetch_property_page(&node, &property, direction, offset, limit)
        .await
    {
        Ok(p) => p,
        Err(e) => return store_error(e, false),
    };
    axum::Json(ValuesPage {
        values: page.values.iter().map(|v| app.value_object(v)).collect(),
        offset,
        limit,
        total: page.total,
    })
    .into_response()
}

fn asset_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("css") => "text/css; charset=utf-8",
        Some("js" | "mjs") => "text/javascript; charset=utf-8",
        Some("json" | "map") => "application/json",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("woff2") => "font/woff2",
        _ => "application/octet-stream",
    }
}

async fn asset(
    State(app): State<Arc<App>>,
    axum::extract::Path(file): axum::extract::Path<String>,
) -> Response {
    let relative = Path::new(&file);
    if !relative.components().all(|c| matches!(c, Component::Normal(_))) {
        return text_response(StatusCode::NOT_FOUND, "no such asset");
    }
    if let Some(dir) = &app.assets_dir {
        let path = dir.join(relative);
        if let Ok(bytes) = tokio::fs::read(&path).await {
            return ([(header::CONTENT_TYPE, asset_type(&path))], bytes).into_response();
        }
    }
    if file == "lodlens.css" {
        return ([(header::CONTENT_TYPE, asset_type(relative))], STYLESHEET).into_response();
    }
    text_response(StatusCode::NOT_FOUND, &format!("no asset {file}"))
}
