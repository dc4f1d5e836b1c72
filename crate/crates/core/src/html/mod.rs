//! Server-side rendering of resource pages and fragments.
//!
//! Output is HTML5 that is also well-formed XML, so pages can be checked with
//! a strict parser. The class and `data-*` names the browser script relies on
//! are in [`contract`].

use std::fmt::Write;

use crate::describe::{DisplayValue, PropertyGroup, ResourceDescription};
use crate::iri::Iri;
use crate::site::{subject_param, Site};
use crate::store::Direction;
use crate::term::{Literal, Subject};
use crate::turtle::PrefixMap;

/// Names shared with the browser script.
pub mod contract {
    /// Wraps the raw source of a math literal.
    pub const MATH_CLASS: &str = "lodlens-math";
    /// Expand/collapse control; carries [`FRAGMENT_ATTR`].
    pub const EXPAND_CLASS: &str = "lodlens-expand";
    /// URL of the fragment API for the value.
    pub const FRAGMENT_ATTR: &str = "data-lodlens-fragment";
    /// `expanded` on controls whose content is already inline.
    pub const STATE_ATTR: &str = "data-lodlens-state";
    /// Load-more control.
    pub const MORE_CLASS: &str = "lodlens-more";
    /// Full URL of the next page of values.
    pub const VALUES_ATTR: &str = "data-lodlens-values";
    pub const RESOURCE_ATTR: &str = "data-lodlens-resource";
    pub const PROPERTY_ATTR: &str = "data-lodlens-property";
    pub const DIRECTION_ATTR: &str = "data-lodlens-direction";
    pub const OFFSET_ATTR: &str = "data-lodlens-offset";
    pub const TOTAL_ATTR: &str = "data-lodlens-total";
    /// Root element of every fragment and of the page body.
    pub const FRAGMENT_CLASS: &str = "lodlens-fragment";
    /// List of values inside one property row.
    pub const VALUES_CLASS: &str = "lodlens-values";
    pub const COLLECTION_CLASS: &str = "lodlens-collection";
    pub const NESTED_CLASS: &str = "lodlens-nested";
    pub const SIBLING_CLASS: &str = "lodlens-sibling";
    pub const EMPTY_CLASS: &str = "lodlens-empty";
    pub const STYLESHEET: &str = "/assets/lodlens.css";
    pub const SCRIPT: &str = "/assets/lodlens.js";
}

use contract::*;

/// Escapes `<`, `>`, `&` and `"`. Not idempotent.
pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '&' => out.push_str("&amp;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// Escapes data text for a text node. Line breaks are normalized to LF as
/// an HTML parser would; other control characters that may not appear in a
/// document are shown as their Unicode control pictures.
pub fn escape_text(text: &str) -> String {
    let visible: String = text
        .replace("\r\n", "\n")
        .replace('\r', "\n")
        .chars()
        .map(|c| match c {
            '\t' | '\n' => c,
            c if (c as u32) < 0x20 => char::from_u32(0x2400 + c as u32).unwrap_or('\u{FFFD}'),
            '\u{FFFE}' | '\u{FFFF}' => '\u{FFFD}',
            c => c,
        })
        .collect();
    escape_html(&visible)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageModel {
    pub description: ResourceDescription,
    /// (format label, path) pairs, e.g. ("Turtle", "/resource/x.ttl").
    pub alternate_links: Vec<(String, String)>,
    pub stylesheet: String,
    pub script: String,
    pub site_title: String,
}

impl PageModel {
    /// A model with the standard asset paths and Turtle/N-Triples alternates.
    pub fn new(description: ResourceDescription, site: &Site, site_title: &str) -> Self {
        let mut alternate_links = Vec::new();
        if let Subject::Iri(iri) = &description.resource {
            for (label, suffix) in [("Turtle", ".ttl"), ("N-Triples", ".nt")] {
                if let Some(path) = site.document_path(iri, suffix) {
                    alternate_links.push((label.to_owned(), path));
                }
            }
        }
        PageModel {
            description,
            alternate_links,
            stylesheet: STYLESHEET.to_owned(),
            script: SCRIPT.to_owned(),
            site_title: site_title.to_owned(),
        }
    }
}

/// Renders descriptions with links resolved against one site.
#[derive(Debug, Clone)]
pub struct HtmlView {
    site: Site,
    prefixes: PrefixMap,
}

impl HtmlView {
    pub fn new(site: Site, prefixes: PrefixMap) -> Self {
        HtmlView { site, prefixes }
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn render_page(&self, model: &PageModel) -> String {
        let d = &model.description;
        let heading = self.subject_text(&d.resource, d.label.as_deref());
        let mut out = String::with_capacity(4096);
        out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\" />\n");
        let _ = writeln!(
            out,
            "<title>{} | {}</title>",
            escape_text(&heading),
            escape_text(&model.site_title)
        );
        let _ = writeln!(
            out,
            "<link rel=\"stylesheet\" href=\"{}\" />",
            escape_html(&model.stylesheet)
        );
        for (label, path) in &model.alternate_links {
            let media = match path.rsplit('.').next() {
                Some("ttl") => "text/turtle",
                Some("nt") => "application/n-triples",
                _ => "application/octet-stream",
            };
            let _ = writeln!(
                out,
                "<link rel=\"alternate\" type=\"{media}\" href=\"{}\" title=\"{}\" />",
                escape_html(path),
                escape_html(label)
            );
        }
        let _ = writeln!(
            out,
            "<script src=\"{}\" defer=\"defer\"></script>\n</head>\n<body>\n<header>",
            escape_html(&model.script)
        );
        let _ = writeln!(out, "<p class=\"lodlens-site\">{}</p>", escape_text(&model.site_title));
        let _ = writeln!(out, "<h1>{}</h1>", escape_text(&heading));
        if let Subject::Iri(iri) = &d.resource {
            let _ = writeln!(
                out,
                "<p class=\"lodlens-iri\"><a href=\"{}\">{}</a></p>",
                escape_html(&self.site.href(iri)),
                escape_text(iri.as_str())
            );
        }
        if !model.alternate_links.is_empty() {
            out.push_str("<nav class=\"lodlens-formats\">");
            for (label, path) in &model.alternate_links {
                let _ = write!(
                    out,
                    "<a href=\"{}\">{}</a> ",
                    escape_html(path),
                    escape_html(label)
                );
            }
            out.push_str("</nav>\n");
        }
        out.push_str("</header>\n<main>\n");
        self.write_fragment(&mut out, d);
        out.push_str("</main>\n</body>\n</html>\n");
        out
    }

    /// The description without a document shell, for in-place insertion.
    pub fn render_fragment(&self, description: &ResourceDescription) -> String {
        let mut out = String::with_capacity(2048);
        self.write_fragment(&mut out, description);
        out
    }

    fn write_fragment(&self, out: &mut String, d: &ResourceDescription) {
        let _ = writeln!(
            out,
            "<div class=\"{FRAGMENT_CLASS}\" {RESOURCE_ATTR}=\"{}\">",
            escape_html(&subject_param(&d.resource))
        );
        if d.is_empty() {
            let _ = writeln!(
                out,
                "<p class=\"{EMPTY_CLASS}\">No data is available for this resource.</p>"
            );
        } else {
            self.write_table(out, &d.resource, &d.groups);
        }
        for (fragment, sibling) in &d.siblings {
            let _ = writeln!(
                out,
                "<section class=\"{SIBLING_CLASS}\" id=\"{}\">",
                escape_html(fragment)
            );
            let title = self.subject_text(&sibling.resource, sibling.label.as_deref());
            let _ = write!(out, "<h2>");
            if let Subject::Iri(iri) = &sibling.resource {
                let _ = write!(
                    out,
                    "<a href=\"{}\">{}</a>",
                    escape_html(&self.site.href(iri)),
                    escape_text(&title)
                );
            } else {
                out.push_str(&escape_text(&title));
            }
            out.push_str("</h2>\n");
            self.write_table(out, &sibling.resource, &sibling.groups);
            out.push_str("</section>\n");
        }
        out.push_str("</div>\n");
    }

    fn write_table(&self, out: &mut String, subject: &Subject, groups: &[PropertyGroup]) {
        if groups.is_empty() {
            let _ = writeln!(out, "<p class=\"{EMPTY_CLASS}\">No properties.</p>");
            return;
        }
        out.push_str("<table class=\"lodlens-properties\">\n<tbody>\n");
        for g in groups {
            self.write_row(out, subject, g);
        }
        out.push_str("</tbody>\n</table>\n");
    }

    fn write_row(&self, out: &mut String, subject: &Subject, g: &PropertyGroup) {
        let name = g
            .property_label
            .clone()
            .or_else(|| self.prefixes.compact(&g.property))
            .unwrap_or_else(|| g.property.as_str().to_owned());
        let name = match g.direction {
            Direction::Direct => name,
            Direction::Inverse => format!("is {name} of"),
        };
        let _ = write!(
            out,
            "<tr {DIRECTION_ATTR}=\"{}\"><th><a href=\"{}\" title=\"{}\">{}</a></th><td>",
            g.direction,
            escape_html(&self.site.href(&g.property)),
            escape_html(g.property.as_str()),
            escape_text(&name)
        );
        let _ = write!(out, "<ul class=\"{VALUES_CLASS}\">");
        for v in &g.values {
            out.push_str("<li>");
            self.write_value(out, v);
            out.push_str("</li>");
        }
        out.push_str("</ul>");
        if g.total > g.shown {
            let limit = g.shown.max(1);
            let _ = write!(
                out,
                "<button type=\"button\" class=\"{MORE_CLASS}\" {VALUES_ATTR}=\"{}\" {RESOURCE_ATTR}=\"{}\" {PROPERTY_ATTR}=\"{}\" {DIRECTION_ATTR}=\"{}\" {OFFSET_ATTR}=\"{}\" {TOTAL_ATTR}=\"{}\">Load more ({} of {} shown)</button>",
                escape_html(&self.site.values_url(subject, &g.property, g.direction.as_str(), g.shown, limit)),
                escape_html(&subject_param(subject)),
                escape_html(g.property.as_str()),
                g.direction,
                g.shown,
                g.total,
                g.shown,
                g.total
            );
        }
        out.push_str("</td></tr>\n");
    }

    fn write_value(&self, out: &mut String, v: &DisplayValue) {
        match v {
            DisplayValue::LinkedResource {
                iri,
                label,
                expandable,
            } => {
                let text = label.clone().unwrap_or_else(|| self.iri_text(iri));
                let _ = write!(
                    out,
                    "<a href=\"{}\" title=\"{}\">{}</a>",
                    escape_html(&self.site.href(iri)),
                    escape_html(iri.as_str()),
                    escape_text(&text)
                );
                if *expandable {
                    self.write_expand(out, &Subject::Iri(iri.clone()), false);
                }
            }
            DisplayValue::LiteralValue { literal, is_math } => self.write_literal(out, literal, *is_math),
            DisplayValue::NestedDescription { node, groups } => {
                let _ = write!(
                    out,
                    "<div class=\"{NESTED_CLASS}\" {RESOURCE_ATTR}=\"{}\">",
                    escape_html(&subject_param(node))
                );
                self.write_expand(out, node, true);
                self.write_table(out, node, groups);
                out.push_str("</div>");
            }
            DisplayValue::CollectionValue { members, .. } => {
                let _ = write!(out, "<ol class=\"{COLLECTION_CLASS}\">");
                for m in members {
                    out.push_str("<li>");
                    self.write_value(out, m);
                    out.push_str("</li>");
                }
                out.push_str("</ol>");
            }
            DisplayValue::BlankStub { node } => {
                let _ = write!(
                    out,
                    "<span class=\"lodlens-bnode\">{}</span>",
                    escape_html(&node.to_string())
                );
                self.write_expand(out, &Subject::Blank(node.clone()), false);
            }
        }
    }

    fn write_expand(&self, out: &mut String, node: &Subject, expanded: bool) {
        let state = if expanded {
            format!(" {STATE_ATTR}=\"expanded\"")
        } else {
            String::new()
        };
        let _ = write!(
            out,
            " <button type=\"button\" class=\"{EXPAND_CLASS}\" {FRAGMENT_ATTR}=\"{}\"{state}>{}</button>",
            escape_html(&self.site.fragment_url(node)),
            if expanded { "collapse" } else { "expand" }
        );
    }

    fn write_literal(&self, out: &mut String, literal: &Literal, is_math: bool) {
        let lang = literal
            .language()
            .map(|l| format!(" lang=\"{}\"", escape_html(l)))
            .unwrap_or_default();
        let class = if is_math { MATH_CLASS } else { "lodlens-literal" };
        let _ = write!(
            out,
            "<span class=\"{class}\"{lang}>{}</span>",
            escape_text(literal.lexical())
        );
        if let Some(l) = literal.language() {
            let _ = write!(out, " <span class=\"lodlens-lang\">@{}</span>", escape_html(l));
        } else if let Some(dt) = literal.datatype() {
            let _ = write!(
                out,
                " <span class=\"lodlens-datatype\" title=\"{}\">{}</span>",
                escape_html(dt.as_str()),
                escape_text(&self.iri_text(dt))
            );
        }
    }

    fn iri_text(&self, iri: &Iri) -> String {
        self.prefixes
            .compact(iri)
            .unwrap_or_else(|| iri.as_str().to_owned())
    }

    fn subject_text(&self, s: &Subject, label: Option<&str>) -> String {
        match (label, s) {
            (Some(l), _) => l.to_owned(),
            (None, Subject::Iri(i)) => i.as_str().to_owned(),
            (None, Subject::Blank(b)) => b.to_string(),
        }
    }
}
