use std::collections::HashSet;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use flate2::read::GzDecoder;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::{AttributeValue, Classifier, Extension, XesAttribute, XesEvent, XesLog, XesTrace};
use crate::error::{line_column, Error, Result};
use crate::time::parse_datetime;

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

/// Reads a whole XES document. Gzip input is detected by its magic bytes.
pub fn parse_xes<R: Read>(mut input: R) -> Result<XesLog> {
    let mut raw = Vec::new();
    input.read_to_end(&mut raw)?;
    parse_xes_bytes(&raw)
}

pub fn parse_xes_file(path: impl AsRef<Path>) -> Result<XesLog> {
    parse_xes(File::open(path)?)
}

pub fn parse_xes_str(text: &str) -> Result<XesLog> {
    parse_xes_bytes(text.as_bytes())
}

pub fn parse_xes_bytes(raw: &[u8]) -> Result<XesLog> {
    if raw.starts_with(&GZIP_MAGIC) {
        let mut inflated = Vec::new();
        GzDecoder::new(raw).read_to_end(&mut inflated)?;
        XesParser::new(&inflated).parse()
    } else {
        XesParser::new(raw).parse()
    }
}

struct Element {
    name: String,
    attrs: Vec<(String, String)>,
    empty: bool,
}

impl Element {
    fn attr(&self, key: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

enum Node {
    Open(Element),
    Close,
    Eof,
}

struct XesParser<'a> {
    input: &'a [u8],
    reader: Reader<&'a [u8]>,
    warnings: Vec<String>,
}

impl<'a> XesParser<'a> {
    fn new(input: &'a [u8]) -> Self {
        let mut reader = Reader::from_reader(input);
        reader.config_mut().trim_text(true);
        XesParser {
            input,
            reader,
            warnings: Vec::new(),
        }
    }

    fn xml_error(&self, message: impl Into<String>) -> Error {
        let (line, column) = line_column(self.input, self.reader.buffer_position() as usize);
        Error::Xml {
            line,
            column,
            message: message.into(),
        }
    }

    fn element(&self, start: &BytesStart<'_>, empty: bool) -> Result<Element> {
        let name = String::from_utf8_lossy(start.local_name().as_ref()).into_owned();
        let mut attrs = Vec::new();
        for attr in start.attributes() {
            let attr = attr.map_err(|e| self.xml_error(e.to_string()))?;
            let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
            let value = attr
                .unescape_value()
                .map_err(|e| self.xml_error(e.to_string()))?
                .into_owned();
            attrs.push((key, value));
        }
        Ok(Element { name, attrs, empty })
    }

    fn next(&mut self) -> Result<Node> {
        loop {
            match self.reader.read_event() {
                Ok(Event::Start(start)) => return Ok(Node::Open(self.element(&start, false)?)),
                Ok(Event::Empty(start)) => return Ok(Node::Open(self.element(&start, true)?)),
                Ok(Event::End(_)) => return Ok(Node::Close),
                Ok(Event::Eof) => return Ok(Node::Eof),
                Ok(_) => continue,
                Err(e) => return Err(self.xml_error(e.to_string())),
            }
        }
    }

    /// Consumes the remainder of an already opened element.
    fn skip(&mut self, element: &Element, context: &str) -> Result<()> {
        self.warnings.push(format!(
            "skipped unknown element <{}> in {}",
            element.name, context
        ));
        if element.empty {
            return Ok(());
        }
        let mut depth = 1usize;
        while depth > 0 {
            match self.next()? {
                Node::Open(child) if !child.empty => depth += 1,
                Node::Open(_) => {}
                Node::Close => depth -= 1,
                Node::Eof => return Err(self.xml_error("unexpected end of document")),
            }
        }
        Ok(())
    }

    fn parse(mut self) -> Result<XesLog> {
        let root = match self.next()? {
            Node::Open(element) => element,
            Node::Close => return Err(self.xml_error("unexpected closing tag")),
            Node::Eof => return Err(self.xml_error("document has no root element")),
        };
        if root.name != "log" {
            return Err(Error::Structure(format!(
                "root element must be <log>, found <{}>",
                root.name
            )));
        }
        let mut log = XesLog {
            xes_version: root.attr("xes.version").unwrap_or_default().to_string(),
            ..Default::default()
        };
        if !root.empty {
            self.parse_log_body(&mut log)?;
        }
        // Trailing content after the root is still checked for well-formedness.
        if !matches!(self.next()?, Node::Eof) {
            return Err(self.xml_error("content after the root element"));
        }
        log.warnings = self.warnings;
        Ok(log)
    }

    fn parse_log_body(&mut self, log: &mut XesLog) -> Result<()> {
        let mut prefixes = HashSet::new();
        loop {
            let element = match self.next()? {
                Node::Open(e) => e,
                Node::Close => return Ok(()),
                Node::Eof => return Err(self.xml_error("unexpected end of document in <log>")),
            };
            match element.name.as_str() {
                "extension" => {
                    let ext = Extension {
                        name: element.attr("name").unwrap_or_default().to_string(),
                        prefix: element.attr("prefix").unwrap_or_default().to_string(),
                        uri: element.attr("uri").unwrap_or_default().to_string(),
                    };
                    if !prefixes.insert(ext.prefix.clone()) {
                        return Err(Error::Structure(format!(
                            "duplicate extension prefix `{}`",
                            ext.prefix
                        )));
                    }
                    log.extensions.push(ext);
                    self.finish_leaf(&element)?;
                }
                "global" => {
                    let attributes = self.parse_attribute_children(&element, "<global>")?;
                    match element.attr("scope").unwrap_or("event") {
                        "trace" => log.globals.trace.extend(attributes),
                        "event" => log.globals.event.extend(attributes),
                        other => {
                            return Err(Error::Structure(format!("unknown global scope `{other}`")))
                        }
                    }
                }
                "classifier" => {
                    log.classifiers.push(Classifier {
                        name: element.attr("name").unwrap_or_default().to_string(),
                        keys: split_classifier_keys(element.attr("keys").unwrap_or_default()),
                    });
                    self.finish_leaf(&element)?;
                }
                "trace" => {
                    let trace = self.parse_trace(&element)?;
                    log.traces.push(trace);
                }
                name if is_attribute_tag(name) => {
                    log.attributes.push(self.parse_attribute(&element)?);
                }
                _ => self.skip(&element, "<log>")?,
            }
        }
    }

    /// Elements like `<extension>` carry no children we care about.
    fn finish_leaf(&mut self, element: &Element) -> Result<()> {
        if element.empty {
            return Ok(());
        }
        loop {
            match self.next()? {
                Node::Close => return Ok(()),
                Node::Open(child) => self.skip(&child, &format!("<{}>", element.name))?,
                Node::Eof => return Err(self.xml_error("unexpected end of document")),
            }
        }
    }

    fn parse_trace(&mut self, element: &Element) -> Result<XesTrace> {
        let mut trace = XesTrace::default();
        if element.empty {
            return Ok(trace);
        }
        loop {
            match self.next()? {
                Node::Close => return Ok(trace),
                Node::Eof => return Err(self.xml_error("unexpected end of document in <trace>")),
                Node::Open(child) if child.name == "event" => {
                    let attributes = self.parse_attribute_children(&child, "<event>")?;
                    let mut seen = HashSet::new();
                    for attribute in &attributes {
                        if !seen.insert(attribute.key.as_str()) {
                            return Err(Error::DuplicateKey {
                                key: attribute.key.clone(),
                            });
                        }
                    }
                    trace.events.push(XesEvent { attributes });
                }
                Node::Open(child) if is_attribute_tag(&child.name) => {
                    trace.attributes.push(self.parse_attribute(&child)?);
                }
                Node::Open(child) => self.skip(&child, "<trace>")?,
            }
        }
    }

    fn parse_attribute_children(
        &mut self,
        element: &Element,
        context: &str,
    ) -> Result<Vec<XesAttribute>> {
        let mut attributes = Vec::new();
        if element.empty {
            return Ok(attributes);
        }
        loop {
            match self.next()? {
                Node::Close => return Ok(attributes),
                Node::Eof => {
                    return Err(self.xml_error(format!("unexpected end of document in {context}")))
                }
                Node::Open(child) if is_attribute_tag(&child.name) => {
                    attributes.push(self.parse_attribute(&child)?);
                }
                Node::Open(child) => self.skip(&child, context)?,
            }
        }
    }

    fn parse_attribute(&mut self, element: &Element) -> Result<XesAttribute> {
        let key = match element.attr("key") {
            Some(k) if !k.is_empty() => k.to_string(),
            _ => {
                return Err(Error::Structure(format!(
                    "<{}> attribute without a key",
                    element.name
                )))
            }
        };
        let raw = element.attr("value").unwrap_or_default();
        let value = match element.name.as_str() {
            "string" => AttributeValue::String(raw.to_string()),
            "id" => AttributeValue::Id(raw.to_string()),
            "date" => {
                AttributeValue::Date(parse_datetime(raw).ok_or_else(|| Error::InvalidDate {
                    key: key.clone(),
                    raw: raw.to_string(),
                })?)
            }
            "int" => AttributeValue::Int(raw.trim().parse().map_err(|_| Error::InvalidValue {
                key: key.clone(),
                kind: "int",
                raw: raw.to_string(),
            })?),
            "float" => {
                AttributeValue::Float(raw.trim().parse().map_err(|_| Error::InvalidValue {
                    key: key.clone(),
                    kind: "float",
                    raw: raw.to_string(),
                })?)
            }
            "boolean" => {
                AttributeValue::Boolean(parse_bool(raw).ok_or_else(|| Error::InvalidValue {
                    key: key.clone(),
                    kind: "boolean",
                    raw: raw.to_string(),
                })?)
            }
            "list" | "container" => {
                return Err(Error::Structure(format!(
                    "<{}> attribute `{key}` is not supported",
                    element.name
                )))
            }
            other => unreachable!("not an attribute tag: {other}"),
        };
        let context = format!("attribute `{key}`");
        let children = self.parse_attribute_children(element, &context)?;
        Ok(XesAttribute {
            key,
            value,
            children,
        })
    }
}

fn is_attribute_tag(name: &str) -> bool {
    matches!(
        name,
        "string" | "date" | "int" | "float" | "boolean" | "id" | "list" | "container"
    )
}

fn parse_bool(raw: &str) -> Option<bool> {
    match raw.trim() {
        "true" | "TRUE" | "True" | "1" => Some(true),
        "false" | "FALSE" | "False" | "0" => Some(false),
        _ => None,
    }
}

/// Classifier keys are whitespace separated; keys containing spaces are
/// wrapped in single quotes.
pub(super) fn split_classifier_keys(raw: &str) -> Vec<String> {
    let mut keys = Vec::new();
    let mut chars = raw.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '\'' {
            chars.next();
            let key: String = chars.by_ref().take_while(|&c| c != '\'').collect();
            keys.push(key);
        } else {
            let mut key = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                key.push(c);
                chars.next();
            }
            keys.push(key);
        }
    }
    keys
}
