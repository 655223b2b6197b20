//! Result documents.
//!
//! A document is an ordered JSON value. The default text form is YAML
//! (`key: value` with nested indentation); `--format json` writes the same
//! tree as pretty JSON. Both forms parse back with [`parse`], since JSON is
//! valid YAML. Big integers are always strings; small counts are numbers.
//!
//! The `timing` key is the only part of a document that may differ between
//! two runs of the same job.

use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Text => serde_yaml::to_string(doc).expect("a JSON tree is valid YAML"),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialize");
            s.push('\n');
            s
        }
    }
}

pub fn parse(src: &str) -> Result<Value, CliError> {
    serde_yaml::from_str(src).map_err(|e| CliError::Format(e.to_string()))
}

/// The document without its `timing` key, for comparisons.
pub fn without_timing(doc: &Value) -> Value {
    let mut d = doc.clone();
    if let Some(m) = d.as_object_mut() {
        m.remove("timing");
    }
    d
}

pub(crate) fn field<'a>(doc: &'a Value, path: &[&str]) -> Result<&'a Value, CliError> {
    let mut v = doc;
    for key in path {
        v = v.get(key).ok_or_else(|| CliError::Format(format!("missing `{}`", path.join("."))))?;
    }
    Ok(v)
}

pub(crate) fn field_u64(doc: &Value, path: &[&str]) -> Result<u64, CliError> {
    let v = field(doc, path)?;
    v.as_u64()
        .or_else(|| v.as_str().and_then(|s| s.parse().ok()))
        .ok_or_else(|| CliError::Format(format!("`{}` is not an unsigned integer", path.join("."))))
}

pub(crate) fn field_str<'a>(doc: &'a Value, path: &[&str]) -> Result<&'a str, CliError> {
    field(doc, path)?.as_str().ok_or_else(|| CliError::Format(format!("`{}` is not a string", path.join("."))))
}
