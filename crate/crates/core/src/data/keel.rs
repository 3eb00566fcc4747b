//! KEEL `.dat` reader and writer.

use log::warn;

use super::RawDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum AttrType {
    Numeric,
    Nominal(Vec<String>),
}

#[derive(Debug, Clone)]
struct AttrDecl {
    name: String,
    kind: AttrType,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('\'')
        .and_then(|t| t.strip_suffix('\''))
        .or_else(|| s.strip_prefix('"').and_then(|t| t.strip_suffix('"')))
        .unwrap_or(s)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|t| unquote(t).to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

/// Splits `@keyword rest` into a lowercase keyword and the remainder.
fn directive(line: &str) -> (String, &str) {
    let body = &line[1..];
    match body.find(char::is_whitespace) {
        Some(i) => (body[..i].to_ascii_lowercase(), body[i..].trim()),
        None => (body.to_ascii_lowercase(), ""),
    }
}

fn parse_attribute(rest: &str, line: usize) -> Result<AttrDecl> {
    let rest = rest.trim();
    let (name, tail) = if let Some(stripped) = rest.strip_prefix('\'') {
        let end = stripped
            .find('\'')
            .ok_or_else(|| parse_err(line, "unterminated quoted attribute name"))?;
        (stripped[..end].to_string(), stripped[end + 1..].trim())
    } else {
        let end = rest
            .find(|c: char| c.is_whitespace() || c == '{')
            .unwrap_or(rest.len());
        (rest[..end].to_string(), rest[end..].trim())
    };
    if name.is_empty() {
        return Err(parse_err(line, "attribute without a name"));
    }
    let kind = if let Some(open) = tail.strip_prefix('{') {
        let close = open
            .find('}')
            .ok_or_else(|| parse_err(line, "unterminated nominal value list"))?;
        AttrType::Nominal(split_list(&open[..close]))
    } else {
        let ty = tail
            .split(|c: char| c.is_whitespace() || c == '[')
            .next()
            .unwrap_or("")
            .to_ascii_lowercase();
        match ty.as_str() {
            "real" | "integer" | "numeric" => AttrType::Numeric,
            "" => return Err(parse_err(line, format!("attribute `{name}` has no type"))),
            other => {
                return Err(parse_err(
                    line,
                    format!("attribute `{name}` has unsupported type `{other}`"),
                ))
            }
        }
    };
    Ok(AttrDecl { name, kind })
}

/// Parses a KEEL `.dat` document.
///
/// Numeric input attributes become condition attributes. Nominal input
/// attributes are dropped with a warning. The single output attribute is the
/// decision; when `@outputs` is absent the last declared attribute is used.
pub fn parse_keel(text: &str) -> Result<RawDataset> {
    let mut attrs: Vec<AttrDecl> = Vec::new();
    let mut inputs: Option<(Vec<String>, usize)> = None;
    let mut outputs: Option<(Vec<String>, usize)> = None;
    let mut data_start = None;

    let lines: Vec<&str> = text.lines().collect();
    for (idx, raw_line) in lines.iter().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if !line.starts_with('@') {
            return Err(parse_err(lineno, "data row before @data"));
        }
        let (kw, rest) = directive(line);
        match kw.as_str() {
            "relation" => {}
            "attribute" => attrs.push(parse_attribute(rest, lineno)?),
            "inputs" | "input" => inputs = Some((split_list(rest), lineno)),
            "outputs" | "output" => outputs = Some((split_list(rest), lineno)),
            "data" => {
                data_start = Some(idx + 1);
                break;
            }
            other => return Err(parse_err(lineno, format!("unknown directive @{other}"))),
        }
    }
    let data_start = data_start.ok_or_else(|| parse_err(lines.len(), "missing @data section"))?;
    if attrs.is_empty() {
        return Err(parse_err(1, "no @attribute declarations"));
    }

    let find = |name: &str, line: usize| -> Result<usize> {
        attrs
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| parse_err(line, format!("unknown attribute `{name}`")))
    };
    let output = match &outputs {
        Some((names, line)) => {
            if names.len() != 1 {
                return Err(parse_err(*line, "exactly one output attribute is supported"));
            }
            find(&names[0], *line)?
        }
        None => attrs.len() - 1,
    };
    let input_cols: Vec<usize> = match &inputs {
        Some((names, line)) => names
            .iter()
            .map(|n| find(n, *line))
            .collect::<Result<_>>()?,
        None => (0..attrs.len()).filter(|&c| c != output).collect(),
    };
    if input_cols.contains(&output) {
        return Err(parse_err(1, "the output attribute is also listed as an input"));
    }

    let mut warnings = Vec::new();
    let mut numeric_inputs = Vec::new();
    for &c in &input_cols {
        match attrs[c].kind {
            AttrType::Numeric => numeric_inputs.push(c),
            AttrType::Nominal(_) => {
                let msg = format!("categorical attribute `{}` was removed", attrs[c].name);
                warn!("{msg}");
                warnings.push(msg);
            }
        }
    }

    let mut values = Vec::new();
    let mut labels = Vec::new();
    for (idx, raw_line) in lines.iter().enumerate().skip(data_start) {
        let lineno = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if line.starts_with('{') {
            return Err(parse_err(lineno, "sparse rows are not supported"));
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != attrs.len() {
            return Err(parse_err(
                lineno,
                format!("expected {} values, found {}", attrs.len(), cells.len()),
            ));
        }
        if let Some(pos) = cells.iter().position(|c| *c == "?" || c.is_empty()) {
            return Err(parse_err(
                lineno,
                format!("missing value for attribute `{}`", attrs[pos].name),
            ));
        }
        let row = numeric_inputs
            .iter()
            .map(|&c| {
                cells[c].parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                    parse_err(
                        lineno,
                        format!("non-numeric value `{}` for attribute `{}`", cells[c], attrs[c].name),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
        labels.push(unquote(cells[output]).to_string());
    }

    Ok(RawDataset {
        attribute_names: numeric_inputs.iter().map(|&c| attrs[c].name.clone()).collect(),
        values,
        labels,
        warnings,
    })
}

/// Writes a dataset as KEEL text with real-valued inputs and a nominal
/// output named `class`.
pub fn serialize_keel(name: &str, data: &RawDataset) -> String {
    let mut out = format!("@relation {name}\n");
    for (j, attr) in data.attribute_names.iter().enumerate() {
        let (lo, hi) = data
            .values
            .iter()
            .map(|r| r[j])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if data.values.is_empty() {
            out.push_str(&format!("@attribute {attr} real\n"));
        } else {
            out.push_str(&format!("@attribute {attr} real [{lo:?}, {hi:?}]\n"));
        }
    }
    let mut classes: Vec<&str> = Vec::new();
    for l in &data.labels {
        if !classes.contains(&l.as_str()) {
            classes.push(l);
        }
    }
    out.push_str(&format!("@attribute class {{{}}}\n", classes.join(", ")));
    out.push_str(&format!("@inputs {}\n", data.attribute_names.join(", ")));
    out.push_str("@outputs class\n@data\n");
    for (row, label) in data.values.iter().zip(&data.labels) {
        for v in row {
            out.push_str(&format!("{v:?}, "));
        }
        out.push_str(label);
        out.push('\n');
    }
    out
}
