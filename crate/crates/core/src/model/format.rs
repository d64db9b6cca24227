//! Model files.
//!
//! Text form, one `key: value` per line in any order, `#` starts a comment:
//!
//! ```text
//! generators: e1 e2 e3
//! d: e3 = e1^e2
//! foliation: e3
//! eta: e3
//! omega: e1^e2
//! ```
//!
//! `d:` may repeat; generators without a `d:` line are closed. `name:` is
//! optional. A document whose first non-blank character is `{` is read as
//! the JSON mirror
//! `{"generators": [...], "d": {"e3": "e1^e2"}, "foliation": [...], "eta": "e3", "omega": "..."}`.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::{CochainModel, FoliatedModel};
use crate::error::{Error, Result};
use crate::exterior::{parse_form, render_form, Form};

/// Parses and validates a model from text or JSON.
pub fn load_model(text: &str) -> Result<FoliatedModel> {
    if text.trim_start().starts_with('{') {
        load_json(text)
    } else {
        load_text(text)
    }
}

/// Renders `m` in the text format; [`load_model`] reads it back.
pub fn render_model(m: &FoliatedModel) -> String {
    let names = m.names();
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", m.name()));
    out.push_str(&format!("generators: {}\n", names.join(" ")));
    for (i, name) in names.iter().enumerate() {
        let dg = m.base().d_generator(i);
        if !dg.is_zero() {
            out.push_str(&format!("d: {name} = {}\n", render_form(dg, names)));
        }
    }
    let fol: Vec<&str> = m.foliation().iter().map(|&i| names[i].as_str()).collect();
    out.push_str(&format!("foliation: {}\n", fol.join(" ")));
    if let Some(e) = m.eta() {
        out.push_str(&format!("eta: {}\n", names[e]));
    }
    out.push_str(&format!("omega: {}\n", render_form(m.omega(), names)));
    out
}

struct Field<'a> {
    line: usize,
    /// 1-based column of the first character of `value`.
    column: usize,
    value: &'a str,
}

fn load_text(text: &str) -> Result<FoliatedModel> {
    let mut single: BTreeMap<&str, Field> = BTreeMap::new();
    let mut diffs: Vec<Field> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(Error::parse(line, col, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let rest = &content[colon + 1..];
        let lead = rest.len() - rest.trim_start().len();
        let column = content[..colon + 1 + lead].chars().count() + 1;
        let field = Field {
            line,
            column,
            value: rest.trim(),
        };
        match key {
            "d" => diffs.push(field),
            "generators" | "foliation" | "eta" | "omega" | "name" => {
                if single.insert(key, field).is_some() {
                    return Err(Error::parse(line, 1, format!("duplicate `{key}` line")));
                }
            }
            other => {
                let col = content.find(other).map_or(1, |p| content[..p].chars().count() + 1);
                return Err(Error::parse(line, col, format!("unknown key `{other}`")));
            }
        }
    }

    let gens = single
        .get("generators")
        .ok_or_else(|| Error::parse(1, 1, "missing `generators` line"))?;
    let names: Vec<String> = gens.value.split_whitespace().map(str::to_string).collect();
    for (name, col) in words(gens) {
        if !is_identifier(name) {
            return Err(Error::parse(gens.line, col, format!("invalid generator name `{name}`")));
        }
    }

    let lookup = |f: &Field, name: &str, col: usize| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::parse(f.line, col, format!("unknown generator `{name}`")))
    };
    let form_at = |f: &Field, text: &str, offset: usize| {
        parse_form(text, &names).map_err(|e| shift(e, f.line, f.column + offset))
    };

    let mut diff: Vec<Option<Form>> = vec![None; names.len()];
    for f in &diffs {
        let Some(eq) = f.value.find('=') else {
            return Err(Error::parse(f.line, f.column, "expected `generator = form`"));
        };
        let lhs = f.value[..eq].trim();
        let g = lookup(f, lhs, f.column)?;
        if diff[g].is_some() {
            return Err(Error::parse(f.line, f.column, format!("d({lhs}) given twice")));
        }
        let rhs = &f.value[eq + 1..];
        let offset = f.value[..eq + 1].chars().count();
        diff[g] = Some(form_at(f, rhs, offset)?);
    }
    let n = names.len();
    let diff: Vec<Form> = diff.into_iter().map(|d| d.unwrap_or_else(|| Form::zero(n))).collect();

    let mut foliation = Vec::new();
    if let Some(f) = single.get("foliation") {
        for (w, col) in words(f) {
            foliation.push(lookup(f, w, col)?);
        }
    }
    let eta = match single.get("eta") {
        Some(f) => Some(lookup(f, f.value, f.column)?),
        None => None,
    };
    let omega_field = single
        .get("omega")
        .ok_or_else(|| Error::parse(text.lines().count().max(1), 1, "missing `omega` line"))?;
    let omega = form_at(omega_field, omega_field.value, 0)?;
    let name = single.get("name").map_or("model", |f| f.value);

    let base = CochainModel::new(names, diff)?;
    FoliatedModel::new(name, base, foliation, omega, eta)
}

fn words<'a>(f: &Field<'a>) -> Vec<(&'a str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in f.value.char_indices().chain(std::iter::once((f.value.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((&f.value[s..i], f.column + f.value[..s].chars().count()));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn shift(e: Error, line: usize, column: usize) -> Error {
    match e {
        Error::Parse { column: c, message, .. } => Error::Parse {
            line,
            column: column + c - 1,
            message,
        },
        other => other,
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonModel {
    #[serde(default)]
    name: Option<String>,
    generators: Vec<String>,
    #[serde(default)]
    d: BTreeMap<String, String>,
    #[serde(default)]
    foliation: Vec<String>,
    #[serde(default)]
    eta: Option<String>,
    omega: String,
}

/// JSON values carry no positions once decoded, so form errors inside a
/// string are reported on line 1 with the column inside that string.
fn load_json(text: &str) -> Result<FoliatedModel> {
    let j: JsonModel = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let names = j.generators;
    for name in &names {
        if !is_identifier(name) {
            return Err(Error::parse(1, 1, format!("invalid generator name `{name}`")));
        }
    }
    let index = |name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::parse(1, 1, format!("unknown generator `{name}`")))
    };
    let n = names.len();
    let mut diff = vec![Form::zero(n); n];
    for (g, f) in &j.d {
        diff[index(g)?] = parse_form(f, &names)?;
    }
    let foliation = j.foliation.iter().map(|g| index(g)).collect::<Result<Vec<_>>>()?;
    let eta = j.eta.as_deref().map(index).transpose()?;
    let omega = parse_form(&j.omega, &names)?;
    let base = CochainModel::new(names, diff)?;
    FoliatedModel::new(j.name.unwrap_or_else(|| "model".into()), base, foliation, omega, eta)
}
