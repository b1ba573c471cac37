//! Line format: one root per line as `eps:{i:q,...} nulls:{j:q,...}`,
//! preceded by `#`-header lines of `key=value` fields.

use std::collections::BTreeMap;

use super::RootVector;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::text::Cursor;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootLines {
    pub header: Vec<(String, String)>,
    pub roots: Vec<RootVector>,
}

impl RootLines {
    pub fn header_value(&self, key: &str) -> Option<&str> {
        self.header
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn write_map(m: &BTreeMap<u32, Q>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{}", fmt_q(v))).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn format_root(r: &RootVector) -> String {
    format!("eps:{} nulls:{}", write_map(r.eps()), write_map(r.nulls()))
}

/// Header fields go on one `#` line; values must not contain whitespace.
pub fn write_root_lines(header: &[(String, String)], roots: &[RootVector]) -> String {
    let mut out = String::new();
    if !header.is_empty() {
        let fields: Vec<String> = header.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("# {}\n", fields.join(" ")));
    }
    for r in roots {
        out.push_str(&format_root(r));
        out.push('\n');
    }
    out
}

fn read_map(c: &mut Cursor<'_>) -> Result<BTreeMap<u32, Q>> {
    c.expect("{")?;
    let mut m = BTreeMap::new();
    c.skip_ws();
    if c.eat("}") {
        return Ok(m);
    }
    loop {
        c.skip_ws();
        let k = c.natural()?;
        let k = u32::try_from(k).map_err(|_| c.err("index below 2^32"))?;
        c.expect(":")?;
        let v = c.rational()?;
        if m.insert(k, v).is_some() {
            return Err(c.err("distinct index"));
        }
        c.skip_ws();
        if c.eat("}") {
            return Ok(m);
        }
        c.expect(",")?;
    }
}

pub fn parse_root(src: &str) -> Result<RootVector> {
    let mut c = Cursor::new(src);
    c.skip_ws();
    c.expect("eps:")?;
    let eps = read_map(&mut c)?;
    c.skip_ws();
    let nulls = if c.eat("nulls:") {
        read_map(&mut c)?
    } else {
        BTreeMap::new()
    };
    c.finish()?;
    Ok(RootVector::new(eps, nulls))
}

pub fn parse_root_lines(src: &str) -> Result<RootLines> {
    let mut out = RootLines::default();
    let mut offset = 0;
    for line in src.lines() {
        let t = line.trim();
        if let Some(h) = t.strip_prefix('#') {
            for field in h.split_whitespace() {
                if let Some((k, v)) = field.split_once('=') {
                    out.header.push((k.to_string(), v.to_string()));
                }
            }
        } else if !t.is_empty() {
            let r = parse_root(t).map_err(|e| match e {
                Error::Parse {
                    pos,
                    expected,
                    found,
                } => Error::Parse {
                    pos: offset + pos + (line.len() - line.trim_start().len()),
                    expected,
                    found,
                },
                other => other,
            })?;
            out.roots.push(r);
        }
        offset += line.len() + 1;
    }
    Ok(out)
}
