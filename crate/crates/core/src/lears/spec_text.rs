//! `type=BC2 group=Z S=G L=2G+{0} E=2G+{1} window=4`
//!
//! Several null coordinates are written as `;`-separated lists in `group`,
//! `S`, `L`, `E` and `window`, one entry per coordinate.

use super::{check_shape, LearsSpec, Triple};
use crate::error::{Error, Result};
use crate::qgroup::{parse_group, parse_reflection_text, QSubgroup};
use crate::rational::{parse_q, Q};
use crate::rootsys::RootSystemDesc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecLine {
    pub desc: RootSystemDesc,
    pub factors: Vec<(QSubgroup, Triple)>,
    pub windows: Vec<Q>,
    pub reduced_claim: Option<bool>,
}

impl SpecLine {
    pub fn null_dim(&self) -> usize {
        self.factors.len()
    }

    /// The null-dimension-one spec, if that is what the line describes.
    pub fn single(&self) -> Result<LearsSpec> {
        if self.factors.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "expected one null coordinate, got {}",
                self.factors.len()
            )));
        }
        let (g, t) = self.factors[0].clone();
        let spec = LearsSpec::new(self.desc, g, t)?;
        Ok(match self.reduced_claim {
            Some(c) => spec.with_claim(c),
            None => spec,
        })
    }

    pub fn window(&self) -> Option<Q> {
        self.windows.first().copied()
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse {
            pos,
            expected,
            found,
        } => Error::Parse {
            pos: pos + by,
            expected,
            found,
        },
        other => other,
    }
}

fn split_list(v: &str, at: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut off = at;
    for part in v.split(';') {
        out.push((off, part));
        off += part.len() + 1;
    }
    out
}

pub fn parse_spec_line(src: &str) -> Result<SpecLine> {
    let mut fields: Vec<(usize, &str, usize, &str)> = Vec::new();
    let mut idx = 0;
    for tok in src.split_whitespace() {
        let start = src[idx..].find(tok).map(|p| p + idx).unwrap_or(idx);
        idx = start + tok.len();
        let Some((k, v)) = tok.split_once('=') else {
            return Err(Error::Parse {
                pos: start,
                expected: "key=value".into(),
                found: tok.chars().take(12).collect(),
            });
        };
        fields.push((start, k, start + k.len() + 1, v));
    }
    let get = |key: &str| fields.iter().find(|f| f.1 == key);
    for f in &fields {
        if !["type", "group", "S", "L", "E", "window", "reduced"].contains(&f.1) {
            return Err(Error::Parse {
                pos: f.0,
                expected: "one of type, group, S, L, E, window, reduced".into(),
                found: f.1.into(),
            });
        }
    }
    let missing = |key: &str| Error::Parse {
        pos: src.len(),
        expected: format!("`{key}=` field"),
        found: "end of input".into(),
    };
    let ty = get("type").ok_or_else(|| missing("type"))?;
    let desc: RootSystemDesc = ty.3.parse().map_err(|e| shift(e, ty.2))?;
    let gf = get("group").ok_or_else(|| missing("group"))?;
    let groups: Vec<QSubgroup> = split_list(gf.3, gf.2)
        .into_iter()
        .map(|(o, s)| parse_group(s).map_err(|e| shift(e, o)))
        .collect::<Result<_>>()?;
    let m = groups.len();
    let spaces = |key: &str| -> Result<Option<Vec<crate::qgroup::ReflectionText>>> {
        let Some(f) = get(key) else { return Ok(None) };
        let parts = split_list(f.3, f.2);
        if parts.len() != m {
            return Err(Error::Parse {
                pos: f.2,
                expected: format!("{m} `;`-separated entries"),
                found: f.3.chars().take(12).collect(),
            });
        }
        parts
            .into_iter()
            .map(|(o, s)| parse_reflection_text(s).map_err(|e| shift(e, o)))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    };
    let s_txt = spaces("S")?.ok_or_else(|| missing("S"))?;
    let l_txt = spaces("L")?;
    let e_txt = spaces("E")?;
    let mut factors = Vec::with_capacity(m);
    for (i, g) in groups.iter().enumerate() {
        let s = s_txt[i].resolve(g)?;
        let l = l_txt.as_ref().map(|v| v[i].resolve(g)).transpose()?;
        let e = e_txt.as_ref().map(|v| v[i].resolve(g)).transpose()?;
        let t = Triple::new(s, l, e);
        check_shape(&desc, g, &t)?;
        factors.push((g.clone(), t));
    }
    let windows = match get("window") {
        None => Vec::new(),
        Some(f) => {
            let parts = split_list(f.3, f.2);
            if parts.len() != m {
                return Err(Error::Parse {
                    pos: f.2,
                    expected: format!("{m} `;`-separated window bounds"),
                    found: f.3.chars().take(12).collect(),
                });
            }
            let mut ws = Vec::new();
            for (o, s) in parts {
                let w = parse_q(s).map_err(|e| shift(e, o))?;
                if w <= Q::from_integer(0) {
                    return Err(Error::Parse {
                        pos: o,
                        expected: "positive window bound".into(),
                        found: s.into(),
                    });
                }
                ws.push(w);
            }
            ws
        }
    };
    let reduced_claim = match get("reduced") {
        None => None,
        Some(f) => Some(match f.3 {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Parse {
                    pos: f.2,
                    expected: "true or false".into(),
                    found: other.into(),
                })
            }
        }),
    };
    Ok(SpecLine {
        desc,
        factors,
        windows,
        reduced_claim,
    })
}
