use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::spec_text::parse_spec_line;
use super::{check_shape, validate_triple, LearsSpec, Triple};
use crate::error::{Error, Result};
use crate::qgroup::QSubgroup;
use crate::rational::{fmt_q, Q};
use crate::rootsys::{
    generate, length_partition, parse_root_lines, write_root_lines, RootSystemDesc, RootVector,
};

/// One null coordinate of a product construction.
pub type ProductFactor = (QSubgroup, Triple);

/// A finite piece `⊔_α (α + (S_α ∩ window))` of a LEARS, or an arbitrary
/// root set read from a file. `factors` holds one `(G_j, triple_j)` per
/// null coordinate when the generating data is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearsWindow {
    pub desc: Option<RootSystemDesc>,
    pub factors: Vec<ProductFactor>,
    pub bounds: Vec<Q>,
    pub roots: Vec<RootVector>,
}

impl LearsWindow {
    /// A bare root set; bounds default to the largest null coordinates present.
    pub fn from_roots(roots: Vec<RootVector>, bounds: Option<Vec<Q>>) -> Self {
        let m = roots.iter().map(|r| r.null_dim()).max().unwrap_or(0);
        let bounds = bounds.unwrap_or_else(|| {
            (1..=m)
                .map(|j| {
                    roots
                        .iter()
                        .map(|r| r.null_coord(j).abs())
                        .max()
                        .unwrap_or_else(|| Q::from_integer(0))
                })
                .collect()
        });
        Self {
            desc: None,
            factors: Vec::new(),
            bounds,
            roots,
        }
    }

    pub fn spec(&self) -> Option<LearsSpec> {
        match (&self.desc, self.factors.as_slice()) {
            (Some(d), [(g, t)]) => LearsSpec::new(*d, g.clone(), t.clone()).ok(),
            _ => None,
        }
    }

    pub fn null_dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bound(&self) -> Q {
        self.bounds
            .first()
            .copied()
            .unwrap_or_else(|| Q::from_integer(0))
    }

    pub fn group_hint(&self) -> Option<&QSubgroup> {
        match self.factors.as_slice() {
            [(g, _)] => Some(g),
            _ => None,
        }
    }

    fn header(&self) -> Vec<(String, String)> {
        let mut h = vec![("lears".to_string(), "window".to_string())];
        if let Some(d) = &self.desc {
            h.push(("type".into(), d.to_string()));
        }
        if !self.factors.is_empty() {
            let join = |f: &dyn Fn(&ProductFactor) -> Option<String>| -> Option<String> {
                let parts: Option<Vec<String>> = self.factors.iter().map(f).collect();
                parts.map(|p| p.join(";"))
            };
            h.push(("group".into(), join(&|(g, _)| Some(g.to_string())).unwrap()));
            h.push(("S".into(), join(&|(_, t)| Some(t.s.to_string())).unwrap()));
            if let Some(l) = join(&|(_, t)| t.l.as_ref().map(|x| x.to_string())) {
                h.push(("L".into(), l));
            }
            if let Some(e) = join(&|(_, t)| t.e.as_ref().map(|x| x.to_string())) {
                h.push(("E".into(), e));
            }
        }
        let w: Vec<String> = self.bounds.iter().map(fmt_q).collect();
        h.push(("window".into(), w.join(";")));
        h.push(("count".into(), self.roots.len().to_string()));
        h
    }

    pub fn to_text(&self) -> String {
        write_root_lines(&self.header(), &self.roots)
    }

    pub fn from_text(src: &str) -> Result<Self> {
        let lines = parse_root_lines(src)?;
        let value = |k: &str| lines.header_value(k).map(str::to_string);
        let (ty, window) = (value("type"), value("window"));
        if ty.is_some() && value("group").is_some() {
            let fields: Vec<String> = lines
                .header
                .iter()
                .filter(|(k, _)| ["type", "group", "S", "L", "E", "window"].contains(&k.as_str()))
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let sl = parse_spec_line(&fields.join(" "))?;
            let mut w = Self::from_roots(lines.roots, None);
            if !sl.windows.is_empty() {
                w.bounds = sl.windows.clone();
            }
            w.desc = Some(sl.desc);
            w.factors = sl.factors;
            return Ok(w);
        }
        let bounds = match window {
            Some(v) if !v.is_empty() => Some(
                v.split(';')
                    .map(crate::rational::parse_q)
                    .collect::<Result<Vec<Q>>>()?,
            ),
            _ => None,
        };
        let mut w = Self::from_roots(lines.roots, bounds);
        if let Some(t) = ty {
            w.desc = Some(t.parse()?);
        }
        Ok(w)
    }
}

fn require_valid(desc: &RootSystemDesc, g: &QSubgroup, t: &Triple) -> Result<()> {
    check_shape(desc, g, t)?;
    let rep = validate_triple(desc, g, t);
    if !rep.passed() {
        let failed: Vec<String> = rep
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.axiom.clone())
            .collect();
        return Err(Error::InvalidTriple(failed.join(", ")));
    }
    Ok(())
}

fn windowed(g: &QSubgroup, t: &Triple, bound: &Q) -> Result<[Vec<Q>; 3]> {
    let elems = g.enumerate_window(bound)?;
    let pick = |x: Option<&crate::qgroup::ReflectionSpace>| -> Vec<Q> {
        x.map(|sp| elems.iter().filter(|e| sp.contains(e)).copied().collect())
            .unwrap_or_default()
    };
    Ok([pick(Some(&t.s)), pick(t.l.as_ref()), pick(t.e.as_ref())])
}

fn class_index(c: crate::rootsys::LengthClass) -> usize {
    match c {
        crate::rootsys::LengthClass::Short => 0,
        crate::rootsys::LengthClass::Long => 1,
        crate::rootsys::LengthClass::ExtraLong => 2,
    }
}

/// The window of `R(S,L,E)_Δ` with shifts `|s| ≤ bound`, null dimension one.
pub fn construct(spec: &LearsSpec, bound: &Q) -> Result<LearsWindow> {
    construct_product(
        &spec.desc,
        &[(spec.group.clone(), spec.triple.clone())],
        &[*bound],
    )
}

/// Product construction: the shift set of `α` is `∏_j S_α^{(j)}` with one
/// valid triple per null coordinate.
pub fn construct_product(
    desc: &RootSystemDesc,
    factors: &[ProductFactor],
    bounds: &[Q],
) -> Result<LearsWindow> {
    if factors.is_empty() || factors.len() != bounds.len() {
        return Err(Error::Dimension(format!(
            "{} factors and {} bounds",
            factors.len(),
            bounds.len()
        )));
    }
    if let Some(b) = bounds.iter().find(|b| **b <= Q::from_integer(0)) {
        return Err(Error::InvalidArgument(format!(
            "window bound {} must be positive",
            fmt_q(b)
        )));
    }
    let mut per_factor = Vec::with_capacity(factors.len());
    for ((g, t), b) in factors.iter().zip(bounds) {
        require_valid(desc, g, t)?;
        per_factor.push(windowed(g, t, b)?);
    }
    let delta = generate(desc);
    let classes = length_partition(&delta)?;
    let mut roots = Vec::new();
    for (alpha, c) in delta.iter().zip(classes) {
        let ci = class_index(c);
        let mut partial: Vec<BTreeMap<u32, Q>> = vec![BTreeMap::new()];
        for (j, sets) in per_factor.iter().enumerate() {
            let mut next = Vec::with_capacity(partial.len() * sets[ci].len());
            for p in &partial {
                for x in &sets[ci] {
                    let mut q = p.clone();
                    q.insert(j as u32 + 1, *x);
                    next.push(q);
                }
            }
            partial = next;
        }
        roots.extend(partial.into_iter().map(|n| alpha.with_nulls(n)));
    }
    Ok(LearsWindow {
        desc: Some(*desc),
        factors: factors.to_vec(),
        bounds: bounds.to_vec(),
        roots,
    })
}
