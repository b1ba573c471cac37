//! Similarity of triples, isomorphism of windows, invariants and the
//! null-dimension-one catalogs.

mod catalog;
mod iso;

pub use catalog::{enumerate_nulldim1, lars_catalog, random_valid_spec, CatalogEntry};
pub use iso::{isomorphic, IsoMap, IsoVerdict};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lears::{LearsSpec, Triple};
use crate::qgroup::{QSubgroup, ReflectionSpace};
use crate::rational::{fmt_q, Q};
use crate::rootsys::RootSystemDesc;

/// `φ = scale·id` with `φ(S₁) = S₂ − s₂`, `φ(L₁) = L₂ − l₂`, `φ(E₁) = E₂ − 2s₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityWitness {
    pub scale: Q,
    pub shift_s: Q,
    pub shift_l: Option<Q>,
}

impl std::fmt::Display for SimilarityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "scale={} s={}", fmt_q(&self.scale), fmt_q(&self.shift_s))?;
        if let Some(l) = &self.shift_l {
            write!(f, " l={}", fmt_q(l))?;
        }
        Ok(())
    }
}

/// `(kind, factor)` with the family equal to `factor · kind`.
fn family_frame(g: &QSubgroup) -> (QSubgroup, Q) {
    match g.family() {
        QSubgroup::Cyclic(x) => (QSubgroup::integers(), *x),
        QSubgroup::Scaled(b, n) => (b.as_ref().clone(), Q::from_integer(*n as i128)),
        other => (other.clone(), Q::from_integer(1)),
    }
}

fn searchable(g: &QSubgroup) -> Result<()> {
    if g.is_cyclic_family() || matches!(g, QSubgroup::Truncated(..)) {
        Ok(())
    } else {
        Err(Error::SearchUndefined(format!(
            "similarity search over {g} needs a cyclic or truncated group"
        )))
    }
}

/// The positive scale carrying the family of `g1` onto that of `g2`, if the
/// two families are scalar multiples of each other.
pub(crate) fn family_scale(g1: &QSubgroup, g2: &QSubgroup) -> Option<Q> {
    let (k1, f1) = family_frame(g1);
    let (k2, f2) = family_frame(g2);
    (k1 == k2).then(|| f2 / f1)
}

/// `c·X` as a space over `target`, assuming `c·G = target` on families.
pub(crate) fn map_space(x: &ReflectionSpace, c: &Q, target: &QSubgroup) -> Result<ReflectionSpace> {
    let k = x.period();
    let classes = x
        .representatives()
        .iter()
        .map(|r| {
            target.residue(&(*r * *c), k).ok_or_else(|| {
                Error::InvalidArgument(format!("{} leaves {target}", fmt_q(&(*r * *c))))
            })
        })
        .collect::<Result<_>>()?;
    ReflectionSpace::from_residue_classes(target.clone(), k, classes)
}

fn map_triple(t: &Triple, c: &Q, target: &QSubgroup) -> Result<Triple> {
    Ok(Triple::new(
        map_space(&t.s, c, target)?,
        t.l.as_ref().map(|x| map_space(x, c, target)).transpose()?,
        t.e.as_ref().map(|x| map_space(x, c, target)).transpose()?,
    ))
}

fn shift_candidates(sp: &ReflectionSpace, period: u64) -> Vec<Q> {
    let g = sp.group();
    let u = g.unit();
    (0..g.coset_modulus(period))
        .map(|j| u * Q::from_integer(j as i128))
        .filter(|x| sp.contains(x))
        .collect()
}

/// Whether `w` witnesses `(G₁,t₁) ∼ (G₂,t₂)`, decided on residues.
pub fn check_witness(
    t1: (&QSubgroup, &Triple),
    t2: (&QSubgroup, &Triple),
    w: &SimilarityWitness,
) -> bool {
    let (g1, a) = t1;
    let (g2, b) = t2;
    let same_scale = family_scale(g1, g2).is_some_and(|c| unit_ratio(g1, &(w.scale / c)));
    if !same_scale || !b.s.contains(&w.shift_s) {
        return false;
    }
    if let (Some(l), Some(lb)) = (&w.shift_l, &b.l) {
        if !lb.contains(l) {
            return false;
        }
    }
    let zero = Q::from_integer(0);
    let Ok(mapped) = map_triple(a, &w.scale, g2) else {
        return false;
    };
    let Ok(target) = b.shifted(&w.shift_s, w.shift_l.as_ref().unwrap_or(&zero)) else {
        return false;
    };
    mapped.same_sets(&target)
}

/// `r` maps the family of `g` onto itself.
fn unit_ratio(g: &QSubgroup, r: &Q) -> bool {
    let (k, _) = family_frame(g);
    k.in_family(r) && k.in_family(&(Q::from_integer(1) / r))
}

/// First witness in the order (scale, residue of `s₂`, residue of `l₂`).
/// Only the positive scale between the families is tried: reflection spaces
/// are symmetric, and units of a rank-one group act on `G/kG` (`k | 12`) as `±1`.
pub fn similar(
    t1: (&QSubgroup, &Triple),
    t2: (&QSubgroup, &Triple),
) -> Result<Option<SimilarityWitness>> {
    let (g1, a) = t1;
    let (g2, b) = t2;
    searchable(g1)?;
    searchable(g2)?;
    if a.l.is_some() != b.l.is_some() || a.e.is_some() != b.e.is_some() {
        return Ok(None);
    }
    let Some(c) = family_scale(g1, g2) else {
        return Ok(None);
    };
    let mapped = map_triple(a, &c, g2)?;
    let k = [&mapped, b]
        .iter()
        .flat_map(|t| [Some(&t.s), t.l.as_ref(), t.e.as_ref()])
        .flatten()
        .fold(1, |acc, x| num_integer::lcm(acc, x.period()));
    let ss = shift_candidates(&b.s, k);
    let ls: Vec<Option<Q>> = match &b.l {
        Some(l) => shift_candidates(l, k).into_iter().map(Some).collect(),
        None => vec![None],
    };
    let zero = Q::from_integer(0);
    for s in &ss {
        for l in &ls {
            let target = b.shifted(s, l.as_ref().unwrap_or(&zero))?;
            if mapped.same_sets(&target) {
                return Ok(Some(SimilarityWitness {
                    scale: c,
                    shift_s: *s,
                    shift_l: *l,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LearsInvariants {
    pub delta_type: RootSystemDesc,
    /// `|⟨S⟩/⟨L⟩|`; 1 (trivial) without long roots.
    pub quotient_sl: u64,
    pub reduced: bool,
    pub shift_group_tag: String,
}

impl std::fmt::Display for LearsInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let q = if self.quotient_sl == 1 {
            "trivial".to_string()
        } else {
            format!("Z{}", self.quotient_sl)
        };
        write!(
            f,
            "type={} <S>/<L>={} reduced={} group={}",
            self.delta_type, q, self.reduced, self.shift_group_tag
        )
    }
}

pub(crate) fn quotient_sl(t: &Triple) -> u64 {
    t.l.as_ref()
        .map_or(1, |l| l.index_of_span() / t.s.index_of_span().max(1))
}

pub fn invariants(spec: &LearsSpec) -> LearsInvariants {
    let t = &spec.triple;
    let quotient_sl = quotient_sl(t);
    LearsInvariants {
        delta_type: spec.desc,
        quotient_sl,
        reduced: t.is_reduced(),
        shift_group_tag: spec.group.kind_tag().to_string(),
    }
}
