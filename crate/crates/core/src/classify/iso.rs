use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use num_traits::Signed;

use super::{quotient_sl, similar, SimilarityWitness};
use crate::error::{Error, Result};
use crate::lears::{decompose, Decomposition, LearsWindow};
use crate::linalg::SpanCoords;
use crate::rational::Q;
use crate::rootsys::{
    cartan_int, length_partition, Family, LengthClass, RootSystemDesc, RootVector,
};

/// A linear map `V₁ → V₂` given on a base: `π_i ↦ images[i]` and `δ ↦ scale·δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoMap {
    pub domain_base: Vec<RootVector>,
    pub images: Vec<RootVector>,
    pub witness: SimilarityWitness,
}

impl IsoMap {
    pub fn apply(&self, r: &RootVector) -> Result<RootVector> {
        let n = self
            .domain_base
            .iter()
            .map(|b| b.eps_dim())
            .chain([r.eps_dim()])
            .max()
            .unwrap_or(0);
        let basis: Vec<Vec<Q>> = self.domain_base.iter().map(|b| b.dense_eps(n)).collect();
        let coords = SpanCoords::new(&basis)
            .and_then(|sc| sc.coords(&r.dense_eps(n)))
            .ok_or_else(|| Error::Dimension(format!("{r} is outside the domain of the map")))?;
        let mut out = RootVector::zero();
        for (c, img) in coords.iter().zip(&self.images) {
            out = out.axpy(*c, img);
        }
        for (j, x) in r.nulls() {
            out = out.shifted(*j, *x * self.witness.scale);
        }
        Ok(out)
    }
}

impl std::fmt::Display for IsoMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "δ ↦ {}δ", crate::rational::fmt_q(&self.witness.scale))?;
        for (b, i) in self.domain_base.iter().zip(&self.images) {
            write!(f, "; {b} ↦ {i}")?;
        }
        write!(f, " ({})", self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic(IsoMap),
    NotIsomorphic(String),
    Undecided(String),
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

fn same_type(a: &RootSystemDesc, b: &RootSystemDesc) -> bool {
    let small = |d: &RootSystemDesc| match (d.family, d.index_size) {
        (Family::B, 2) | (Family::C, 2) => Some(0),
        (Family::A, 2) | (Family::B, 1) => Some(1),
        _ => None,
    };
    a == b || small(a).is_some_and(|x| small(b) == Some(x))
}

/// Bijections of the bases that preserve Cartan integers and length
/// classes, in lexicographic order.
fn base_matchings(
    b1: &[RootVector],
    c1: &[LengthClass],
    b2: &[RootVector],
    c2: &[LengthClass],
) -> Result<Vec<Vec<usize>>> {
    let n = b1.len();
    let cart = |b: &[RootVector]| -> Result<Vec<Vec<Q>>> {
        b.iter()
            .map(|x| b.iter().map(|y| cartan_int(x, y)).collect())
            .collect()
    };
    let (m1, m2) = (cart(b1)?, cart(b2)?);
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        i: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        ctx: (&[Vec<Q>], &[Vec<Q>], &[LengthClass], &[LengthClass]),
        out: &mut Vec<Vec<usize>>,
    ) {
        let (m1, m2, c1, c2) = ctx;
        if i == m1.len() {
            out.push(perm.clone());
            return;
        }
        for j in 0..m1.len() {
            if used[j] || c1[i] != c2[j] {
                continue;
            }
            let fits = (0..i).all(|k| m1[i][k] == m2[j][perm[k]] && m1[k][i] == m2[perm[k]][j])
                && m1[i][i] == m2[j][j];
            if fits {
                used[j] = true;
                perm.push(j);
                go(i + 1, perm, used, ctx, out);
                perm.pop();
                used[j] = false;
            }
        }
    }
    go(0, &mut perm, &mut used, (&m1, &m2, c1, c2), &mut out);
    Ok(out)
}

fn classes_of(base: &[RootVector], all: &[RootVector]) -> Result<Vec<LengthClass>> {
    let cls = length_partition(all)?;
    Ok(base
        .iter()
        .map(|b| {
            all.iter()
                .position(|a| a == b)
                .map(|i| cls[i])
                .unwrap_or(LengthClass::Short)
        })
        .collect())
}

fn eps_set(w: &LearsWindow) -> BTreeSet<RootVector> {
    w.roots.iter().map(RootVector::eps_part).collect()
}

/// Every root of `w1` whose image lies inside the window of `w2` has its
/// image in `w2`.
fn sound(map: &IsoMap, w1: &LearsWindow, w2: &LearsWindow) -> Result<bool> {
    let target: BTreeSet<&RootVector> = w2.roots.iter().collect();
    for r in &w1.roots {
        let img = map.apply(r)?;
        let inside = w2
            .bounds
            .iter()
            .enumerate()
            .all(|(j, b)| img.null_coord(j as u32 + 1).abs() <= *b);
        if inside && !target.contains(&img) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn build_map(
    d1: &Decomposition,
    d2: &Decomposition,
    perm: &[usize],
    w: &SimilarityWitness,
    c: &[LengthClass],
) -> IsoMap {
    let zero = Q::from_integer(0);
    let domain_base: Vec<RootVector> = d1.lift.iter().map(RootVector::eps_part).collect();
    let images = d1
        .lift
        .iter()
        .zip(perm)
        .zip(c)
        .map(|((p1, &j), cls)| {
            let p2 = &d2.lift[j];
            let extra = match cls {
                LengthClass::Long => w.shift_l.unwrap_or(zero),
                _ => w.shift_s,
            };
            let u = p2.null_coord(1) - w.scale * p1.null_coord(1) + extra;
            p2.eps_part().shifted(1, u)
        })
        .collect();
    IsoMap {
        domain_base,
        images,
        witness: w.clone(),
    }
}

/// Decides whether two null-dimension-one windows come from isomorphic LEARS.
/// `NotIsomorphic` is returned only when an invariant differs or the
/// recovered triples are not similar; anything the windows cannot settle is
/// `Undecided`.
pub fn isomorphic(w1: &LearsWindow, w2: &LearsWindow) -> Result<IsoVerdict> {
    let dec = |w: &LearsWindow| match decompose(w, None) {
        Ok(d) => Ok(Ok(d)),
        Err(Error::Decompose(msg)) if msg.starts_with("window too small") => Ok(Err(msg)),
        Err(e) => Err(e),
    };
    let (d1, d2) = match (dec(w1)?, dec(w2)?) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(m), _) | (_, Err(m)) => return Ok(IsoVerdict::Undecided(m)),
    };
    if !same_type(&d1.desc, &d2.desc) {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "finite types {} and {} differ",
            d1.desc, d2.desc
        )));
    }
    if d1.reduced != d2.reduced {
        return Ok(IsoVerdict::NotIsomorphic(
            "one window is reduced and the other is not".into(),
        ));
    }
    let (Some(g1), Some(t1), Some(g2), Some(t2)) = (&d1.group, &d1.triple, &d2.group, &d2.triple)
    else {
        return Ok(IsoVerdict::Undecided(
            "triples are only recovered for null dimension one".into(),
        ));
    };
    let (i1, i2) = (quotient_sl(t1), quotient_sl(t2));
    if i1 != i2 {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "<S>/<L> has order {} and {}",
            i1, i2
        )));
    }
    let w = match similar((g1, t1), (g2, t2)) {
        Ok(Some(w)) => w,
        Ok(None) => {
            return Ok(IsoVerdict::NotIsomorphic(format!(
                "{t1} over {g1} and {t2} over {g2} are not similar"
            )));
        }
        Err(Error::SearchUndefined(m)) => return Ok(IsoVerdict::Undecided(m)),
        Err(e) => return Err(e),
    };
    let e1: Vec<RootVector> = eps_set(w1).into_iter().collect();
    let e2: Vec<RootVector> = eps_set(w2).into_iter().collect();
    let b1: Vec<RootVector> = d1.lift.iter().map(RootVector::eps_part).collect();
    let b2: Vec<RootVector> = d2.lift.iter().map(RootVector::eps_part).collect();
    let (c1, c2) = (classes_of(&b1, &e1)?, classes_of(&b2, &e2)?);
    let target: BTreeSet<&RootVector> = e2.iter().collect();
    for perm in base_matchings(&b1, &c1, &b2, &c2)? {
        let map = build_map(&d1, &d2, &perm, &w, &c1);
        let zeta_ok = e1.len() == e2.len()
            && e1
                .iter()
                .map(|a| map.apply(a).map(|x| x.eps_part()))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|x| target.contains(x));
        if zeta_ok && sound(&map, w1, w2)? {
            return Ok(IsoVerdict::Isomorphic(map));
        }
    }
    Ok(IsoVerdict::Undecided(
        "no base matching survives the window check".into(),
    ))
}
