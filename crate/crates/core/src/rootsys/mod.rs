//! Finite irreducible root systems in ε-coordinates, roots carrying an
//! optional null part, reflections, length classes and type recognition.

mod axioms;
mod base;
mod lines;

pub use axioms::verify_finite_axioms;
pub(crate) use axioms::UnionFind;
pub use base::{reflectable_base, standard_simple_roots, ReflectableBase};
pub use lines::{format_root, parse_root, parse_root_lines, write_root_lines, RootLines};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{fmt_q, Q};

/// A vector `Σ a_i ε_i + Σ b_j δ_j`. The form pairs ε-coordinates
/// orthonormally and kills every δ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct RootVector {
    eps: BTreeMap<u32, Q>,
    nulls: BTreeMap<u32, Q>,
}

fn clean(m: BTreeMap<u32, Q>) -> BTreeMap<u32, Q> {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn combine(a: &BTreeMap<u32, Q>, b: &BTreeMap<u32, Q>, s: Q) -> BTreeMap<u32, Q> {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(Q::zero);
        *e += s * v;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

impl RootVector {
    pub fn new(eps: BTreeMap<u32, Q>, nulls: BTreeMap<u32, Q>) -> Self {
        Self {
            eps: clean(eps),
            nulls: clean(nulls),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_eps(coords: &[(u32, Q)]) -> Self {
        Self::new(coords.iter().cloned().collect(), BTreeMap::new())
    }

    /// From a dense ε-vector indexed from 1.
    pub fn from_dense(coords: &[Q]) -> Self {
        Self::new(
            coords
                .iter()
                .enumerate()
                .map(|(i, v)| (i as u32 + 1, *v))
                .collect(),
            BTreeMap::new(),
        )
    }

    pub fn eps(&self) -> &BTreeMap<u32, Q> {
        &self.eps
    }

    pub fn nulls(&self) -> &BTreeMap<u32, Q> {
        &self.nulls
    }

    pub fn eps_coord(&self, i: u32) -> Q {
        self.eps.get(&i).copied().unwrap_or_else(Q::zero)
    }

    pub fn null_coord(&self, j: u32) -> Q {
        self.nulls.get(&j).copied().unwrap_or_else(Q::zero)
    }

    /// `δ_j`-shifted copy: adds `x·δ_j`.
    pub fn shifted(&self, j: u32, x: Q) -> Self {
        let mut n = BTreeMap::new();
        n.insert(j, x);
        Self {
            eps: self.eps.clone(),
            nulls: combine(&self.nulls, &n, Q::one()),
        }
    }

    pub fn with_nulls(&self, nulls: BTreeMap<u32, Q>) -> Self {
        Self {
            eps: self.eps.clone(),
            nulls: clean(nulls),
        }
    }

    pub fn eps_part(&self) -> Self {
        Self {
            eps: self.eps.clone(),
            nulls: BTreeMap::new(),
        }
    }

    pub fn null_part(&self) -> Self {
        Self {
            eps: BTreeMap::new(),
            nulls: self.nulls.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.eps.is_empty() && self.nulls.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.axpy(Q::one(), o)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.axpy(-Q::one(), o)
    }

    /// `self + s·o`.
    pub fn axpy(&self, s: Q, o: &Self) -> Self {
        Self {
            eps: combine(&self.eps, &o.eps, s),
            nulls: combine(&self.nulls, &o.nulls, s),
        }
    }

    pub fn scale(&self, s: Q) -> Self {
        Self::zero().axpy(s, self)
    }

    pub fn neg(&self) -> Self {
        self.scale(-Q::one())
    }

    pub fn form(&self, o: &Self) -> Q {
        let (small, large) = if self.eps.len() <= o.eps.len() {
            (&self.eps, &o.eps)
        } else {
            (&o.eps, &self.eps)
        };
        small
            .iter()
            .filter_map(|(k, v)| large.get(k).map(|w| v * w))
            .sum()
    }

    pub fn norm2(&self) -> Q {
        self.form(self)
    }

    pub fn is_isotropic(&self) -> bool {
        self.eps.is_empty()
    }

    /// Largest ε index used, or 0.
    pub fn eps_dim(&self) -> u32 {
        self.eps.keys().next_back().copied().unwrap_or(0)
    }

    pub fn null_dim(&self) -> u32 {
        self.nulls.keys().next_back().copied().unwrap_or(0)
    }

    pub fn dense_eps(&self, dim: u32) -> Vec<Q> {
        (1..=dim).map(|i| self.eps_coord(i)).collect()
    }

    pub fn dense_nulls(&self, dim: u32) -> Vec<Q> {
        (1..=dim).map(|j| self.null_coord(j)).collect()
    }

    /// Dense `[ε_1..ε_n, δ_1..δ_m]`.
    pub fn dense(&self, n: u32, m: u32) -> Vec<Q> {
        let mut v = self.dense_eps(n);
        v.extend(self.dense_nulls(m));
        v
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &Q, sym: &str, i: u32| -> fmt::Result {
            let neg = *c < Q::zero();
            let a = if neg { -*c } else { *c };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if a.is_one() {
                write!(f, "{sym}{i}")
            } else {
                write!(f, "{}{sym}{i}", fmt_q(&a))
            }
        };
        for (i, c) in &self.eps {
            term(f, c, "e", *i)?;
        }
        for (j, c) in &self.nulls {
            term(f, c, "d", *j)?;
        }
        Ok(())
    }
}

/// `2(α,β)/(β,β)`.
pub fn cartan_int(alpha: &RootVector, beta: &RootVector) -> Result<Q> {
    let b2 = beta.norm2();
    if b2.is_zero() {
        return Err(Error::Isotropic);
    }
    Ok(Q::from_integer(2) * alpha.form(beta) / b2)
}

/// The Cartan integer, required to be integral.
pub fn cartan_integer(alpha: &RootVector, beta: &RootVector) -> Result<i64> {
    let c = cartan_int(alpha, beta)?;
    if !c.is_integer() {
        return Err(Error::NonIntegral(format!(
            "<{alpha},{beta}> = {}",
            fmt_q(&c)
        )));
    }
    Ok(c.to_integer() as i64)
}

/// `σ_α(β) = β − ⟨β,α⟩α`.
pub fn reflect(alpha: &RootVector, beta: &RootVector) -> Result<RootVector> {
    let n = cartan_int(beta, alpha)?;
    Ok(beta.axpy(-n, alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::BC,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
    ];

    pub fn fixed_index(self) -> Option<u32> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        }
    }
}

/// Family plus index size. For `A` the index size is the number of
/// ε-indices, so `A3` has rank 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemDesc {
    pub family: Family,
    pub index_size: u32,
}

impl RootSystemDesc {
    pub fn new(family: Family, index_size: u32) -> Result<Self> {
        let ok = match family {
            Family::A => index_size >= 2,
            Family::B | Family::BC => index_size >= 1,
            Family::C => index_size >= 2,
            Family::D => index_size >= 4,
            f => f.fixed_index() == Some(index_size),
        };
        if !ok {
            return Err(Error::InvalidRootSystem(format!(
                "{}{} violates the rank constraint",
                family.name(),
                index_size
            )));
        }
        Ok(Self { family, index_size })
    }

    pub fn exceptional(family: Family) -> Self {
        Self {
            family,
            index_size: family.fixed_index().expect("exceptional family"),
        }
    }

    pub fn rank(&self) -> u32 {
        match self.family {
            Family::A => self.index_size - 1,
            _ => self.index_size,
        }
    }

    /// Number of ε-coordinates of the pinned realization.
    pub fn ambient_dim(&self) -> u32 {
        match self.family {
            Family::E6 | Family::E7 | Family::E8 => 8,
            Family::G2 => 3,
            _ => self.index_size,
        }
    }

    pub fn has_long(&self) -> bool {
        match self.family {
            Family::B | Family::BC => self.index_size >= 2,
            Family::C | Family::F4 | Family::G2 => true,
            _ => false,
        }
    }

    pub fn has_extra_long(&self) -> bool {
        self.family == Family::BC
    }

    /// Square-length ratio of long to short roots.
    pub fn long_ratio(&self) -> u64 {
        if self.family == Family::G2 {
            3
        } else {
            2
        }
    }

    pub fn is_reduced_type(&self) -> bool {
        !self.has_extra_long()
    }

    /// `S = G` is forced unless the type is `A₁`, `B_ℓ` or `BC_ℓ`.
    pub fn forces_s_whole(&self) -> bool {
        !matches!(
            (self.family, self.index_size),
            (Family::A, 2) | (Family::B, _) | (Family::BC, _)
        )
    }

    /// `L` must be a subgroup for `B_ℓ (ℓ≥3)`, `F4`, `G2`, `BC_ℓ (ℓ≥3)`.
    pub fn forces_l_subgroup(&self) -> bool {
        match self.family {
            Family::B | Family::BC => self.index_size >= 3,
            Family::F4 | Family::G2 => true,
            _ => false,
        }
    }

    pub fn expected_count(&self) -> usize {
        let l = self.index_size as usize;
        match self.family {
            Family::A => l * l - l,
            Family::B | Family::C => 2 * l * l,
            Family::D => 2 * l * (l - 1),
            Family::BC => 2 * l * l + 2 * l,
            Family::E6 => 72,
            Family::E7 => 126,
            Family::E8 => 240,
            Family::F4 => 48,
            Family::G2 => 12,
        }
    }
}

impl fmt::Display for RootSystemDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.fixed_index().is_some() {
            write!(f, "{}", self.family.name())
        } else {
            write!(f, "{}{}", self.family.name(), self.index_size)
        }
    }
}

impl FromStr for RootSystemDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |expected: &str| Error::Parse {
            pos: 0,
            expected: expected.into(),
            found: s.to_string(),
        };
        for fam in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
            if s == fam.name() {
                return Ok(Self::exceptional(fam));
            }
        }
        let (fam, rest) = if let Some(r) = s.strip_prefix("BC") {
            (Family::BC, r)
        } else {
            let mut it = s.chars();
            let fam = match it.next() {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                _ => {
                    return Err(bad(
                        "root system type (A, B, C, D, BC + index, or E6/E7/E8/F4/G2)",
                    ))
                }
            };
            (fam, it.as_str())
        };
        let n: u32 = rest
            .parse()
            .map_err(|_| bad("index size after family letter"))?;
        Self::new(fam, n)
    }
}

fn pm_pairs(l: u32, out: &mut Vec<RootVector>, with_plus: bool) {
    let one = Q::one();
    for i in 1..=l {
        for j in (i + 1)..=l {
            for (a, b) in [(one, -one), (-one, one)] {
                out.push(RootVector::from_eps(&[(i, a), (j, b)]));
            }
            if with_plus {
                for (a, b) in [(one, one), (-one, -one)] {
                    out.push(RootVector::from_eps(&[(i, a), (j, b)]));
                }
            }
        }
    }
}

fn e8_roots() -> Vec<RootVector> {
    let mut out = Vec::new();
    pm_pairs(8, &mut out, true);
    let h = Q::new(1, 2);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let v: Vec<Q> = (0..8)
                .map(|i| if mask >> i & 1 == 1 { -h } else { h })
                .collect();
            out.push(RootVector::from_dense(&v));
        }
    }
    out
}

/// The full root set of the pinned realization, sorted by dense coordinates.
pub fn generate(desc: &RootSystemDesc) -> Vec<RootVector> {
    let l = desc.index_size;
    let one = Q::one();
    let two = Q::from_integer(2);
    let mut out = Vec::new();
    match desc.family {
        Family::A => pm_pairs(l, &mut out, false),
        Family::D => pm_pairs(l, &mut out, true),
        Family::B | Family::C | Family::BC => {
            pm_pairs(l, &mut out, true);
            for i in 1..=l {
                if desc.family != Family::C {
                    out.push(RootVector::from_eps(&[(i, one)]));
                    out.push(RootVector::from_eps(&[(i, -one)]));
                }
                if desc.family != Family::B {
                    out.push(RootVector::from_eps(&[(i, two)]));
                    out.push(RootVector::from_eps(&[(i, -two)]));
                }
            }
        }
        Family::E8 => out = e8_roots(),
        Family::E7 | Family::E6 => {
            let mut normals = vec![RootVector::from_eps(&[(7, one), (8, one)])];
            if desc.family == Family::E6 {
                normals.push(RootVector::from_eps(&[(6, one), (8, one)]));
            }
            out = e8_roots()
                .into_iter()
                .filter(|r| normals.iter().all(|n| r.form(n).is_zero()))
                .collect();
        }
        Family::F4 => {
            pm_pairs(4, &mut out, true);
            for i in 1..=4 {
                out.push(RootVector::from_eps(&[(i, one)]));
                out.push(RootVector::from_eps(&[(i, -one)]));
            }
            let h = Q::new(1, 2);
            for mask in 0u32..16 {
                let v: Vec<Q> = (0..4)
                    .map(|i| if mask >> i & 1 == 1 { -h } else { h })
                    .collect();
                out.push(RootVector::from_dense(&v));
            }
        }
        Family::G2 => {
            for i in 1..=3u32 {
                for j in 1..=3u32 {
                    if i != j {
                        out.push(RootVector::from_eps(&[(i, one), (j, -one)]));
                        let k = 6 - i - j;
                        let long = RootVector::from_eps(&[(i, two), (j, -one), (k, -one)]);
                        out.push(long.neg());
                        out.push(long);
                    }
                }
            }
            out.sort();
            out.dedup();
        }
    }
    sort_roots(&mut out, desc.ambient_dim());
    out
}

/// Deterministic order: lexicographic on dense coordinates.
pub fn sort_roots(roots: &mut [RootVector], dim: u32) {
    let nd = roots.iter().map(|r| r.null_dim()).max().unwrap_or(0);
    roots.sort_by_cached_key(|r| r.dense(dim.max(r.eps_dim()), nd));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthClass {
    Short,
    Long,
    ExtraLong,
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthClass::Short => "short",
            LengthClass::Long => "long",
            LengthClass::ExtraLong => "extra_long",
        })
    }
}

/// Length class of each root, in input order. Extra-long roots are
/// doubles of short roots, long roots are the remaining non-minimal ones.
pub fn length_partition(system: &[RootVector]) -> Result<Vec<LengthClass>> {
    if system.is_empty() {
        return Ok(Vec::new());
    }
    let set: BTreeSet<&RootVector> = system.iter().collect();
    let lengths: BTreeSet<Q> = system.iter().map(|r| r.norm2()).collect();
    if lengths.len() > 3 {
        return Err(Error::InvalidRootSystem(format!(
            "{} distinct square lengths",
            lengths.len()
        )));
    }
    let short = *lengths.iter().next().unwrap();
    if short.is_zero() {
        return Err(Error::Isotropic);
    }
    let half = Q::new(1, 2);
    let mut classes = Vec::with_capacity(system.len());
    let mut long_len: Option<Q> = None;
    for r in system {
        let n = r.norm2();
        let c = if n == short {
            LengthClass::Short
        } else if n == short * Q::from_integer(4) && set.contains(&r.scale(half)) {
            LengthClass::ExtraLong
        } else {
            match long_len {
                None => long_len = Some(n),
                Some(l) if l != n => {
                    return Err(Error::InvalidRootSystem("mixed long lengths".into()));
                }
                _ => {}
            }
            LengthClass::Long
        };
        classes.push(c);
    }
    Ok(classes)
}

pub fn is_reduced(system: &[RootVector]) -> bool {
    let set: BTreeSet<&RootVector> = system.iter().collect();
    let two = Q::from_integer(2);
    !system.iter().any(|r| set.contains(&r.scale(two)))
}

/// `Δ^red`: drops every root whose half is a root.
pub fn reduced_part(system: &[RootVector]) -> Vec<RootVector> {
    let set: BTreeSet<&RootVector> = system.iter().collect();
    let half = Q::new(1, 2);
    system
        .iter()
        .filter(|r| !set.contains(&r.scale(half)))
        .cloned()
        .collect()
}

/// Rank of the ε-span.
pub fn eps_rank(system: &[RootVector]) -> usize {
    let dim = system.iter().map(|r| r.eps_dim()).max().unwrap_or(0);
    let rows: Vec<Vec<Q>> = system.iter().map(|r| r.dense_eps(dim)).collect();
    linalg::rank(&rows)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Fingerprint {
    rank: usize,
    count: usize,
    classes: [usize; 3],
    ratio: Option<Q>,
    cartan: Vec<i64>,
}

fn fingerprint(system: &[RootVector]) -> Result<Fingerprint> {
    let classes = length_partition(system)?;
    let mut counts = [0usize; 3];
    let mut short = None;
    let mut long = None;
    for (r, c) in system.iter().zip(&classes) {
        match c {
            LengthClass::Short => {
                counts[0] += 1;
                short = Some(r.norm2());
            }
            LengthClass::Long => {
                counts[1] += 1;
                long = Some(r.norm2());
            }
            LengthClass::ExtraLong => counts[2] += 1,
        }
    }
    let ratio = match (short, long) {
        (Some(s), Some(l)) => Some(l / s),
        _ => None,
    };
    let red = reduced_part(system);
    let simple = base::generic_simple_roots(&red)?;
    let mut cartan = Vec::new();
    for a in &simple {
        for b in &simple {
            cartan.push(cartan_integer(a, b)?);
        }
    }
    cartan.sort();
    Ok(Fingerprint {
        rank: eps_rank(system),
        count: system.len(),
        classes: counts,
        ratio,
        cartan,
    })
}

fn candidates(rank: u32) -> Vec<RootSystemDesc> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        let idx = match fam {
            Family::A => rank + 1,
            f => f.fixed_index().unwrap_or(rank),
        };
        if let Ok(d) = RootSystemDesc::new(fam, idx) {
            if d.rank() == rank {
                out.push(d);
            }
        }
    }
    out
}

/// Identifies the type of an irreducible finite system. Isomorphic
/// coincidences (`A₁ ≅ B₁`, `B₂ ≅ C₂`) resolve to the candidate whose pinned
/// coordinates match exactly, else to the first candidate in family order.
pub fn recognize(system: &[RootVector]) -> Result<RootSystemDesc> {
    if system.is_empty() {
        return Err(Error::InvalidRootSystem("empty system".into()));
    }
    let fp = fingerprint(system)?;
    let set: BTreeSet<&RootVector> = system.iter().collect();
    let mut matches = Vec::new();
    for d in candidates(fp.rank as u32) {
        if d.expected_count() != fp.count {
            continue;
        }
        let gen = generate(&d);
        if fingerprint(&gen)? == fp {
            let exact = gen.len() == set.len() && gen.iter().all(|r| set.contains(r));
            matches.push((!exact, d));
        }
    }
    matches.sort();
    matches
        .first()
        .map(|(_, d)| *d)
        .ok_or_else(|| Error::InvalidRootSystem("no matching finite type".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn d(s: &str) -> RootSystemDesc {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_closed_forms() {
        for l in 1..=5u32 {
            let want = [(Family::B, 2 * l * l), (Family::BC, 2 * l * l + 2 * l)];
            for (f, n) in want {
                let desc = RootSystemDesc::new(f, l).unwrap();
                assert_eq!(generate(&desc).len(), n as usize);
            }
        }
        assert_eq!(generate(&d("A3")).len(), 6);
        assert_eq!(generate(&d("D4")).len(), 24);
        assert_eq!(generate(&d("E6")).len(), 72);
        assert_eq!(generate(&d("E7")).len(), 126);
        assert_eq!(generate(&d("E8")).len(), 240);
        assert_eq!(generate(&d("F4")).len(), 48);
        assert_eq!(generate(&d("G2")).len(), 12);
    }

    #[test]
    fn rank_constraints() {
        assert!("D3".parse::<RootSystemDesc>().is_err());
        assert!("C1".parse::<RootSystemDesc>().is_err());
        assert!("A1".parse::<RootSystemDesc>().is_err());
        assert!("E9".parse::<RootSystemDesc>().is_err());
        assert_eq!(d("BC2").to_string(), "BC2");
        assert_eq!(d("A3").rank(), 2);
    }

    #[test]
    fn cartan_and_reflection_examples() {
        let a = RootVector::from_eps(&[(1, q(1)), (2, q(-1))]);
        let b = RootVector::from_eps(&[(2, q(1)), (3, q(-1))]);
        assert_eq!(cartan_int(&a, &a).unwrap(), q(2));
        assert_eq!(cartan_int(&a, &b).unwrap(), q(-1));
        let e2 = RootVector::from_eps(&[(2, q(1))]);
        assert_eq!(cartan_int(&a, &e2).unwrap(), q(-2));
        assert_eq!(
            reflect(&a, &b).unwrap(),
            RootVector::from_eps(&[(1, q(1)), (3, q(-1))])
        );
        assert_eq!(reflect(&a, &a).unwrap(), a.neg());
        let e1 = RootVector::from_eps(&[(1, q(1))]);
        let s = RootVector::from_eps(&[(1, q(1)), (2, q(1))]);
        assert_eq!(
            reflect(&e1, &s).unwrap(),
            RootVector::from_eps(&[(1, q(-1)), (2, q(1))])
        );
        let null = RootVector::zero().shifted(1, q(1));
        assert_eq!(cartan_int(&a, &null), Err(Error::Isotropic));
    }

    #[test]
    fn partitions() {
        let a2 = generate(&d("A3"));
        assert!(length_partition(&a2)
            .unwrap()
            .iter()
            .all(|c| *c == LengthClass::Short));
        let b2 = generate(&d("B2"));
        for (r, c) in b2.iter().zip(length_partition(&b2).unwrap()) {
            let want = if r.eps().len() == 1 {
                LengthClass::Short
            } else {
                LengthClass::Long
            };
            assert_eq!(c, want);
        }
        let bc1 = generate(&d("BC1"));
        let cl = length_partition(&bc1).unwrap();
        assert_eq!(
            cl.iter().filter(|c| **c == LengthClass::ExtraLong).count(),
            2
        );
        assert!(!cl.contains(&LengthClass::Long));
        let c2 = generate(&d("C2"));
        assert!(!length_partition(&c2)
            .unwrap()
            .contains(&LengthClass::ExtraLong));
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&generate(&d("A3"))));
        assert!(!is_reduced(&generate(&d("BC1"))));
        assert!(is_reduced(&generate(&d("C2"))));
        assert_eq!(reduced_part(&generate(&d("BC2"))), generate(&d("B2")));
    }

    #[test]
    fn recognition_of_pinned_systems() {
        for s in [
            "A2", "A4", "B1", "B3", "C2", "C3", "D4", "BC1", "BC3", "E6", "E7", "E8", "F4", "G2",
        ] {
            assert_eq!(recognize(&generate(&d(s))).unwrap(), d(s), "{s}");
        }
    }

    #[test]
    fn recognition_up_to_coordinates() {
        let scaled: Vec<RootVector> = generate(&d("B2")).iter().map(|r| r.scale(q(3))).collect();
        assert_eq!(recognize(&scaled).unwrap(), d("B2"));
    }

    #[test]
    fn display_uses_symbols() {
        let v = RootVector::from_eps(&[(1, q(1)), (2, q(-2))]).shifted(1, Q::new(1, 2));
        assert_eq!(v.to_string(), "e1-2e2+1/2d1");
    }
}
