use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::verify::{combine, verify_window, within, Grouped};
use super::{LearsWindow, Triple};
use crate::error::{Error, Result};
use crate::linalg::{IntLattice, SpanCoords};
use crate::qgroup::{QSubgroup, ReflectionSpace};
use crate::rational::{fmt_q, gcd_q, Q};
use crate::report::{Check, Report, MAX_WITNESSES};
use crate::rootsys::{
    cartan_int, length_partition, recognize, reduced_part, reflect, reflectable_base, LengthClass,
    RootSystemDesc, RootVector, UnionFind,
};

type Nulls = BTreeMap<u32, Q>;

/// Shifts of one finite root after the base lift, as dense δ-vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftSet {
    pub alpha: RootVector,
    pub class: LengthClass,
    pub shifts: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub desc: RootSystemDesc,
    /// Lifted base roots `π + t_π`.
    pub lift: Vec<RootVector>,
    pub shift_sets: Vec<ShiftSet>,
    pub group: Option<QSubgroup>,
    /// Recovered for null dimension one.
    pub triple: Option<Triple>,
    pub reduced: bool,
    pub report: Report,
}

struct Lifted {
    alphas: Vec<RootVector>,
    classes: Vec<LengthClass>,
    sets: Vec<BTreeSet<Nulls>>,
    /// Offsets `c_α = Σ c_i t_i`; the window for `α` is `[-b, b] − c_α`.
    offsets: Vec<Nulls>,
}

impl Lifted {
    fn in_window(&self, i: usize, bounds: &[Q], s: &Nulls) -> bool {
        within(bounds, &combine(s, Q::from_integer(1), &self.offsets[i]))
    }

    fn index(&self, a: &RootVector) -> Option<usize> {
        self.alphas.binary_search(a).ok()
    }
}

fn choose_lift(
    g: &Grouped,
    base: &[RootVector],
    choice: Option<&[RootVector]>,
) -> Result<Vec<RootVector>> {
    match choice {
        Some(c) => {
            let roots: BTreeSet<RootVector> = g
                .alphas
                .iter()
                .zip(&g.shifts)
                .flat_map(|(a, ss)| ss.iter().map(move |s| a.with_nulls(s.clone())))
                .collect();
            for r in c {
                if !roots.contains(r) {
                    return Err(Error::Decompose(format!(
                        "base representative {r} is not in the window"
                    )));
                }
            }
            Ok(c.to_vec())
        }
        None => base
            .iter()
            .map(|b| {
                let i = *g
                    .index
                    .get(b)
                    .ok_or_else(|| Error::Decompose(format!("base root {b} has no lift")))?;
                let zero = Nulls::new();
                let s = if g.sets[i].contains(&zero) {
                    zero
                } else {
                    g.shifts[i][0].clone()
                };
                Ok(b.with_nulls(s))
            })
            .collect(),
    }
}

fn lift_all(g: &Grouped, lift: &[RootVector], n: u32) -> Result<Lifted> {
    let basis: Vec<Vec<Q>> = lift.iter().map(|r| r.dense_eps(n)).collect();
    let coords = SpanCoords::new(&basis)
        .ok_or_else(|| Error::Decompose("base representatives are linearly dependent".into()))?;
    let classes = length_partition(&g.alphas)?;
    let mut offsets = Vec::with_capacity(g.alphas.len());
    let mut sets = Vec::with_capacity(g.alphas.len());
    for (i, a) in g.alphas.iter().enumerate() {
        let c = coords
            .coords(&a.dense_eps(n))
            .ok_or_else(|| Error::Decompose(format!("{a} is outside the span of the base")))?;
        let mut off = Nulls::new();
        for (ci, r) in c.iter().zip(lift) {
            off = combine(&off, *ci, r.nulls());
        }
        let neg = off.iter().map(|(j, x)| (*j, -*x)).collect::<Nulls>();
        sets.push(
            g.sets[i]
                .iter()
                .map(|s| combine(s, Q::from_integer(1), &neg))
                .collect(),
        );
        offsets.push(off);
    }
    Ok(Lifted {
        alphas: g.alphas.clone(),
        classes,
        sets,
        offsets,
    })
}

/// Constancy of `S_α` on each length class, compared on overlapping windows.
fn constancy(l: &Lifted, bounds: &[Q]) -> Check {
    let mut bad = Vec::new();
    let mut first: BTreeMap<LengthClass, usize> = BTreeMap::new();
    for i in 0..l.alphas.len() {
        let j = *first.entry(l.classes[i]).or_insert(i);
        for (x, y) in [(i, j), (j, i)] {
            for s in &l.sets[x] {
                if l.in_window(y, bounds, s) && !l.sets[y].contains(s) {
                    bad.push(format!(
                        "{} shift {} of {} missing for {}",
                        l.classes[i],
                        show_nulls(s),
                        l.alphas[x],
                        l.alphas[y]
                    ));
                }
            }
        }
    }
    Check::new("S_α constant on length classes", bad)
}

fn show_nulls(s: &Nulls) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.iter()
        .map(|(j, x)| format!("{}d{j}", fmt_q(x)))
        .collect::<Vec<_>>()
        .join("+")
}

/// `S_β − ⟨β,α⟩S_α ⊂ S_{σ_α(β)}` wherever the target lies in its window.
fn s1(l: &Lifted, bounds: &[Q]) -> Check {
    let mut bad = Vec::new();
    let mut count = 0usize;
    for (i, a) in l.alphas.iter().enumerate() {
        for (k, b) in l.alphas.iter().enumerate() {
            let c = cartan_int(b, a).expect("anisotropic");
            let img = reflect(a, b).expect("anisotropic");
            let Some(t) = l.index(&img) else {
                count += 1;
                if bad.len() < MAX_WITNESSES {
                    bad.push(format!("reflection of {b} in {a} is not a finite root"));
                }
                continue;
            };
            for s in &l.sets[i] {
                for u in &l.sets[k] {
                    let v = combine(u, -c, s);
                    if l.in_window(t, bounds, &v) && !l.sets[t].contains(&v) {
                        count += 1;
                        if bad.len() < MAX_WITNESSES {
                            bad.push(format!(
                                "{} − {}·{} ∉ S of {img}",
                                show_nulls(u),
                                fmt_q(&c),
                                show_nulls(s)
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut ch = Check::new("S1", bad);
    if count > MAX_WITNESSES {
        ch.witnesses.push(format!("{count} violations in total"));
    }
    ch
}

/// `0 ∈ S_α` for reduced `α`.
fn s2(l: &Lifted) -> Check {
    let bad = l
        .alphas
        .iter()
        .zip(&l.classes)
        .zip(&l.sets)
        .filter(|((_, c), s)| **c != LengthClass::ExtraLong && !s.contains(&Nulls::new()))
        .map(|((a, _), _)| format!("0 ∉ S of {a}"))
        .collect();
    Check::new("S2", bad)
}

/// `S_{2α} ∩ 2S_α = ∅`.
fn s3(l: &Lifted, bounds: &[Q]) -> Check {
    let two = Q::from_integer(2);
    let mut bad = Vec::new();
    for (i, a) in l.alphas.iter().enumerate() {
        let Some(k) = l.index(&a.scale(two)) else {
            continue;
        };
        for e in &l.sets[k] {
            let half: Nulls = e.iter().map(|(j, x)| (*j, *x / two)).collect();
            if l.in_window(i, bounds, &half) && l.sets[i].contains(&half) {
                bad.push(format!(
                    "{} ∈ S of {} and twice a shift of {a}",
                    show_nulls(e),
                    l.alphas[k]
                ));
            }
        }
    }
    Check::new("S3", bad)
}

fn period_for(desc: &RootSystemDesc, c: LengthClass) -> u64 {
    match c {
        LengthClass::Short => 2,
        LengthClass::Long => desc.long_ratio(),
        LengthClass::ExtraLong => 4,
    }
}

/// Reads the reflection space of one length class off the residues seen,
/// refusing when the window misses a coset of `KG` or the set is not a union
/// of such cosets.
fn recover(
    l: &Lifted,
    g: &QSubgroup,
    bounds: &[Q],
    class: LengthClass,
    period: u64,
) -> Result<ReflectionSpace> {
    let m = g.coset_modulus(period);
    let mut covered = BTreeSet::new();
    let mut present = BTreeSet::new();
    let members: Vec<usize> = (0..l.alphas.len())
        .filter(|i| l.classes[*i] == class)
        .collect();
    for &i in &members {
        for s in &l.sets[i] {
            let x = s.get(&1).copied().unwrap_or_else(|| Q::from_integer(0));
            let r = g.residue(&x, period).ok_or_else(|| {
                Error::Decompose(format!(
                    "shift {} of {} is outside {g}",
                    fmt_q(&x),
                    l.alphas[i]
                ))
            })?;
            present.insert(r);
        }
    }
    for &i in &members {
        let off = l.offsets[i]
            .get(&1)
            .copied()
            .unwrap_or_else(|| Q::from_integer(0));
        let reach = bounds[0] + off.abs();
        for x in g.enumerate_window(&reach)? {
            let nx: Nulls = if x == Q::from_integer(0) {
                Nulls::new()
            } else {
                [(1, x)].into()
            };
            if !l.in_window(i, bounds, &nx) {
                continue;
            }
            let r = g
                .residue(&x, period)
                .expect("enumerated element is in the group");
            covered.insert(r);
            if present.contains(&r) != l.sets[i].contains(&nx) {
                return Err(Error::Decompose(format!(
                    "{class} shifts of {} are not a union of cosets of {period}G (at {})",
                    l.alphas[i],
                    fmt_q(&x)
                )));
            }
        }
    }
    if covered.len() as u64 != m {
        return Err(Error::Decompose(format!(
            "window too small: {} of {m} cosets of {period}G visible for {class} roots",
            covered.len()
        )));
    }
    Ok(ReflectionSpace::from_residue_classes(g.clone(), period, present)?.normalized())
}

/// Recovers the finite type, the shift sets relative to a lifted reflectable
/// base, and for one null coordinate the triple `(S, L, E)`.
pub fn decompose(w: &LearsWindow, base_choice: Option<&[RootVector]>) -> Result<Decomposition> {
    if w.roots.is_empty() {
        return Err(Error::Decompose("empty window".into()));
    }
    let g = Grouped::new(&w.roots);
    let n = g.alphas.iter().map(|a| a.eps_dim()).max().unwrap_or(0);
    let m = w
        .roots
        .iter()
        .map(|r| r.null_dim() as usize)
        .max()
        .unwrap_or(0)
        .max(w.bounds.len());
    let bounds: Vec<Q> = (0..m)
        .map(|j| {
            w.bounds
                .get(j)
                .copied()
                .unwrap_or_else(|| Q::from_integer(0))
        })
        .collect();
    let desc = recognize(&g.alphas)?;
    let red = reduced_part(&g.alphas);
    let base = reflectable_base(&red)?;
    let lift = choose_lift(&g, &base.base, base_choice)?;
    if lift.len() != base.base.len() {
        return Err(Error::Decompose(format!(
            "{} base representatives for a base of size {}",
            lift.len(),
            base.base.len()
        )));
    }
    let l = lift_all(&g, &lift, n)?;

    let mut report = Report::new(format!("decomposition as {desc}"));
    report.push(constancy(&l, &bounds));
    report.push(s1(&l, &bounds));
    report.push(s2(&l));
    let reduced = verify_window(w).is_reduced;
    if reduced {
        report.push(s3(&l, &bounds));
    }
    if !report.checks[0].passed() {
        return Err(Error::Decompose(format!(
            "not a LEARS window: {}",
            report.checks[0].witnesses.join("; ")
        )));
    }

    let (group, triple) = if m == 1 {
        let group = match w.group_hint() {
            Some(h) => h.clone(),
            None => {
                let all: Vec<Q> = l
                    .sets
                    .iter()
                    .flatten()
                    .filter_map(|s| s.get(&1).copied())
                    .collect();
                let d = gcd_q(all.iter());
                if d == Q::from_integer(0) {
                    return Err(Error::Decompose("all shifts vanish".into()));
                }
                QSubgroup::cyclic(d)?
            }
        };
        let mut spaces = BTreeMap::new();
        for c in [
            LengthClass::Short,
            LengthClass::Long,
            LengthClass::ExtraLong,
        ] {
            if l.classes.contains(&c) {
                spaces.insert(c, recover(&l, &group, &bounds, c, period_for(&desc, c))?);
            }
        }
        let t = Triple::new(
            spaces
                .remove(&LengthClass::Short)
                .expect("short roots exist"),
            spaces.remove(&LengthClass::Long),
            spaces.remove(&LengthClass::ExtraLong),
        );
        (Some(group), Some(t))
    } else {
        (None, None)
    };

    let shift_sets = l
        .alphas
        .iter()
        .zip(&l.classes)
        .zip(&l.sets)
        .map(|((a, c), s)| ShiftSet {
            alpha: a.clone(),
            class: *c,
            shifts: s
                .iter()
                .map(|x| a.with_nulls(x.clone()).dense_nulls(m as u32))
                .collect(),
        })
        .collect();
    Ok(Decomposition {
        desc,
        lift,
        shift_sets,
        group,
        triple,
        reduced,
        report,
    })
}

/// The sub-window over `Δ′ = {α : supp(α) ⊂ I′}` with shifts in the lattice
/// generated by `generators`, together with its windowed verification.
pub fn restrict_to_ears(
    w: &LearsWindow,
    sub_index: &BTreeSet<u32>,
    generators: &[Vec<Q>],
) -> Result<(LearsWindow, super::WindowReport)> {
    let m = w
        .roots
        .iter()
        .map(|r| r.null_dim() as usize)
        .max()
        .unwrap_or(0)
        .max(w.bounds.len());
    if let Some(bad) = generators.iter().find(|v| v.len() != m) {
        return Err(Error::Dimension(format!(
            "generator of length {} for {m} null coordinates",
            bad.len()
        )));
    }
    let lattice = IntLattice::from_generators(m, generators);
    let roots: Vec<RootVector> = w
        .roots
        .iter()
        .filter(|r| r.eps().keys().all(|i| sub_index.contains(i)))
        .filter(|r| lattice.contains(&r.dense_nulls(m as u32)))
        .cloned()
        .collect();
    let eps: BTreeSet<RootVector> = roots.iter().map(|r| r.eps_part()).collect();
    let eps: Vec<RootVector> = eps.into_iter().collect();
    if eps.is_empty() {
        return Err(Error::InvalidArgument("sub-index carries no roots".into()));
    }
    let mut uf = UnionFind::new(eps.len());
    for i in 0..eps.len() {
        for k in i + 1..eps.len() {
            if eps[i].form(&eps[k]) != Q::from_integer(0) {
                uf.union(i, k);
            }
        }
    }
    if uf.components() > 1 {
        return Err(Error::InvalidRootSystem(format!(
            "restriction is reducible ({} components)",
            uf.components()
        )));
    }
    let mut out = LearsWindow::from_roots(roots, Some(w.bounds.clone()));
    out.desc = Some(recognize(&eps)?);
    let rep = verify_window(&out);
    Ok((out, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lears::{construct, parse_spec_line};
    use crate::rational::q;

    fn build(line: &str) -> LearsWindow {
        let sl = parse_spec_line(line).unwrap();
        construct(&sl.single().unwrap(), &sl.window().unwrap()).unwrap()
    }

    fn triple(line: &str) -> Triple {
        parse_spec_line(line).unwrap().single().unwrap().triple
    }

    #[test]
    fn b2_round_trip() {
        let w = build("type=B2 group=Z S=G L=2G window=3");
        let d = decompose(&w, None).unwrap();
        assert_eq!(d.desc.to_string(), "B2");
        assert!(d.report.passed(), "{}", d.report);
        assert!(d
            .triple
            .unwrap()
            .same_sets(&triple("type=B2 group=Z S=G L=2G")));
    }

    #[test]
    fn shifted_representatives_normalize_back() {
        let w = build("type=B2 group=Z S=G L=2G window=3");
        let choice = vec![
            RootVector::from_eps(&[(1, q(1)), (2, q(-1))]),
            RootVector::from_eps(&[(2, q(1))]).shifted(1, q(1)),
        ];
        let d = decompose(&w, Some(&choice)).unwrap();
        assert_eq!(d.lift, choice);
        let t = d.triple.unwrap();
        assert!(t.same_sets(&triple("type=B2 group=Z S=G L=2G")));
        let long = d
            .shift_sets
            .iter()
            .find(|x| x.alpha == RootVector::from_eps(&[(1, q(1)), (2, q(1))]))
            .unwrap();
        assert!(long.shifts.contains(&vec![q(-4)]) && !long.shifts.contains(&vec![q(-1)]));
    }

    #[test]
    fn bc1_reduced_round_trip() {
        let w = build("type=BC1 group=Z S=G E=2G+1 window=3");
        let d = decompose(&w, None).unwrap();
        assert!(d.reduced);
        let t = d.triple.unwrap();
        assert!(t.is_reduced());
        assert!(t.same_sets(&triple("type=BC1 group=Z S=G E=2G+1")));
        assert!(d.report.passed(), "{}", d.report);
    }

    #[test]
    fn small_window_is_refused() {
        let w = build("type=BC1 group=Z S=G E=4G window=1");
        assert!(matches!(decompose(&w, None), Err(Error::Decompose(_))));
    }

    #[test]
    fn restrictions() {
        let w = build("type=B3 group=Z S=G L=G window=2");
        let (r, rep) = restrict_to_ears(&w, &[1, 2].into(), &[vec![q(1)]]).unwrap();
        assert_eq!(r.desc.unwrap().to_string(), "B2");
        assert!(rep.passed(), "{}", rep.report);
        let w = build("type=A4 group=Z S=G window=2");
        let (r, _) = restrict_to_ears(&w, &[1, 2, 3].into(), &[vec![q(0)]]).unwrap();
        assert_eq!(r.roots.len(), 6);
        assert_eq!(r.desc.unwrap().to_string(), "A3");
        let w = build("type=BC2 group=Z S=G L=G E=2G+1 window=3");
        let (r, rep) = restrict_to_ears(&w, &[1].into(), &[vec![q(1)]]).unwrap();
        assert_eq!(r.desc.unwrap().to_string(), "BC1");
        assert!(rep.passed() && rep.is_reduced);
        let d = decompose(&r, None).unwrap();
        assert!(d
            .triple
            .unwrap()
            .same_sets(&triple("type=BC1 group=Z S=G E=2G+1")));
        let d4 = build("type=D4 group=Z S=G window=1");
        assert!(matches!(
            restrict_to_ears(&d4, &[1, 2].into(), &[vec![q(1)]]),
            Err(Error::InvalidRootSystem(_))
        ));
    }
}
