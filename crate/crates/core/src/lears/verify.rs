use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::LearsWindow;
use crate::linalg::{rank, IntLattice};
use crate::rational::Q;
use crate::report::{Check, Report, MAX_WITNESSES};
use crate::rootsys::{cartan_int, reflect, RootVector};

type Nulls = BTreeMap<u32, Q>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub report: Report,
    pub is_reduced: bool,
    pub root_count: usize,
    pub eps_classes: usize,
    pub null_dim: usize,
    /// Kind of each shift group, or `window` for a bare root set.
    pub shift_group_tag: String,
}

impl WindowReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Roots grouped by ε-part, in sorted order.
pub(crate) struct Grouped {
    pub alphas: Vec<RootVector>,
    pub shifts: Vec<Vec<Nulls>>,
    pub sets: Vec<BTreeSet<Nulls>>,
    pub index: BTreeMap<RootVector, usize>,
}

impl Grouped {
    pub(crate) fn new(roots: &[RootVector]) -> Self {
        let mut by: BTreeMap<RootVector, BTreeSet<Nulls>> = BTreeMap::new();
        for r in roots {
            by.entry(r.eps_part())
                .or_default()
                .insert(r.nulls().clone());
        }
        let alphas: Vec<RootVector> = by.keys().cloned().collect();
        let index = alphas
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let sets: Vec<BTreeSet<Nulls>> = by.into_values().collect();
        let shifts = sets.iter().map(|s| s.iter().cloned().collect()).collect();
        Self {
            alphas,
            shifts,
            sets,
            index,
        }
    }

    pub(crate) fn contains(&self, alpha: &RootVector, s: &Nulls) -> bool {
        self.index
            .get(alpha)
            .is_some_and(|&i| self.sets[i].contains(s))
    }
}

pub(crate) fn combine(a: &Nulls, n: Q, b: &Nulls) -> Nulls {
    let mut out = a.clone();
    for (j, x) in b {
        let v = out.get(j).copied().unwrap_or_else(|| Q::from_integer(0)) + n * *x;
        if v == Q::from_integer(0) {
            out.remove(j);
        } else {
            out.insert(*j, v);
        }
    }
    out
}

pub(crate) fn within(bounds: &[Q], s: &Nulls) -> bool {
    s.iter()
        .all(|(j, x)| bounds.get(*j as usize - 1).is_some_and(|b| x.abs() <= *b))
}

fn show(alpha: &RootVector, s: &Nulls) -> String {
    alpha.with_nulls(s.clone()).to_string()
}

/// Reflection closure over ε-classes: `σ_{α+s}(β+s′) = σ_α(β) + s′ − ⟨β,α⟩s`.
/// Images outside the window bounds are counted, not judged.
fn a3(g: &Grouped, bounds: &[Q]) -> Check {
    let per: Vec<(Vec<String>, u64, usize)> = (0..g.alphas.len())
        .into_par_iter()
        .map(|i| {
            let a = &g.alphas[i];
            let mut bad = Vec::new();
            let mut unchecked = 0u64;
            let mut nbad = 0usize;
            for (k, b) in g.alphas.iter().enumerate() {
                let c = cartan_int(b, a).expect("anisotropic ε-part");
                let img = reflect(a, b).expect("anisotropic ε-part");
                for s in &g.shifts[i] {
                    for t in &g.shifts[k] {
                        let u = combine(t, -c, s);
                        if !within(bounds, &u) {
                            unchecked += 1;
                        } else if !g.contains(&img, &u) {
                            nbad += 1;
                            if bad.len() < MAX_WITNESSES {
                                bad.push(format!(
                                    "reflection of {} in {} gives {} outside the set",
                                    show(b, t),
                                    show(a, s),
                                    show(&img, &u)
                                ));
                            }
                        }
                    }
                }
            }
            (bad, unchecked, nbad)
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut unchecked = 0;
    let mut fails = 0;
    for (b, u, n) in per {
        witnesses.extend(b);
        unchecked += u;
        fails += n;
    }
    let mut c = Check::new("A3", witnesses);
    if fails > MAX_WITNESSES {
        c.witnesses
            .push(format!("{} failing pairs in total", fails));
    }
    c.with_unchecked(unchecked)
}

fn eps_null_dims(roots: &[RootVector]) -> (u32, u32) {
    roots.iter().fold((0, 0), |(n, m), r| {
        (n.max(r.eps_dim()), m.max(r.null_dim()))
    })
}

/// Windowed Definition-of-LEARS checks A1–A4 and S0.
pub fn verify_window(w: &LearsWindow) -> WindowReport {
    let roots = &w.roots;
    let mut rep = Report::new(format!(
        "window of {} roots{}",
        roots.len(),
        w.desc.map(|d| format!(", type {d}")).unwrap_or_default()
    ));
    let (n, m_roots) = eps_null_dims(roots);
    let m = (m_roots as usize).max(w.bounds.len());
    let g = Grouped::new(roots);

    let bad: Vec<String> = roots
        .iter()
        .filter(|r| r.is_isotropic())
        .map(|r| format!("isotropic member {r}"))
        .collect();
    let mut a1 = Check::new("A1", bad);
    if roots.is_empty() {
        a1 = Check::fail("A1", "empty window");
    } else if a1.passed() {
        let dense: Vec<Vec<Q>> = roots.iter().map(|r| r.dense(n, m as u32)).collect();
        let eps: Vec<Vec<Q>> = g.alphas.iter().map(|a| a.dense_eps(n)).collect();
        let nul: Vec<Vec<Q>> = roots.iter().map(|r| r.dense_nulls(m as u32)).collect();
        let (rt, re, rn) = (rank(&dense), rank(&eps), rank(&nul));
        if rt != re + rn {
            a1 = Check::fail(
                "A1",
                format!("span has rank {rt} but its ε- and δ-parts have ranks {re} and {rn}"),
            );
        }
    }
    rep.push(a1);
    let anisotropic = !roots.is_empty() && g.alphas.iter().all(|a| !a.is_isotropic());

    if anisotropic {
        let mut bad2 = Vec::new();
        for a in &g.alphas {
            for b in &g.alphas {
                let c = cartan_int(a, b).expect("anisotropic");
                if !c.is_integer() {
                    bad2.push(format!("<{a},{b}> = {}", crate::rational::fmt_q(&c)));
                }
            }
        }
        rep.push(Check::new("A2", bad2));
        rep.push(a3(&g, &w.bounds));
    } else {
        rep.push(Check::fail("A2", "isotropic ε-part"));
        rep.push(Check::fail("A3", "isotropic ε-part"));
    }

    let mut uf = crate::rootsys::UnionFind::new(g.alphas.len());
    for i in 0..g.alphas.len() {
        for k in i + 1..g.alphas.len() {
            if g.alphas[i].form(&g.alphas[k]) != Q::from_integer(0) {
                uf.union(i, k);
            }
        }
    }
    let comps = uf.components();
    rep.push(Check::from_bool("A4", comps <= 1, || {
        format!("nonorthogonality graph has {comps} components")
    }));

    let nul: Vec<Vec<Q>> = roots.iter().map(|r| r.dense_nulls(m as u32)).collect();
    let rn = if m == 0 { 0 } else { rank(&nul) };
    rep.push(Check::from_bool("S0", rn == m, || {
        format!("δ-parts span rank {rn} of {m}")
    }));

    let set: BTreeSet<&RootVector> = roots.iter().collect();
    let is_reduced = !roots
        .iter()
        .any(|r| set.contains(&r.scale(Q::from_integer(2))));
    let shift_group_tag = match w.factors.as_slice() {
        [] => "window".to_string(),
        fs => fs
            .iter()
            .map(|(gr, _)| gr.kind_tag())
            .collect::<Vec<_>>()
            .join(";"),
    };
    WindowReport {
        report: rep,
        is_reduced,
        root_count: roots.len(),
        eps_classes: g.alphas.len(),
        null_dim: m,
        shift_group_tag,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSplitReport {
    pub report: Report,
    /// Basis of `⟨R⟩ ∩ V⁰` in δ-coordinates.
    pub shift_generators: Vec<Vec<Q>>,
    pub eps_rank: usize,
}

/// `⟨R⟩ = ⟨Δ⟩ ⊕ G` and `⟨R⟩ ∩ V⁰ = G` on the lattice generated by the window.
pub fn group_decomposition_check(w: &LearsWindow) -> GroupSplitReport {
    let roots = &w.roots;
    let (n, m0) = eps_null_dims(roots);
    let m = (m0 as usize).max(w.bounds.len()) as u32;
    let g = Grouped::new(roots);
    let dim = (n + m) as usize;
    let full = IntLattice::from_generators(
        dim,
        &roots.iter().map(|r| r.dense(n, m)).collect::<Vec<_>>(),
    );
    let eps_lat = IntLattice::from_generators(
        n as usize,
        &g.alphas.iter().map(|a| a.dense_eps(n)).collect::<Vec<_>>(),
    );
    let shifts = IntLattice::from_generators(
        m as usize,
        &roots.iter().map(|r| r.dense_nulls(m)).collect::<Vec<_>>(),
    );
    let mut rep = Report::new(format!("lattice generated by {} roots", roots.len()));

    let missing: Vec<String> = g
        .alphas
        .iter()
        .filter(|a| !full.contains(&a.dense(n, m)))
        .map(|a| format!("{a} is not in the generated group"))
        .collect();
    rep.push(Check::new("<Δ>⊂<R>", missing));

    let tail: Vec<Vec<Q>> = full
        .tail_intersection(n as usize)
        .into_iter()
        .map(|r| r[n as usize..].to_vec())
        .collect();
    let radical = IntLattice::from_generators(m as usize, &tail);
    let mut bad = Vec::new();
    for b in shifts.basis() {
        if !radical.contains(&b) {
            bad.push(format!(
                "δ-part {:?} not in <R>∩V⁰",
                b.iter().map(crate::rational::fmt_q).collect::<Vec<_>>()
            ));
        }
    }
    for b in &tail {
        if !shifts.contains(b) {
            bad.push(format!(
                "element {:?} of <R>∩V⁰ outside G",
                b.iter().map(crate::rational::fmt_q).collect::<Vec<_>>()
            ));
        }
    }
    rep.push(Check::new("<R>∩V⁰=G", bad));

    let mut eps_sums = BTreeSet::new();
    let mut null_sums = BTreeSet::new();
    for (i, a) in g.alphas.iter().enumerate() {
        for b in &g.alphas[i..] {
            eps_sums.insert(a.add(b).dense_eps(n));
        }
    }
    let nulls: BTreeSet<Vec<Q>> = roots.iter().map(|r| r.dense_nulls(m)).collect();
    let nulls: Vec<Vec<Q>> = nulls.into_iter().collect();
    for (i, a) in nulls.iter().enumerate() {
        for b in &nulls[i..] {
            null_sums.insert(a.iter().zip(b).map(|(x, y)| *x + *y).collect::<Vec<Q>>());
        }
    }
    let mut bad = Vec::new();
    for e in &eps_sums {
        let mut v = e.clone();
        v.extend(std::iter::repeat_n(Q::from_integer(0), m as usize));
        if !eps_lat.contains(e) || !full.contains(&v) {
            bad.push(format!("ε-part {e:?} of a pairwise sum does not split off"));
        }
    }
    for s in &null_sums {
        if !shifts.contains(s) || !radical.contains(s) {
            bad.push(format!("δ-part {s:?} of a pairwise sum outside G"));
        }
    }
    rep.push(Check::new("pairwise split", bad));

    GroupSplitReport {
        report: rep,
        shift_generators: tail,
        eps_rank: eps_lat.rank(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lears::{construct, parse_spec_line};
    use crate::rational::{q, qf};
    use crate::report::Status;

    fn build(line: &str) -> LearsWindow {
        let sl = parse_spec_line(line).unwrap();
        construct(&sl.single().unwrap(), &sl.window().unwrap()).unwrap()
    }

    #[test]
    fn b2_window_passes_with_boundary_unchecked() {
        let r = verify_window(&build("type=B2 group=Z S=G L=2G window=3"));
        assert!(r.passed(), "{}", r.report);
        assert!(r.report.get("A3").unwrap().unchecked_count > 0);
        assert!(r.is_reduced);
    }

    #[test]
    fn nonreduced_bc_window() {
        let r = verify_window(&build("type=BC1 group=Z S=G E=2G window=3"));
        assert!(r.passed(), "{}", r.report);
        assert!(!r.is_reduced);
    }

    #[test]
    fn removed_coset_breaks_a3() {
        let mut w = build("type=B2 group=Z S=G L=2G window=3");
        w.roots
            .retain(|r| !(r.eps_part().norm2() == q(2) && r.null_coord(1) == q(2)));
        let r = verify_window(&w);
        assert_eq!(r.report.status_of("A3"), Some(Status::Fail));
        assert!(!r.report.get("A3").unwrap().witnesses.is_empty());
    }

    #[test]
    fn disconnected_union_fails_a4() {
        let mut w = build("type=A2 group=Z S=G window=1");
        let shifted: Vec<RootVector> = w
            .roots
            .iter()
            .map(|r| {
                let e: BTreeMap<u32, Q> = r.eps().iter().map(|(i, x)| (i + 3, *x)).collect();
                RootVector::new(e, r.nulls().clone())
            })
            .collect();
        w.roots.extend(shifted);
        assert_eq!(verify_window(&w).report.status_of("A4"), Some(Status::Fail));
    }

    #[test]
    fn shift_groups() {
        let r = group_decomposition_check(&build("type=B2 group=Z S=G L=2G window=2"));
        assert!(r.report.passed(), "{}", r.report);
        assert_eq!(r.shift_generators, vec![vec![q(1)]]);
        let r = group_decomposition_check(&build("type=A2 group=Z*1/2 S=G window=1"));
        assert_eq!(r.shift_generators, vec![vec![qf(1, 2)]]);
        let r = group_decomposition_check(&build("type=A2 group=trunc(Zinv(3),1) S=G window=1"));
        assert_eq!(r.shift_generators, vec![vec![qf(1, 3)]]);
        assert!(r.report.passed());
    }
}
