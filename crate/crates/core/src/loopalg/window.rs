use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cocycle::Cocycle;
use super::fiber::{build_fiber, Fiber, LoopLabel, Sparse};
use crate::error::{Error, Result};
use crate::qgroup::QSubgroup;
use crate::rational::{fmt_q, Q};
use crate::report::{Check, Report};
use crate::rootsys::RootVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Part {
    Fiber { index: usize, sector: u64 },
    Central,
    Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSymbol {
    pub label: String,
    pub weight: RootVector,
    pub degree: Q,
    pub part: Part,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CartanRole {
    /// `ad h` acts on weight `μ` by `coweight · μ`.
    Fiber(Vec<Q>),
    Central,
    Degree,
}

/// A finite window `|g| ≤ bound` of a graded Lie algebra `⊕ F_{r(g)} ⊗ t^g`,
/// optionally with `c` and `d` adjoined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedLieWindow {
    pub label: LoopLabel,
    pub group: QSubgroup,
    pub bound: Q,
    pub fiber: Fiber,
    pub basis: Vec<BasisSymbol>,
    /// `[b_i, b_j]` for `i < j`, nonzero entries only.
    pub brackets: BTreeMap<(usize, usize), Sparse>,
    /// Pairs whose bracket has degree outside the window (dropped).
    pub overflow: Vec<(usize, usize)>,
    pub cartan: Vec<(usize, CartanRole)>,
    pub central: Option<usize>,
    pub derivation: Option<usize>,
    #[serde(skip)]
    tau: Cocycle,
}

impl GradedLieWindow {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn in_window(&self, g: &Q) -> bool {
        g.abs() <= self.bound
    }

    pub fn bracket(&self, i: usize, j: usize) -> Sparse {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -*c)).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    /// Overwrites one structure constant `[b_i, b_j]_k` (and its mirror).
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: Q) {
        let (key, v) = if i < j {
            ((i, j), value)
        } else {
            ((j, i), -value)
        };
        let entry = self.brackets.entry(key).or_default();
        entry.retain(|(m, _)| *m != k);
        if !v.is_zero() {
            entry.push((k, v));
            entry.sort_by_key(|(m, _)| *m);
        }
        if entry.is_empty() {
            self.brackets.remove(&key);
        }
    }

    pub fn find(&self, fiber_index: usize, degree: &Q) -> Option<usize> {
        self.basis.iter().position(|b| {
            b.degree == *degree
                && matches!(b.part, Part::Fiber { index, .. } if index == fiber_index)
        })
    }

    /// Basis counts per `(degree, weight)`.
    pub fn inventory(&self) -> BTreeMap<(Q, RootVector), usize> {
        let mut out = BTreeMap::new();
        for b in self
            .basis
            .iter()
            .filter(|b| matches!(b.part, Part::Fiber { .. }))
        {
            *out.entry((b.degree, b.weight.clone())).or_insert(0) += 1;
        }
        out
    }

    /// One `i j k coefficient` line per nonzero constant, `i < j`.
    pub fn structure_constants_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# basis {}", self.dim());
        for (i, b) in self.basis.iter().enumerate() {
            let _ = writeln!(s, "# {i} {}", b.label);
        }
        for ((i, j), v) in &self.brackets {
            for (k, c) in v {
                let _ = writeln!(s, "{i} {j} {k} {}", fmt_q(c));
            }
        }
        s
    }

    fn table(&self) -> Vec<Vec<Sparse>> {
        let n = self.dim();
        let mut t = vec![vec![Vec::new(); n]; n];
        for ((i, j), v) in &self.brackets {
            t[*i][*j] = v.clone();
            t[*j][*i] = v.iter().map(|(k, c)| (*k, -*c)).collect();
        }
        t
    }
}

fn degree_label(g: &Q) -> String {
    format!("t^{}", fmt_q(g))
}

fn add_into(acc: &mut BTreeMap<usize, Q>, k: usize, x: Q) {
    let e = acc.entry(k).or_insert_with(Q::zero);
    *e += x;
    if e.is_zero() {
        acc.remove(&k);
    }
}

/// The window of the `(G, τ)`-loop algebra of `label`.
pub fn build_loop_algebra(
    label: &LoopLabel,
    group: &QSubgroup,
    tau: &Cocycle,
    bound: &Q,
) -> Result<GradedLieWindow> {
    if !bound.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "window bound {} must be positive",
            fmt_q(bound)
        )));
    }
    let fiber = build_fiber(label)?;
    let p = fiber.period;
    if p > 1 && group.coset_modulus(p) != p {
        return Err(Error::Construction(format!(
            "{label} needs |G/{p}G| = {p}, but {group} has quotient of order {}",
            group.coset_modulus(p)
        )));
    }
    let degrees = group.enumerate_window(bound)?;
    let mut basis = Vec::new();
    let mut index: BTreeMap<(usize, Q), usize> = BTreeMap::new();
    for g in &degrees {
        let r = if p == 1 {
            0
        } else {
            group
                .residue(g, p)
                .ok_or_else(|| Error::Construction(format!("{} has no residue", fmt_q(g))))?
        };
        for (k, v) in fiber
            .vectors
            .iter()
            .enumerate()
            .filter(|(_, v)| v.sector == r)
        {
            index.insert((k, *g), basis.len());
            basis.push(BasisSymbol {
                label: format!("{} {}", v.label, degree_label(g)),
                weight: v.weight.clone(),
                degree: *g,
                part: Part::Fiber {
                    index: k,
                    sector: r,
                },
            });
        }
    }
    let fiber_index = |b: &BasisSymbol| match b.part {
        Part::Fiber { index, .. } => index,
        _ => unreachable!("only fiber symbols at this stage"),
    };
    let mut brackets = BTreeMap::new();
    let mut overflow = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let fb = fiber.bracket(fiber_index(&basis[i]), fiber_index(&basis[j]));
            if fb.is_empty() {
                continue;
            }
            let (g, h) = (basis[i].degree, basis[j].degree);
            let s = g + h;
            if s.abs() > *bound {
                overflow.push((i, j));
                continue;
            }
            let t = tau.value(&g, &h)?;
            let mut v: Sparse = fb
                .iter()
                .map(|(k, c)| {
                    index.get(&(*k, s)).map(|m| (*m, *c * t)).ok_or_else(|| {
                        Error::Construction(format!(
                            "{} missing at degree {}",
                            fiber.vectors[*k].label,
                            fmt_q(&s)
                        ))
                    })
                })
                .collect::<Result<_>>()?;
            v.sort_by_key(|(m, _)| *m);
            brackets.insert((i, j), v);
        }
    }
    let cartan = fiber
        .cartan
        .iter()
        .map(|(h, c)| (index[&(*h, Q::zero())], CartanRole::Fiber(c.clone())))
        .collect();
    Ok(GradedLieWindow {
        label: *label,
        group: group.clone(),
        bound: *bound,
        fiber,
        basis,
        brackets,
        overflow,
        cartan,
        central: None,
        derivation: None,
        tau: tau.clone(),
    })
}

/// Adjoins `c` with `ω(x⊗t^g, y⊗t^h) = (x, y)τ(g, h)δ_{g+h,0}·g`, using the
/// fiber's invariant form, and reports the checks on the extension.
pub fn central_extend(mut l: GradedLieWindow) -> Result<(GradedLieWindow, Report)> {
    if l.central.is_some() {
        return Err(Error::Construction(
            "central element already present".into(),
        ));
    }
    let mut report = Report::new(format!("central extension of {}", l.label));
    let bad = l.fiber.invariance_witnesses();
    if let Some(w) = bad.first() {
        return Err(Error::FormNotInvariant(w.clone()));
    }
    report.push(Check::pass("form invariance"));
    let c = l.dim();
    let fiber_of = |b: &BasisSymbol| match b.part {
        Part::Fiber { index, .. } => Some(index),
        _ => None,
    };
    let mut omega: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    for i in 0..c {
        for j in i + 1..c {
            let (bi, bj) = (&l.basis[i], &l.basis[j]);
            let (Some(x), Some(y)) = (fiber_of(bi), fiber_of(bj)) else {
                continue;
            };
            if !(bi.degree + bj.degree).is_zero() || bi.degree.is_zero() {
                continue;
            }
            let f = l.fiber.form_value(x, y);
            if f.is_zero() {
                continue;
            }
            let w = f * l.tau.value(&bi.degree, &bj.degree)? * bi.degree;
            omega.insert((i, j), w);
        }
    }
    for ((i, j), w) in &omega {
        let e = l.brackets.entry((*i, *j)).or_default();
        e.push((c, *w));
    }
    l.basis.push(BasisSymbol {
        label: "c".into(),
        weight: RootVector::zero(),
        degree: Q::zero(),
        part: Part::Central,
    });
    l.central = Some(c);
    l.cartan.push((c, CartanRole::Central));

    let coef = |l: &GradedLieWindow, i: usize, j: usize| -> Q {
        l.bracket(i, j)
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, v)| *v)
            .unwrap_or_else(Q::zero)
    };
    let mut anti = Vec::new();
    let mut gate = Vec::new();
    for i in 0..c {
        for j in 0..c {
            let (a, b) = (coef(&l, i, j), coef(&l, j, i));
            if a != -b {
                anti.push(format!("{}, {}", l.basis[i].label, l.basis[j].label));
            }
            if !a.is_zero() && !(l.basis[i].degree + l.basis[j].degree).is_zero() {
                gate.push(format!("{}, {}", l.basis[i].label, l.basis[j].label));
            }
        }
    }
    report.push(Check::new("omega antisymmetry", anti));
    report.push(Check::new("delta gate", gate));

    let table = l.table();
    let omega_of = |v: &Sparse, k: usize| -> Q {
        v.iter()
            .filter(|(m, _)| *m != c)
            .map(|(m, x)| *x * coef(&l, *m, k))
            .sum()
    };
    let mut cyc = Vec::new();
    let mut unchecked = 0u64;
    for i in 0..c {
        for j in i + 1..c {
            for k in j + 1..c {
                let (gi, gj, gk) = (l.basis[i].degree, l.basis[j].degree, l.basis[k].degree);
                if !(gi + gj + gk).is_zero() {
                    continue;
                }
                if [gi + gj, gj + gk, gk + gi].iter().any(|s| !l.in_window(s)) {
                    unchecked += 1;
                    continue;
                }
                let s = omega_of(&table[i][j], k)
                    + omega_of(&table[j][k], i)
                    + omega_of(&table[k][i], j);
                if !s.is_zero() {
                    cyc.push(format!(
                        "{}, {}, {}",
                        l.basis[i].label, l.basis[j].label, l.basis[k].label
                    ));
                }
            }
        }
    }
    report.push(Check::new("omega cocycle", cyc).with_unchecked(unchecked));
    report.push(centrality(&l));
    Ok((l, report))
}

/// `[x, c] = 0` for every basis element `x`.
pub fn centrality(l: &GradedLieWindow) -> Check {
    let Some(c) = l.central else {
        return Check::fail("centrality", "no central element");
    };
    let bad = (0..l.dim())
        .filter(|&x| !l.bracket(x, c).is_empty())
        .map(|x| l.basis[x].label.clone())
        .collect();
    Check::new("centrality", bad)
}

/// Adjoins `d` with `[d, x⊗t^g] = g·x⊗t^g` and `[d, c] = 0`.
pub fn add_degree_derivation(mut l: GradedLieWindow) -> Result<GradedLieWindow> {
    if l.central.is_none() {
        return Err(Error::Construction(
            "degree derivation needs the central extension".into(),
        ));
    }
    if l.derivation.is_some() {
        return Err(Error::Construction(
            "degree derivation already present".into(),
        ));
    }
    let d = l.dim();
    for (i, b) in l.basis.iter().enumerate() {
        if !b.degree.is_zero() {
            l.brackets.insert((i, d), vec![(i, -b.degree)]);
        }
    }
    l.basis.push(BasisSymbol {
        label: "d".into(),
        weight: RootVector::zero(),
        degree: Q::zero(),
        part: Part::Derivation,
    });
    l.derivation = Some(d);
    l.cartan.push((d, CartanRole::Degree));
    Ok(l)
}

/// Degrees and weights add under the bracket on every stored pair.
pub fn grading_check(l: &GradedLieWindow) -> Check {
    let mut bad = Vec::new();
    for ((i, j), v) in &l.brackets {
        let (bi, bj) = (&l.basis[*i], &l.basis[*j]);
        for (k, _) in v {
            let bk = &l.basis[*k];
            if bk.degree != bi.degree + bj.degree || bk.weight != bi.weight.add(&bj.weight) {
                bad.push(format!("[{}, {}] ∋ {}", bi.label, bj.label, bk.label));
            }
        }
    }
    Check::new("grading", bad).with_unchecked(l.overflow.len() as u64)
}

/// `H = 𝔥 ⊕ Fc ⊕ Fd` is abelian.
pub fn cartan_check(l: &GradedLieWindow) -> Check {
    let mut bad = Vec::new();
    for (a, (i, _)) in l.cartan.iter().enumerate() {
        for (j, _) in &l.cartan[a + 1..] {
            if !l.bracket(*i, *j).is_empty() {
                bad.push(format!("{}, {}", l.basis[*i].label, l.basis[*j].label));
            }
        }
    }
    Check::new("cartan abelian", bad)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum JacobiMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub check: Check,
    pub triples_checked: u64,
    pub triples_unchecked: u64,
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "jacobi {}: {} checked, {} unchecked",
            self.check.status, self.triples_checked, self.triples_unchecked
        )?;
        for w in &self.check.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

fn nested(t: &[Vec<Sparse>], a: &Sparse, z: usize, acc: &mut BTreeMap<usize, Q>) {
    for (k, x) in a {
        for (m, y) in &t[*k][z] {
            add_into(acc, *m, *x * *y);
        }
    }
}

fn bracket_vec(t: &[Vec<Sparse>], x: &Sparse, y: &Sparse) -> Sparse {
    let mut acc = BTreeMap::new();
    for (i, a) in x {
        for (j, b) in y {
            for (k, c) in &t[*i][*j] {
                add_into(&mut acc, *k, *a * *b * *c);
            }
        }
    }
    acc.into_iter().collect()
}

fn add_sparse(acc: &mut BTreeMap<usize, Q>, v: &Sparse) {
    for (k, x) in v {
        add_into(acc, *k, *x);
    }
}

/// `J(x, y, z) = [[x, y], z] + [[y, z], x] + [[z, x], y] = 0` on basis triples
/// (exhaustive) or on random rational combinations (sampled). Triples whose
/// intermediate or final degrees leave the window are counted as unchecked.
pub fn jacobi_check(l: &GradedLieWindow, mode: JacobiMode) -> JacobiReport {
    let t = l.table();
    let n = l.dim();
    let deg: Vec<Q> = l.basis.iter().map(|b| b.degree).collect();
    let fits = |i: usize, j: usize, k: usize| {
        [
            deg[i] + deg[j],
            deg[j] + deg[k],
            deg[k] + deg[i],
            deg[i] + deg[j] + deg[k],
        ]
        .iter()
        .all(|s| l.in_window(s))
    };
    match mode {
        JacobiMode::Exhaustive => {
            let rows: Vec<(Vec<String>, u64, u64)> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let (mut bad, mut ok, mut skip) = (Vec::new(), 0u64, 0u64);
                    for j in i + 1..n {
                        for k in j + 1..n {
                            if !fits(i, j, k) {
                                skip += 1;
                                continue;
                            }
                            ok += 1;
                            let mut acc = BTreeMap::new();
                            nested(&t, &t[i][j], k, &mut acc);
                            nested(&t, &t[j][k], i, &mut acc);
                            nested(&t, &t[k][i], j, &mut acc);
                            if !acc.is_empty() {
                                bad.push(format!(
                                    "{}, {}, {}",
                                    l.basis[i].label, l.basis[j].label, l.basis[k].label
                                ));
                            }
                        }
                    }
                    (bad, ok, skip)
                })
                .collect();
            let mut witnesses = Vec::new();
            let (mut checked, mut unchecked) = (0, 0);
            for (b, ok, skip) in rows {
                witnesses.extend(b);
                checked += ok;
                unchecked += skip;
            }
            JacobiReport {
                check: Check::new("jacobi", witnesses).with_unchecked(unchecked),
                triples_checked: checked,
                triples_unchecked: unchecked,
            }
        }
        JacobiMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut by_degree: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
            for (i, g) in deg.iter().enumerate() {
                by_degree.entry(*g).or_default().push(i);
            }
            let degrees: Vec<Q> = by_degree.keys().copied().collect();
            let mut witnesses = Vec::new();
            let (mut checked, mut unchecked) = (0u64, 0u64);
            let draw = |rng: &mut ChaCha8Rng, g: &Q| -> Sparse {
                let pool = &by_degree[g];
                let mut acc = BTreeMap::new();
                for _ in 0..3 {
                    let c = loop {
                        let v = rng.gen_range(-3i128..=3);
                        if v != 0 {
                            break v;
                        }
                    };
                    add_into(
                        &mut acc,
                        pool[rng.gen_range(0..pool.len())],
                        Q::new(c, rng.gen_range(1..=3)),
                    );
                }
                acc.into_iter().collect()
            };
            for s in 0..count {
                let (gx, gy, gz) = (
                    degrees[rng.gen_range(0..degrees.len())],
                    degrees[rng.gen_range(0..degrees.len())],
                    degrees[rng.gen_range(0..degrees.len())],
                );
                if ![gx + gy, gy + gz, gz + gx, gx + gy + gz]
                    .iter()
                    .all(|s| l.in_window(s))
                {
                    unchecked += 1;
                    continue;
                }
                let (x, y, z) = (
                    draw(&mut rng, &gx),
                    draw(&mut rng, &gy),
                    draw(&mut rng, &gz),
                );
                checked += 1;
                let mut acc = BTreeMap::new();
                add_sparse(&mut acc, &bracket_vec(&t, &bracket_vec(&t, &x, &y), &z));
                add_sparse(&mut acc, &bracket_vec(&t, &bracket_vec(&t, &y, &z), &x));
                add_sparse(&mut acc, &bracket_vec(&t, &bracket_vec(&t, &z, &x), &y));
                if !acc.is_empty() {
                    witnesses.push(format!(
                        "sample {s} at degrees {}, {}, {}",
                        fmt_q(&gx),
                        fmt_q(&gy),
                        fmt_q(&gz)
                    ));
                }
            }
            JacobiReport {
                check: Check::new("jacobi", witnesses).with_unchecked(unchecked),
                triples_checked: checked,
                triples_unchecked: unchecked,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDecomposition {
    /// Sorted anisotropic roots `α + g·δ`.
    pub anisotropic: Vec<RootVector>,
    /// Sorted degrees `g ≠ 0` of the isotropic roots `g·δ`.
    pub isotropic: Vec<Q>,
}

/// Simultaneous eigenspaces of `ad H`; every basis element must be an
/// eigenvector with the eigenvalues its tag predicts.
pub fn root_decomposition(l: &GradedLieWindow) -> Result<RootDecomposition> {
    let (Some(c), Some(d)) = (l.central, l.derivation) else {
        return Err(Error::Construction(
            "root decomposition needs c and d".into(),
        ));
    };
    let dim = l.fiber.weight_dim;
    let mut aniso = BTreeSet::new();
    let mut iso = BTreeSet::new();
    for (k, b) in l.basis.iter().enumerate() {
        if k == c || k == d {
            continue;
        }
        let mu = b.weight.dense_eps(dim);
        for (h, role) in &l.cartan {
            let expect = match role {
                CartanRole::Fiber(cw) => cw.iter().zip(&mu).map(|(x, y)| *x * *y).sum(),
                CartanRole::Central => Q::zero(),
                CartanRole::Degree => b.degree,
            };
            let got = l.bracket(*h, k);
            let ok = match got.as_slice() {
                [] => expect.is_zero(),
                [(m, x)] => *m == k && *x == expect,
                _ => false,
            };
            if !ok {
                return Err(Error::NotHomogeneous(format!(
                    "{} under {}",
                    b.label, l.basis[*h].label
                )));
            }
        }
        if b.weight.is_zero() {
            if !b.degree.is_zero() {
                iso.insert(b.degree);
            }
        } else {
            aniso.insert(b.weight.with_nulls(BTreeMap::from([(1, b.degree)])));
        }
    }
    Ok(RootDecomposition {
        anisotropic: aniso.into_iter().collect(),
        isotropic: iso.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn z() -> QSubgroup {
        QSubgroup::integers()
    }

    fn full(label: LoopLabel, w: i128) -> GradedLieWindow {
        let l = build_loop_algebra(&label, &z(), &Cocycle::One, &q(w)).unwrap();
        let (l, rep) = central_extend(l).unwrap();
        assert!(rep.passed(), "{rep}");
        add_degree_derivation(l).unwrap()
    }

    #[test]
    fn sl2_window_sizes_and_triples() {
        let l = build_loop_algebra(&LoopLabel::A(2), &z(), &Cocycle::One, &q(2)).unwrap();
        assert_eq!(l.dim(), 15);
        let r = jacobi_check(&l, JacobiMode::Exhaustive);
        assert!(r.check.passed());
        assert_eq!(r.triples_checked + r.triples_unchecked, 455);
    }

    #[test]
    fn twisted_sector_dimensions() {
        let b = build_loop_algebra(&LoopLabel::BTwisted(1), &z(), &Cocycle::One, &q(2)).unwrap();
        let inv = b.inventory();
        let at = |g: i128| {
            inv.iter()
                .filter(|((d, _), _)| *d == q(g))
                .map(|(_, n)| n)
                .sum::<usize>()
        };
        assert_eq!((at(0), at(1), at(2), at(-1)), (3, 3, 3, 3));
        let g = build_loop_algebra(&LoopLabel::G2Twisted, &z(), &Cocycle::One, &q(3)).unwrap();
        let inv = g.inventory();
        let at = |d: i128| {
            inv.iter()
                .filter(|((x, _), _)| *x == q(d))
                .map(|(_, n)| n)
                .sum::<usize>()
        };
        assert_eq!((at(0), at(1), at(-1), at(3)), (14, 7, 7, 14));
    }

    #[test]
    fn quotient_condition() {
        let half = QSubgroup::PrimeInverted(2);
        let r = build_loop_algebra(&LoopLabel::BC(1), &half, &Cocycle::One, &q(1));
        assert!(matches!(
            r,
            Err(Error::Construction(_)) | Err(Error::Unenumerable(_))
        ));
        let r = build_loop_algebra(
            &LoopLabel::G2Twisted,
            &QSubgroup::cyclic(q(2)).unwrap(),
            &Cocycle::One,
            &q(4),
        );
        assert!(r.is_ok());
    }

    #[test]
    fn central_term_on_sl2() {
        let l = full(LoopLabel::A(2), 2);
        let c = l.central.unwrap();
        let e = l
            .fiber
            .vectors
            .iter()
            .position(|v| v.label.ends_with("E1,2"))
            .unwrap();
        let f = l
            .fiber
            .vectors
            .iter()
            .position(|v| v.label.ends_with("E2,1"))
            .unwrap();
        let (x1, y1) = (l.find(e, &q(1)).unwrap(), l.find(f, &q(-1)).unwrap());
        let br = l.bracket(x1, y1);
        assert!(br.contains(&(c, q(1))), "{br:?}");
        let (x0, y0) = (l.find(e, &q(0)).unwrap(), l.find(f, &q(0)).unwrap());
        assert!(l.bracket(x0, y0).iter().all(|(k, _)| *k != c));
        let y2 = l.find(f, &q(1)).unwrap();
        assert!(l.bracket(x1, y2).iter().all(|(k, _)| *k != c));
        let d = l.derivation.unwrap();
        let x2 = l.find(e, &q(2)).unwrap();
        assert_eq!(l.bracket(d, x2), vec![(x2, q(2))]);
        assert!(l.bracket(d, x0).is_empty());
        assert!(l.bracket(d, c).is_empty());
    }

    #[test]
    fn fault_injection_is_caught() {
        let mut l = full(LoopLabel::A(2), 1);
        assert!(jacobi_check(&l, JacobiMode::Exhaustive).check.passed());
        let (&(i, j), v) = l.brackets.iter().find(|(_, v)| !v.is_empty()).unwrap();
        let (k, x) = v[0];
        l.set_constant(i, j, k, x + q(1));
        let r = jacobi_check(&l, JacobiMode::Exhaustive);
        assert!(!r.check.passed());
        assert!(!r.check.witnesses.is_empty());
    }

    #[test]
    fn sampled_mode_is_reproducible() {
        let l = full(LoopLabel::BTwisted(1), 2);
        let m = JacobiMode::Sampled { count: 40, seed: 9 };
        let (a, b) = (jacobi_check(&l, m), jacobi_check(&l, m));
        assert_eq!(a, b);
        assert!(a.check.passed());
        assert!(a.triples_checked > 0);
    }

    #[test]
    fn roots_of_sl2_loop() {
        let l = full(LoopLabel::A(2), 2);
        let r = root_decomposition(&l).unwrap();
        assert_eq!(r.anisotropic.len(), 10);
        assert_eq!(r.isotropic, [q(-2), q(-1), q(1), q(2)]);
        assert!(cartan_check(&l).passed());
        assert!(grading_check(&l).passed());
        assert!(centrality(&l).passed());
    }

    #[test]
    fn nontrivial_cocycle_keeps_jacobi() {
        let tau = Cocycle::Power {
            lambda: q(2),
            unit: q(1),
        };
        let l = build_loop_algebra(&LoopLabel::A(2), &z(), &tau, &q(2)).unwrap();
        let (l, rep) = central_extend(l).unwrap();
        assert!(rep.passed(), "{rep}");
        let l = add_degree_derivation(l).unwrap();
        assert!(jacobi_check(&l, JacobiMode::Exhaustive).check.passed());
    }
}
