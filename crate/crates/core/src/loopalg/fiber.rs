use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::{
    bilinear, build_matrix_algebra, column, commutator, dvv_matrix, flatten, form_s, mul, scale,
    trace, HomMatrix, Mat, MatrixKind,
};
use super::octonion::{self, derivation_dxy, Octonion, BASIS_LABELS};
use crate::error::{Error, Result};
use crate::lears::{LearsSpec, Triple};
use crate::linalg::{solve, SpanCoords};
use crate::qgroup::{QSubgroup, ReflectionSpace};
use crate::rational::{fmt_q, Q};
use crate::rootsys::{Family, RootSystemDesc, RootVector};

/// Sparse vector: sorted `(index, nonzero coefficient)` pairs.
pub type Sparse = Vec<(usize, Q)>;

/// Loop algebra labels that have a realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LoopLabel {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    BTwisted(usize),
    CTwisted(usize),
    BC(usize),
    G2Twisted,
}

impl LoopLabel {
    /// `label` is one of `A`, `B`, `C`, `D` (optionally `(1)`), `G2`,
    /// `G2(1)`, `B(2)`, `C(2)`, `BC`, `G2(3)`; `index` is the index size.
    pub fn parse(label: &str, index: usize) -> Result<Self> {
        let l = label.trim();
        let l = l.strip_suffix("(1)").unwrap_or(l);
        let out = match l {
            "A" => LoopLabel::A(index),
            "B" => LoopLabel::B(index),
            "C" => LoopLabel::C(index),
            "D" => LoopLabel::D(index),
            "G2" => LoopLabel::G2,
            "B(2)" => LoopLabel::BTwisted(index),
            "C(2)" => LoopLabel::CTwisted(index),
            "BC" => LoopLabel::BC(index),
            "G2(3)" => LoopLabel::G2Twisted,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "no realization for label {label}"
                )))
            }
        };
        out.desc()?;
        Ok(out)
    }

    /// `|G/G′|` of the twist.
    pub fn period(&self) -> u64 {
        match self {
            LoopLabel::BTwisted(_) | LoopLabel::CTwisted(_) | LoopLabel::BC(_) => 2,
            LoopLabel::G2Twisted => 3,
            _ => 1,
        }
    }

    pub fn desc(&self) -> Result<RootSystemDesc> {
        let n = |i: &usize| *i as u32;
        match self {
            LoopLabel::A(i) => RootSystemDesc::new(Family::A, n(i)),
            LoopLabel::B(i) | LoopLabel::BTwisted(i) => RootSystemDesc::new(Family::B, n(i)),
            LoopLabel::C(i) | LoopLabel::CTwisted(i) => RootSystemDesc::new(Family::C, n(i)),
            LoopLabel::D(i) => RootSystemDesc::new(Family::D, n(i)),
            LoopLabel::BC(i) => RootSystemDesc::new(Family::BC, n(i)),
            LoopLabel::G2 | LoopLabel::G2Twisted => Ok(RootSystemDesc::exceptional(Family::G2)),
        }
    }

    /// The spec whose window the anisotropic roots should fill. For `BC`
    /// this is the triple computed from the realization (see the tests).
    pub fn predicted_spec(&self, group: &QSubgroup) -> Result<LearsSpec> {
        let desc = self.desc()?;
        let whole = ReflectionSpace::whole(group.clone());
        let t = match self {
            LoopLabel::BTwisted(_) | LoopLabel::CTwisted(_) => Triple::new(
                whole,
                desc.has_long()
                    .then(|| ReflectionSpace::coset(group.clone(), 2, 0)),
                None,
            ),
            LoopLabel::G2Twisted => Triple::new(
                whole,
                Some(ReflectionSpace::coset(group.clone(), 3, 0)),
                None,
            ),
            LoopLabel::BC(_) => Triple::new(
                whole.clone(),
                desc.has_long().then(|| whole.clone()),
                Some(ReflectionSpace::coset(group.clone(), 2, 1)),
            ),
            _ => Triple::whole(&desc, group),
        };
        LearsSpec::new(desc, group.clone(), t)
    }
}

impl fmt::Display for LoopLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopLabel::A(i) => write!(f, "A{i}(1)"),
            LoopLabel::B(i) => write!(f, "B{i}(1)"),
            LoopLabel::C(i) => write!(f, "C{i}(1)"),
            LoopLabel::D(i) => write!(f, "D{i}(1)"),
            LoopLabel::G2 => write!(f, "G2(1)"),
            LoopLabel::BTwisted(i) => write!(f, "B{i}(2)"),
            LoopLabel::CTwisted(i) => write!(f, "C{i}(2)"),
            LoopLabel::BC(i) => write!(f, "BC{i}"),
            LoopLabel::G2Twisted => write!(f, "G2(3)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberVector {
    pub label: String,
    pub sector: u64,
    pub weight: RootVector,
}

/// A `ℤ_p`-graded Lie algebra `F = ⊕_r F_r`; the loop algebra puts `F_r`
/// in the degrees of the coset `G′ + r·g₁`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub period: u64,
    pub vectors: Vec<FiberVector>,
    /// `[f_i, f_j]` for `i < j`, nonzero entries only.
    pub brackets: BTreeMap<(usize, usize), Sparse>,
    /// Invariant form, `i ≤ j`, nonzero entries only.
    pub form: BTreeMap<(usize, usize), Q>,
    /// Zero-weight vectors of sector 0 with the coweight `c` such that
    /// `ad h` acts on weight `μ` by `c·μ`.
    pub cartan: Vec<(usize, Vec<Q>)>,
    /// Factor applied to the base form on `F_r × F_{−r}`, indexed by `r`.
    pub form_scales: Vec<Q>,
    pub weight_dim: u32,
}

impl Fiber {
    pub fn dim(&self) -> usize {
        self.vectors.len()
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

    pub fn form_value(&self, i: usize, j: usize) -> Q {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.form.get(&key).copied().unwrap_or_else(Q::zero)
    }

    pub fn sector_dim(&self, r: u64) -> usize {
        self.vectors.iter().filter(|v| v.sector == r).count()
    }

    fn sparse_form(&self, i: usize, v: &Sparse) -> Q {
        v.iter().map(|(k, c)| *c * self.form_value(i, *k)).sum()
    }

    /// `(x, [y, z]) = ([x, y], z)` on all basis triples.
    pub fn invariance_witnesses(&self) -> Vec<String> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let xy = self.bracket(i, j);
                for k in 0..n {
                    let lhs = self.sparse_form(i, &self.bracket(j, k));
                    let rhs: Q = xy.iter().map(|(m, c)| *c * self.form_value(*m, k)).sum();
                    if lhs != rhs {
                        bad.push(format!(
                            "{}, {}, {}: {} vs {}",
                            self.vectors[i].label,
                            self.vectors[j].label,
                            self.vectors[k].label,
                            fmt_q(&lhs),
                            fmt_q(&rhs)
                        ));
                    }
                }
            }
        }
        bad
    }

    /// Jacobi on all fiber basis triples.
    pub fn jacobi_witnesses(&self) -> Vec<String> {
        let n = self.dim();
        let mut bad = Vec::new();
        let nested = |a: usize, b: usize, c: usize, acc: &mut BTreeMap<usize, Q>| {
            for (k, x) in self.bracket(a, b) {
                for (m, y) in self.bracket(k, c) {
                    *acc.entry(m).or_insert_with(Q::zero) += x * y;
                }
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = BTreeMap::new();
                    nested(i, j, k, &mut acc);
                    nested(j, k, i, &mut acc);
                    nested(k, i, j, &mut acc);
                    if acc.values().any(|v| !v.is_zero()) {
                        bad.push(format!(
                            "{}, {}, {}",
                            self.vectors[i].label, self.vectors[j].label, self.vectors[k].label
                        ));
                    }
                }
            }
        }
        bad
    }
}

type Rule = dyn Fn(u64, &Mat, u64, &Mat) -> Mat;
type FormRule = dyn Fn(u64, &Mat, u64, &Mat) -> Q;

struct Draft {
    period: u64,
    sectors: Vec<Vec<(String, HomMatrix)>>,
    weight_dim: u32,
    rule: Box<Rule>,
    base_form: Box<FormRule>,
}

fn labelled(prefix: &str, kind: MatrixKind, n: usize) -> Result<Vec<(String, HomMatrix)>> {
    Ok(build_matrix_algebra(kind, n)?
        .basis
        .into_iter()
        .map(|b| (format!("{prefix}:{}", b.label()), b))
        .collect())
}

fn octonion_sector(prefix: &str) -> Vec<(String, HomMatrix)> {
    (1..8)
        .map(|i| {
            (
                format!("{prefix}:{}", BASIS_LABELS[i]),
                HomMatrix {
                    matrix: column(&Octonion::basis(i).coords),
                    weight: octonion::basis_weight(i),
                },
            )
        })
        .collect()
}

fn col_oct(m: &Mat) -> Octonion {
    Octonion::from_coords(&m.iter().map(|r| r[0]).collect::<Vec<_>>())
}

fn trace_form(_: u64, a: &Mat, _: u64, b: &Mat) -> Q {
    trace(&mul(a, b))
}

fn draft_for(label: &LoopLabel) -> Result<Draft> {
    let commutator_rule: Box<Rule> = Box::new(|_, a, _, b| commutator(a, b));
    Ok(match *label {
        LoopLabel::A(n) | LoopLabel::B(n) | LoopLabel::C(n) | LoopLabel::D(n) => {
            let kind = match label {
                LoopLabel::A(_) => MatrixKind::Sl,
                LoopLabel::B(_) => MatrixKind::OOdd,
                LoopLabel::C(_) => MatrixKind::Sp,
                _ => MatrixKind::OEven,
            };
            Draft {
                period: 1,
                sectors: vec![labelled(&kind.to_string(), kind, n)?],
                weight_dim: n as u32,
                rule: commutator_rule,
                base_form: Box::new(trace_form),
            }
        }
        LoopLabel::BTwisted(n) => {
            let s = form_s(n);
            let s2 = s.clone();
            Draft {
                period: 2,
                sectors: vec![
                    labelled("o", MatrixKind::OOdd, n)?,
                    labelled("V", MatrixKind::NaturalV, n)?,
                ],
                weight_dim: n as u32,
                rule: Box::new(move |ra, a, rb, b| match (ra, rb) {
                    (0, 0) => commutator(a, b),
                    (0, _) => mul(a, b),
                    (_, 0) => scale(&mul(b, a), Q::from_integer(-1)),
                    _ => {
                        let (u, v) = (flatten(a), flatten(b));
                        dvv_matrix(&u, &v, &s)
                    }
                }),
                base_form: Box::new(move |ra, a, _, b| {
                    if ra == 0 {
                        trace(&mul(a, b))
                    } else {
                        bilinear(&s2, &flatten(a), &flatten(b))
                    }
                }),
            }
        }
        LoopLabel::CTwisted(n) => Draft {
            period: 2,
            sectors: vec![
                labelled("sp", MatrixKind::Sp, n)?,
                labelled("s-", MatrixKind::SMinusPart, n)?,
            ],
            weight_dim: n as u32,
            rule: commutator_rule,
            base_form: Box::new(trace_form),
        },
        LoopLabel::BC(n) => Draft {
            period: 2,
            sectors: vec![
                labelled("o", MatrixKind::OOdd, n)?,
                labelled("s", MatrixKind::SPart, n)?,
            ],
            weight_dim: n as u32,
            rule: commutator_rule,
            base_form: Box::new(trace_form),
        },
        LoopLabel::G2 => Draft {
            period: 1,
            sectors: vec![octonion::derivation_basis()],
            weight_dim: 3,
            rule: commutator_rule,
            base_form: Box::new(trace_form),
        },
        LoopLabel::G2Twisted => Draft {
            period: 3,
            sectors: vec![
                octonion::derivation_basis(),
                octonion_sector("O1"),
                octonion_sector("O2"),
            ],
            weight_dim: 3,
            rule: Box::new(|ra, a, rb, b| match (ra, rb) {
                (0, 0) => commutator(a, b),
                (0, _) => mul(a, b),
                (_, 0) => scale(&mul(b, a), Q::from_integer(-1)),
                (r, s) if r == s => column(&col_oct(a).star(&col_oct(b)).coords),
                _ => derivation_dxy(&col_oct(a), &col_oct(b)),
            }),
            base_form: Box::new(|ra, a, _, b| {
                if ra == 0 {
                    trace(&mul(a, b))
                } else {
                    col_oct(a).trace_form(&col_oct(b))
                }
            }),
        },
    })
}

fn nonzero(v: &[Q]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

fn finish(d: Draft) -> Result<Fiber> {
    let p = d.period;
    let mut vectors = Vec::new();
    let mut mats = Vec::new();
    let mut index: BTreeMap<(u64, usize), usize> = BTreeMap::new();
    for (r, sec) in d.sectors.iter().enumerate() {
        for (k, (label, h)) in sec.iter().enumerate() {
            index.insert((r as u64, k), vectors.len());
            vectors.push(FiberVector {
                label: label.clone(),
                sector: r as u64,
                weight: h.weight.clone(),
            });
            mats.push(h.matrix.clone());
        }
    }
    let coords: Vec<SpanCoords> = d
        .sectors
        .iter()
        .map(|sec| {
            let rows: Vec<Vec<Q>> = sec.iter().map(|(_, h)| flatten(&h.matrix)).collect();
            SpanCoords::new(&rows)
                .ok_or_else(|| Error::Construction("dependent fiber basis".into()))
        })
        .collect::<Result<_>>()?;
    let n = vectors.len();
    let sector = |i: usize| vectors[i].sector;
    let mut brackets = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = (d.rule)(sector(i), &mats[i], sector(j), &mats[j]);
            let flat = flatten(&m);
            if !nonzero(&flat) {
                continue;
            }
            let target = (sector(i) + sector(j)) % p;
            let c = coords[target as usize].coords(&flat).ok_or_else(|| {
                Error::Construction(format!(
                    "[{}, {}] leaves sector {target}",
                    vectors[i].label, vectors[j].label
                ))
            })?;
            let sparse: Sparse = c
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (index[&(target, k)], x))
                .collect();
            brackets.insert((i, j), sparse);
        }
    }
    let mut base = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            if (sector(i) + sector(j)) % p == 0 {
                let v = (d.base_form)(sector(i), &mats[i], sector(j), &mats[j]);
                if !v.is_zero() {
                    base.insert((i, j), v);
                }
            }
        }
    }
    let mut fiber = Fiber {
        period: p,
        vectors,
        brackets,
        form: base,
        cartan: Vec::new(),
        form_scales: vec![Q::from_integer(1); p as usize],
        weight_dim: d.weight_dim,
    };
    fit_form_scales(&mut fiber)?;
    let bad = fiber.invariance_witnesses();
    if let Some(w) = bad.first() {
        return Err(Error::FormNotInvariant(w.clone()));
    }
    fiber.cartan = cartan_coweights(&fiber)?;
    Ok(fiber)
}

/// Rescales the base form on `F_r × F_{−r}` (`r ≠ 0`) so that it becomes
/// invariant, reading the factor off the first triple that sees it.
fn fit_form_scales(f: &mut Fiber) -> Result<()> {
    let p = f.period;
    let n = f.dim();
    for r in 1..p {
        let back = (p - r) % p;
        if back < r {
            f.form_scales[r as usize] = f.form_scales[back as usize];
            continue;
        }
        let zero_sec: Vec<usize> = (0..n).filter(|&i| f.vectors[i].sector == 0).collect();
        let rs: Vec<usize> = (0..n).filter(|&i| f.vectors[i].sector == r).collect();
        let bs: Vec<usize> = (0..n).filter(|&i| f.vectors[i].sector == back).collect();
        let mut found = None;
        'search: for &a in &zero_sec {
            for &b in &rs {
                let ab = f.bracket(a, b);
                for &c in &bs {
                    let rhs: Q = ab.iter().map(|(m, x)| *x * f.form_value(*m, c)).sum();
                    if rhs.is_zero() {
                        continue;
                    }
                    let lhs: Q = f
                        .bracket(b, c)
                        .iter()
                        .map(|(m, x)| *x * f.form_value(a, *m))
                        .sum();
                    found = Some(lhs / rhs);
                    break 'search;
                }
            }
        }
        let k = found.ok_or_else(|| {
            Error::Construction(format!("no triple fixes the form on sector {r}"))
        })?;
        if k.is_zero() {
            return Err(Error::FormNotInvariant(format!(
                "sector {r} pairs trivially with sector 0"
            )));
        }
        f.form_scales[r as usize] = k;
        if back != r {
            f.form_scales[back as usize] = k;
        }
    }
    let scales = f.form_scales.clone();
    for ((i, _), v) in f.form.iter_mut() {
        *v *= scales[f.vectors[*i].sector as usize];
    }
    Ok(())
}

fn cartan_coweights(f: &Fiber) -> Result<Vec<(usize, Vec<Q>)>> {
    let n = f.dim();
    let dim = f.weight_dim as usize;
    let mut out = Vec::new();
    for h in (0..n).filter(|&i| f.vectors[i].sector == 0 && f.vectors[i].weight.is_zero()) {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in 0..n {
            let b = f.bracket(h, k);
            let lambda = match b.as_slice() {
                [] => Q::zero(),
                [(m, x)] if *m == k => *x,
                _ => return Err(Error::NotHomogeneous(f.vectors[k].label.clone())),
            };
            rows.push(f.vectors[k].weight.dense_eps(dim as u32));
            rhs.push(lambda);
        }
        let c = solve(&rows, &rhs, dim)
            .ok_or_else(|| Error::NotHomogeneous(f.vectors[h].label.clone()))?;
        out.push((h, c));
    }
    Ok(out)
}

/// The fiber of the given label, with a fitted invariant form.
pub fn build_fiber(label: &LoopLabel) -> Result<Fiber> {
    finish(draft_for(label)?)
}
