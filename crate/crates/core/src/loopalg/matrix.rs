use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::rational::{fmt_q, Q};
use crate::rootsys::RootVector;

/// Dense square (or column) matrix over ℚ, row-major.
pub type Mat = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn unit(n: usize, a: usize, b: usize) -> Mat {
    let mut m = zeros(n, n);
    m[a][b] = Q::from_integer(1);
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for l in 0..k {
            let x = a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[l][j].is_zero() {
                    out[i][j] += x * b[l][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let c = a.first().map_or(0, Vec::len);
    (0..c)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn lin(a: &Mat, x: Q, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(p, q)| *p + x * *q).collect())
        .collect()
}

pub fn scale(a: &Mat, x: Q) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|v| *v * x).collect())
        .collect()
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    lin(&mul(a, b), Q::from_integer(-1), &mul(b, a))
}

pub fn trace(a: &Mat) -> Q {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn flatten(a: &Mat) -> Vec<Q> {
    a.iter().flatten().copied().collect()
}

pub fn apply(a: &Mat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| *x * *y).sum())
        .collect()
}

pub fn column(v: &[Q]) -> Mat {
    v.iter().map(|x| vec![*x]).collect()
}

/// `(u, v) = uᵗ m v`.
pub fn bilinear(m: &Mat, u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(apply(m, v)).map(|(a, b)| *a * b).sum()
}

fn block(n: usize, odd: bool, sign: i128) -> Mat {
    let size = 2 * n + odd as usize;
    let mut m = zeros(size, size);
    for i in 0..n {
        m[i][n + i] = Q::from_integer(1);
        m[n + i][i] = Q::from_integer(sign);
    }
    if odd {
        m[2 * n][2 * n] = Q::from_integer(1);
    }
    m
}

/// The symmetric matrix `s` of size `2n+1`.
pub fn form_s(n: usize) -> Mat {
    block(n, true, 1)
}

/// The skew matrix `s₋` of size `2n`.
pub fn form_s_minus(n: usize) -> Mat {
    block(n, false, -1)
}

/// The symmetric matrix `s₊` of size `2n`.
pub fn form_s_plus(n: usize) -> Mat {
    block(n, false, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Sl,
    OOdd,
    Sp,
    OEven,
    SPart,
    SMinusPart,
    NaturalV,
}

impl MatrixKind {
    /// Matrix size for index size `n`.
    pub fn size(self, n: usize) -> usize {
        match self {
            MatrixKind::Sl => n,
            MatrixKind::OOdd | MatrixKind::SPart | MatrixKind::NaturalV => 2 * n + 1,
            MatrixKind::Sp | MatrixKind::OEven | MatrixKind::SMinusPart => 2 * n,
        }
    }

    fn min_index(self) -> usize {
        match self {
            MatrixKind::Sp | MatrixKind::OEven => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Sl => "sl",
            MatrixKind::OOdd => "o_odd",
            MatrixKind::Sp => "sp",
            MatrixKind::OEven => "o_even",
            MatrixKind::SPart => "s_part",
            MatrixKind::SMinusPart => "s_minus_part",
            MatrixKind::NaturalV => "natural_V",
        })
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sl" => MatrixKind::Sl,
            "o_odd" => MatrixKind::OOdd,
            "sp" => MatrixKind::Sp,
            "o_even" => MatrixKind::OEven,
            "s_part" => MatrixKind::SPart,
            "s_minus_part" => MatrixKind::SMinusPart,
            "natural_V" => MatrixKind::NaturalV,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown matrix algebra {s}"
                )))
            }
        })
    }
}

/// A basis element homogeneous for the diagonal Cartan subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomMatrix {
    pub matrix: Mat,
    pub weight: RootVector,
}

impl HomMatrix {
    /// `E(a,b)`-style label, 1-based.
    pub fn label(&self) -> String {
        let mut terms = Vec::new();
        for (a, row) in self.matrix.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let unit = if row.len() == 1 {
                    format!("e{}", a + 1)
                } else {
                    format!("E{},{}", a + 1, b + 1)
                };
                terms.push(match fmt_q(x).as_str() {
                    "1" => unit,
                    "-1" => format!("-{unit}"),
                    c => format!("{c}{unit}"),
                });
            }
        }
        terms.join("+").replace("+-", "-")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixAlgebra {
    pub kind: MatrixKind,
    pub index_size: usize,
    pub size: usize,
    /// Matrices, or `size × 1` columns for the natural module.
    pub basis: Vec<HomMatrix>,
}

impl MatrixAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// ε-weights of the standard basis vectors: `ε_a` for `sl`, and
/// `(ε_1..ε_n, −ε_1..−ε_n, 0)` for the block forms.
pub fn row_weights(kind: MatrixKind, n: usize) -> Vec<RootVector> {
    let e = |i: usize, c: i128| RootVector::from_eps(&[(i as u32, Q::from_integer(c))]);
    match kind {
        MatrixKind::Sl => (1..=n).map(|i| e(i, 1)).collect(),
        _ => {
            let mut w: Vec<RootVector> = (1..=n)
                .map(|i| e(i, 1))
                .chain((1..=n).map(|i| e(i, -1)))
                .collect();
            if kind.size(n) == 2 * n + 1 {
                w.push(RootVector::zero());
            }
            w
        }
    }
}

fn constraint(kind: MatrixKind, n: usize, x: &Mat) -> Vec<Q> {
    let minus = Q::from_integer(-1);
    let twisted = |s: &Mat, sign: Q| lin(&mul(s, x), sign, &mul(&transpose(x), s));
    let mut out = match kind {
        MatrixKind::Sl => Vec::new(),
        MatrixKind::OOdd => flatten(&twisted(&form_s(n), Q::from_integer(1))),
        MatrixKind::Sp => flatten(&twisted(&form_s_minus(n), Q::from_integer(1))),
        MatrixKind::OEven => flatten(&twisted(&form_s_plus(n), Q::from_integer(1))),
        MatrixKind::SPart => flatten(&twisted(&form_s(n), minus)),
        MatrixKind::SMinusPart => flatten(&twisted(&form_s_minus(n), minus)),
        MatrixKind::NaturalV => unreachable!("the module has no constraint"),
    };
    if matches!(
        kind,
        MatrixKind::Sl | MatrixKind::SPart | MatrixKind::SMinusPart
    ) {
        out.push(trace(x));
    }
    out
}

/// Weight-homogeneous basis of the requested algebra (or module), grouped
/// by weight in increasing order.
pub fn build_matrix_algebra(kind: MatrixKind, index_size: usize) -> Result<MatrixAlgebra> {
    if index_size < kind.min_index() {
        return Err(Error::InvalidArgument(format!(
            "{kind} needs index size at least {}, got {index_size}",
            kind.min_index()
        )));
    }
    let n = index_size;
    let size = kind.size(n);
    let w = row_weights(kind, n);
    if kind == MatrixKind::NaturalV {
        let basis = (0..size)
            .map(|a| {
                let mut v = vec![Q::zero(); size];
                v[a] = Q::from_integer(1);
                HomMatrix {
                    matrix: column(&v),
                    weight: w[a].clone(),
                }
            })
            .collect();
        return Ok(MatrixAlgebra {
            kind,
            index_size,
            size,
            basis,
        });
    }
    let mut groups: BTreeMap<RootVector, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..size {
        for b in 0..size {
            groups.entry(w[a].sub(&w[b])).or_default().push((a, b));
        }
    }
    let mut basis = Vec::new();
    for (weight, units) in groups {
        let images: Vec<Vec<Q>> = units
            .iter()
            .map(|&(a, b)| constraint(kind, n, &unit(size, a, b)))
            .collect();
        let rows: Vec<Vec<Q>> = (0..images[0].len())
            .map(|r| images.iter().map(|col| col[r]).collect())
            .collect();
        for sol in nullspace(&rows, units.len()) {
            let mut m = zeros(size, size);
            for (c, &(a, b)) in sol.iter().zip(&units) {
                m[a][b] = *c;
            }
            basis.push(HomMatrix {
                matrix: m,
                weight: weight.clone(),
            });
        }
    }
    Ok(MatrixAlgebra {
        kind,
        index_size,
        size,
        basis,
    })
}

/// `D_{v,v'}(v'') = (v', v'')v − (v, v'')v'` for the form `m`.
pub fn dvv(v: &[Q], v1: &[Q], v2: &[Q], m: &Mat) -> Result<Vec<Q>> {
    let n = m.len();
    if [v.len(), v1.len(), v2.len()].iter().any(|&l| l != n) {
        return Err(Error::Dimension(format!("vectors for a form of size {n}")));
    }
    let (a, b) = (bilinear(m, v1, v2), bilinear(m, v, v2));
    Ok(v.iter().zip(v1).map(|(x, y)| a * *x - b * *y).collect())
}

/// `D_{v,v'}` as the matrix `v v'ᵗ m − v' vᵗ m`.
pub fn dvv_matrix(v: &[Q], v1: &[Q], m: &Mat) -> Mat {
    let outer = |p: &[Q], q: &[Q]| -> Mat { mul(&column(p), &transpose(&column(q))) };
    lin(
        &mul(&outer(v, v1), m),
        Q::from_integer(-1),
        &mul(&outer(v1, v), m),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::rational::q;

    fn dim(kind: MatrixKind, n: usize) -> usize {
        build_matrix_algebra(kind, n).unwrap().dim()
    }

    #[test]
    fn dimensions_match_the_classical_formulas() {
        for n in 1..=4 {
            assert_eq!(dim(MatrixKind::Sl, n), n * n - 1);
            assert_eq!(dim(MatrixKind::OOdd, n), n * (2 * n + 1));
            assert_eq!(dim(MatrixKind::SPart, n), (2 * n + 1) * (n + 1) - 1);
            assert_eq!(dim(MatrixKind::SMinusPart, n), 2 * n * n - n - 1);
            assert_eq!(dim(MatrixKind::NaturalV, n), 2 * n + 1);
        }
        for n in 2..=4 {
            assert_eq!(dim(MatrixKind::Sp, n), n * (2 * n + 1));
            assert_eq!(dim(MatrixKind::OEven, n), n * (2 * n - 1));
        }
        assert!(build_matrix_algebra(MatrixKind::Sp, 1).is_err());
    }

    #[test]
    fn sl2_weights() {
        let a = build_matrix_algebra(MatrixKind::Sl, 2).unwrap();
        let ws: Vec<String> = a.basis.iter().map(|b| b.weight.to_string()).collect();
        assert_eq!(a.dim(), 3);
        assert!(ws.contains(&"0".to_string()));
        assert!(a
            .basis
            .iter()
            .any(|b| b.weight == RootVector::from_eps(&[(1, q(1)), (2, q(-1))])));
        assert!(a
            .basis
            .iter()
            .any(|b| b.weight == RootVector::from_eps(&[(1, q(-1)), (2, q(1))])));
    }

    #[test]
    fn complements_split_sl() {
        for n in 1..=3 {
            let full = dim(MatrixKind::Sl, 2 * n + 1);
            assert_eq!(dim(MatrixKind::OOdd, n) + dim(MatrixKind::SPart, n), full);
        }
        for n in 2..=3 {
            assert_eq!(
                dim(MatrixKind::Sp, n) + dim(MatrixKind::SMinusPart, n),
                dim(MatrixKind::Sl, 2 * n)
            );
        }
    }

    #[test]
    fn dvv_values_and_span() {
        let s = form_s(1);
        let e = |i: usize| -> Vec<Q> { (0..3).map(|j| q((i == j) as i128)).collect() };
        let z = vec![q(0); 3];
        assert_eq!(dvv(&e(0), &e(0), &e(2), &s).unwrap(), z);
        assert_eq!(dvv(&e(0), &e(2), &e(2), &s).unwrap(), e(0));
        for n in 1..=3 {
            let s = form_s(n);
            let size = 2 * n + 1;
            let basis: Vec<Vec<Q>> = (0..size)
                .map(|i| (0..size).map(|j| q((i == j) as i128)).collect())
                .collect();
            let mut rows = Vec::new();
            for a in 0..size {
                for b in a + 1..size {
                    let d = dvv_matrix(&basis[a], &basis[b], &s);
                    let skew = lin(&mul(&s, &d), q(1), &mul(&transpose(&d), &s));
                    assert!(flatten(&skew).iter().all(Zero::is_zero));
                    rows.push(flatten(&d));
                }
            }
            assert_eq!(rank(&rows), n * (2 * n + 1));
        }
        assert!(dvv(&e(0), &e(1), &[q(1)], &s).is_err());
    }
}
