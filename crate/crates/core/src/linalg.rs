//! Small dense exact linear algebra over ℚ and ℤ: ranks, kernels,
//! coordinates in a span, and integer lattices in Hermite form.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Q;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j];
                    if !v.is_zero() {
                        m[i][j] -= f * v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` for an `r × n` matrix `A`.
pub fn nullspace(a: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::from_integer(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f];
            }
            v
        })
        .collect()
}

/// Some `x` with `Σ_j rows[i][j] x_j = rhs[i]` for every `i`, or `None`
/// if the system is inconsistent. Free variables are set to zero.
pub fn solve(rows: &[Vec<Q>], rhs: &[Q], n: usize) -> Option<Vec<Q>> {
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.resize(n, Q::zero());
            row.push(*b);
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][n];
    }
    Some(x)
}

/// Coordinates of vectors with respect to a fixed linearly independent
/// family, computed from one precomputed echelon form.
#[derive(Debug, Clone)]
pub struct SpanCoords {
    reduced: Vec<Vec<Q>>,
    transform: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl SpanCoords {
    /// `None` if the family is linearly dependent.
    pub fn new(basis: &[Vec<Q>]) -> Option<Self> {
        let k = basis.len();
        if k == 0 {
            return Some(Self {
                reduced: Vec::new(),
                transform: Vec::new(),
                pivots: Vec::new(),
            });
        }
        let n = basis[0].len();
        let mut aug: Vec<Vec<Q>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut row = b.clone();
                row.extend((0..k).map(|j| Q::from_integer((i == j) as i128)));
                row
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.iter().filter(|&&p| p < n).count() < k {
            return None;
        }
        let reduced = aug.iter().map(|r| r[..n].to_vec()).collect();
        let transform = aug.iter().map(|r| r[n..].to_vec()).collect();
        Some(Self {
            reduced,
            transform,
            pivots,
        })
    }

    /// `c` with `v = Σ c_i basis_i`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let k = self.reduced.len();
        let d: Vec<Q> = self.pivots.iter().take(k).map(|&p| v[p]).collect();
        for (j, vj) in v.iter().enumerate() {
            let recon: Q = (0..k).map(|i| d[i] * self.reduced[i][j]).sum();
            if recon != *vj {
                return None;
            }
        }
        Some(
            (0..k)
                .map(|j| (0..k).map(|i| d[i] * self.transform[i][j]).sum())
                .collect(),
        )
    }
}

/// A finitely generated subgroup of ℚⁿ, kept as integer rows in Hermite
/// normal form over a common denominator.
#[derive(Debug, Clone)]
pub struct IntLattice {
    denom: i128,
    dim: usize,
    rows: Vec<Vec<i128>>,
}

impl IntLattice {
    pub fn from_generators(dim: usize, gens: &[Vec<Q>]) -> Self {
        let denom = gens
            .iter()
            .flatten()
            .fold(1i128, |acc, x| acc.lcm(x.denom()));
        let mut lat = Self {
            denom,
            dim,
            rows: Vec::new(),
        };
        for g in gens {
            let row = lat.scale(g).expect("denominator divides common lcm");
            lat.insert(row);
        }
        lat
    }

    fn scale(&self, v: &[Q]) -> Option<Vec<i128>> {
        v.iter()
            .map(|x| {
                let y = *x * Q::from_integer(self.denom);
                y.is_integer().then(|| y.to_integer())
            })
            .collect()
    }

    fn lead(row: &[i128]) -> Option<usize> {
        row.iter().position(|x| *x != 0)
    }

    fn insert(&mut self, mut v: Vec<i128>) {
        loop {
            let Some(c) = Self::lead(&v) else { return };
            match self.rows.iter().position(|r| Self::lead(r) == Some(c)) {
                None => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows.push(v);
                    self.rows.sort_by_key(|r| Self::lead(r));
                    self.reduce_above();
                    return;
                }
                Some(i) => {
                    // Euclid on the leading column between v and row i.
                    let mut a = self.rows[i].clone();
                    let mut b = v;
                    while b[c] != 0 {
                        let qt = Integer::div_floor(&a[c], &b[c]);
                        for j in 0..self.dim {
                            a[j] -= qt * b[j];
                        }
                        std::mem::swap(&mut a, &mut b);
                    }
                    if a[c] < 0 {
                        a.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[i] = a;
                    v = b;
                }
            }
        }
    }

    fn reduce_above(&mut self) {
        for i in 0..self.rows.len() {
            let c = Self::lead(&self.rows[i]).unwrap();
            let p = self.rows[i][c];
            for k in 0..i {
                let qt = Integer::div_floor(&self.rows[k][c], &p);
                if qt != 0 {
                    for j in 0..self.dim {
                        let d = self.rows[i][j];
                        self.rows[k][j] -= qt * d;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let Some(mut w) = self.scale(v) else {
            return false;
        };
        for r in &self.rows {
            let c = Self::lead(r).unwrap();
            if w[c] % r[c] != 0 {
                return false;
            }
            let qt = w[c] / r[c];
            for j in 0..self.dim {
                w[j] -= qt * r[j];
            }
        }
        w.iter().all(|x| *x == 0)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Hermite basis rows as rationals.
    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| Q::new(*x, self.denom)).collect())
            .collect()
    }

    /// Generators of the sublattice of vectors whose first `k` coordinates vanish.
    pub fn tail_intersection(&self, k: usize) -> Vec<Vec<Q>> {
        self.basis()
            .into_iter()
            .filter(|r| r[..k].iter().all(|x| x.is_zero()))
            .collect()
    }
}

pub fn abs_max(xs: &[Q]) -> Q {
    xs.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn rank_and_kernel() {
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(&m), 2);
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot: Q = row.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn span_coordinates() {
        let b = vec![vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)]];
        let sc = SpanCoords::new(&b).unwrap();
        assert_eq!(sc.coords(&[q(1), q(0), q(-1)]), Some(vec![q(1), q(1)]));
        assert_eq!(sc.coords(&[q(1), q(0), q(0)]), None);
        assert!(SpanCoords::new(&[vec![q(1), q(1)], vec![q(2), q(2)]]).is_none());
    }

    #[test]
    fn lattice_membership_and_intersection() {
        let lat = IntLattice::from_generators(2, &[vec![q(1), q(1)], vec![q(1), qf(3, 2)]]);
        assert!(lat.contains(&[q(0), qf(1, 2)]));
        assert!(!lat.contains(&[q(0), qf(1, 4)]));
        assert_eq!(lat.rank(), 2);
        let tail = lat.tail_intersection(1);
        assert_eq!(tail, vec![vec![q(0), qf(1, 2)]]);
    }
}
